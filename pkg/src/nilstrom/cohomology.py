"""Invariant Dolbeault and Bott-Chern cohomology dimensions.

Computed on the finite-dimensional complex of invariant forms, with
``d = del + delbar`` split by bidegree.  Ranks are exact over Q(i) for exact
structures.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import linalg
from .exterior import COMPLEX, Form, bidegree_monomials, component
from .scalar import CQ
from .structures import Structure


class Flavor(str, enum.Enum):
    DOLBEAULT = "Dolbeault"
    BOTT_CHERN = "BottChern"


@dataclass(frozen=True)
class CohomologyTable:
    dims: dict
    flavor: Flavor

    def __getitem__(self, pq) -> int:
        return self.dims[pq]

    def rows(self):
        return [[self.dims[(p, q)] for q in range(4)] for p in range(4)]


def _one(structure: Structure):
    return CQ(1) if structure.is_exact() else 1 + 0j


def _operator(structure: Structure, p: int, q: int, dp: int, dq: int, twice: bool = False):
    """Matrix of ``del`` (dp=1), ``delbar`` (dq=1) or ``del delbar`` from bidegree (p, q)."""
    src = bidegree_monomials(p, q)
    if twice:
        tp, tq = p + 1, q + 1
    else:
        tp, tq = p + dp, q + dq
    if min(p, q) < 0 or max(tp, tq) > 3:
        return None, src, []
    dst = bidegree_monomials(tp, tq)
    one = _one(structure)
    cols = []
    for idx in src:
        a = Form(p + q, {idx: one}, COMPLEX)
        if twice:
            a = component(structure.dee(a), p, q + 1)
            if a.terms:
                a = component(structure.dee(a), p + 1, q + 1)
            else:
                a = Form.zero(p + q + 2)
        else:
            a = component(structure.dee(a), tp, tq)
        cols.append([a.terms.get(k, one * 0) for k in dst])
    matrix = [[cols[j][i] for j in range(len(src))] for i in range(len(dst))]
    return matrix, src, dst


def _rank(matrix) -> int:
    if not matrix or not matrix[0]:
        return 0
    return linalg.rank(matrix)


def _kernel_dim(structure, p, q, ops) -> int:
    n = len(bidegree_monomials(p, q))
    stacked = []
    for dp, dq in ops:
        m, _, _ = _operator(structure, p, q, dp, dq)
        if m:
            stacked.extend(m)
    return n - _rank(stacked)


def bott_chern_dims(structure: Structure) -> CohomologyTable:
    """``h^{p,q}_BC = dim(ker del ^ ker delbar) - rank(del delbar)`` on invariant forms."""
    dims = {}
    for p in range(4):
        for q in range(4):
            closed = _kernel_dim(structure, p, q, [(1, 0), (0, 1)])
            image = 0
            if p >= 1 and q >= 1:
                m, _, _ = _operator(structure, p - 1, q - 1, 0, 0, twice=True)
                image = _rank(m)
            dims[(p, q)] = closed - image
    return CohomologyTable(dims, Flavor.BOTT_CHERN)


def dolbeault_dims(structure: Structure) -> CohomologyTable:
    """``h^{p,q}_delbar = dim ker delbar - rank delbar`` on invariant forms."""
    dims = {}
    for p in range(4):
        for q in range(4):
            closed = _kernel_dim(structure, p, q, [(0, 1)])
            image = 0
            if q >= 1:
                m, _, _ = _operator(structure, p, q - 1, 0, 1)
                image = _rank(m)
            dims[(p, q)] = closed - image
    return CohomologyTable(dims, Flavor.DOLBEAULT)
