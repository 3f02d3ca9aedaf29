"""Existence of invariant balanced metrics.

A Hermitian metric is balanced iff ``d(F^2) = 0``, and in complex dimension 3
``F -> F^2`` is a bijection onto strictly positive real (2,2)-forms.  So a
balanced metric exists iff the space of closed real (2,2)-forms meets the open
cone of strictly positive ones.  Positivity of a (2,2)-form ``Phi`` is read off
the Hermitian matrix ``M`` with ``Phi ^ i theta^k ^ ~theta^l = M[k][l] vol``.

The search is a small semidefinite program.  Both outcomes are re-checked in
exact arithmetic: a witness is rounded to rationals and verified, and an
infeasibility claim is backed (when possible) by a rational matrix ``Z >= 0``,
``Z != 0`` with ``tr(M_a Z) = 0`` for every closed generator ``M_a``, which
rules out any positive definite combination.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import linalg
from .errors import NotExactlyRepresentable, NotPositive
from .exterior import COMPLEX, Form, bidegree_monomials, conj_form, monomials, to_complex, volume, wedge
from .families import coefficients_h5, condis_factor
from .hermitian import HermitianMetric, fundamental_form, is_balanced, make_metric
from .scalar import CQ, I, exact_sqrt, im_part, is_exact, re_part
from .structures import Structure

log = logging.getLogger(__name__)

DELTA_PLUS = 1e-8
DELTA_MINUS = 1e-8


def _vol_complex(exact: bool) -> Form:
    return to_complex(volume(coeff=CQ(1) if exact else 1 + 0j))


def _real_vector(a: Form, keys):
    out = []
    for k in keys:
        c = a.terms.get(k, 0)
        out.append(re_part(c) if c != 0 else Fraction(0))
        out.append(im_part(c) if c != 0 else Fraction(0))
    return out


@dataclass
class Closed22Space:
    basis: list
    all_real: list

    @property
    def dimension(self) -> int:
        return len(self.basis)


def real_22_basis(exact: bool = True) -> list:
    """Nine real (2,2)-forms spanning the real (2,2)-forms."""
    one = CQ(1) if exact else 1 + 0j
    ii = I if exact else 1j
    keys = bidegree_monomials(2, 2)
    cands = []
    for k in keys:
        mu = Form(4, {k: one}, COMPLEX)
        cm = conj_form(mu)
        cands.append(mu + cm)
        cands.append((mu - cm) * ii)
    chosen, rows = [], []
    for c in cands:
        if c.is_zero():
            continue
        trial = rows + [_real_vector(c, keys)]
        if linalg.rank(trial) > len(rows):
            rows, chosen = trial, chosen + [c]
    return chosen


def closed_22_space(structure: Structure) -> Closed22Space:
    """Basis of closed real (2,2)-forms, by an exact nullspace over the rationals."""
    exact = structure.is_exact()
    basis = real_22_basis(exact)
    images = [structure.dee(b) for b in basis]
    keys = monomials(5)
    if exact:
        cols = [_real_vector(im, keys) for im in images]
        matrix = [[cols[j][i] for j in range(len(cols))] for i in range(len(keys) * 2)]
        kernel = linalg.nullspace(matrix)
    else:
        A = np.array([[complex(im.terms.get(k, 0)) for im in images] for k in keys])
        A = np.vstack([A.real, A.imag])
        _, sv, vt = np.linalg.svd(A)
        rank = int((sv > 1e-9 * max(1.0, sv.max() if sv.size else 1.0)).sum())
        kernel = [list(v) for v in vt[rank:]]
    out = []
    for vec in kernel:
        acc = Form.zero(4)
        for c, b in zip(vec, basis):
            if c != 0:
                acc = acc + b * (CQ(c) if exact and not isinstance(c, CQ) else c if exact else complex(c))
        out.append(acc)
    return Closed22Space(out, basis)


def positivity_matrix(phi: Form, frame_change=None):
    """Hermitian ``M`` with ``phi ^ (i theta^k ^ ~theta^l) = M[k][l] e^123456``.

    ``frame_change`` is the 3x3 matrix ``L`` of a unitary coframe
    ``theta = L w``; by default ``theta = w``.
    """
    exact = phi.is_exact()
    ii = I if exact else 1j
    one = CQ(1) if exact else 1 + 0j
    z = one * 0
    L = frame_change or [[one if i == j else z for j in range(3)] for i in range(3)]
    thetas = [Form(1, {(j,): L[k][j] for j in range(3)}, COMPLEX) for k in range(3)]
    vol = _vol_complex(exact)
    vkey, vcoef = vol.items()[0]
    M = []
    for k in range(3):
        row = []
        for l in range(3):
            top = wedge(phi, wedge(thetas[k], conj_form(thetas[l])) * ii)
            row.append(top.terms.get(vkey, z) / vcoef)
        M.append(row)
    return M


def square_root_22(phi: Form, allow_rescale: bool = False) -> HermitianMetric:
    """Metric ``H`` with ``F(H)^2 = phi``.

    ``positivity_matrix(F(H)^2) = 4 adj(H)^T``, and ``adj(adj(H)) = det(H) H``
    inverts it.  In exact mode ``det(H)`` is the square root of a rational;
    when it is irrational a positive multiple of the true root is returned
    if ``allow_rescale`` is set (it has the same closedness properties),
    and :class:`NotExactlyRepresentable` is raised otherwise.

    Raises
    ------
    NotPositive
        If ``phi`` is not strictly positive.
    """
    M = positivity_matrix(phi)
    minors = linalg.leading_minors(M)
    if not all(re_part(m) > 0 for m in minors):
        raise NotPositive("the (2,2)-form is not strictly positive")
    A = [[M[j][i] / 4 for j in range(3)] for i in range(3)]
    adjA = linalg.adjugate3(A)
    detA = linalg.det(A)
    if is_exact(detA):
        try:
            root = CQ(exact_sqrt(re_part(detA)))
        except NotExactlyRepresentable:
            if not allow_rescale:
                raise
            root = CQ(1)
    else:
        root = complex(np.sqrt(re_part(detA)))
    H = [[adjA[i][j] / root for j in range(3)] for i in range(3)]
    return make_metric(H)


class FeasibilityKind(str, enum.Enum):
    FEASIBLE = "FeasibleWitness"
    INFEASIBLE = "InfeasibleNumeric"
    UNKNOWN = "Unknown"


@dataclass
class FeasibilityVerdict:
    kind: FeasibilityKind
    margin: float
    metric: HermitianMetric | None = None
    phi: Form | None = None
    certificate: list | None = None
    closed_dim: int = 0
    details: dict = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return self.kind is FeasibilityKind.FEASIBLE


def _embed(M):
    """Real symmetric 6x6 embedding ``[[Re, -Im], [Im, Re]]`` of a Hermitian matrix."""
    A = np.array([[complex(x) for x in r] for r in M])
    return np.block([[A.real, -A.imag], [A.imag, A.real]])


def _max_min_eig(mats):
    """``max t`` s.t. ``sum c_a mats[a] >= t I`` and ``tr(sum c_a mats[a]) = 1``."""
    import cvxpy as cp

    m = len(mats)
    if m == 0:
        return None, None
    c = cp.Variable(m)
    t = cp.Variable()
    A = sum(c[a] * mats[a] for a in range(m))
    n = mats[0].shape[0]
    cons = [A - t * np.eye(n) >> 0, cp.trace(A) == 1]
    prob = cp.Problem(cp.Maximize(t), cons)
    try:
        prob.solve(solver=cp.CLARABEL)
    except cp.error.SolverError:  # pragma: no cover - depends on solver availability
        prob.solve(solver=cp.SCS, eps=1e-9)
    if prob.status in ("infeasible", "infeasible_inaccurate"):
        return float("-inf"), None
    if c.value is None:
        return None, None
    return float(t.value), np.array(c.value)


def _hermitian_coords_basis(exact: bool):
    """Real basis of 3x3 Hermitian matrices (9 elements)."""
    one = CQ(1) if exact else 1 + 0j
    ii = I if exact else 1j
    z = one * 0
    out = []
    for k in range(3):
        E = [[z] * 3 for _ in range(3)]
        E[k][k] = one
        out.append(E)
    for k, l in combinations(range(3), 2):
        E = [[z] * 3 for _ in range(3)]
        E[k][l] = E[l][k] = one
        out.append(E)
        E = [[z] * 3 for _ in range(3)]
        E[k][l], E[l][k] = ii, -ii
        out.append(E)
    return out


def _trace_pair(M, Z):
    return sum((M[k][l] * Z[l][k] for k in range(3) for l in range(3)), M[0][0] * 0)


def _is_psd_exact(Z) -> bool:
    n = len(Z)
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            sub = [[Z[i][j] for j in idx] for i in idx]
            if re_part(linalg.det(sub)) < 0:
                return False
    return True


def infeasibility_certificate(gens):
    """Rational ``Z >= 0``, ``Z != 0`` orthogonal to every matrix in ``gens``, or ``None``."""
    herm = _hermitian_coords_basis(True)
    rows = [[re_part(_trace_pair(M, E)) for E in herm] for M in gens]
    space = linalg.nullspace(rows, n_cols=9) if rows else [[int(i == j) for i in range(9)] for j in range(9)]
    if not space:
        return None
    S = []
    for vec in space:
        Z = [[CQ(0)] * 3 for _ in range(3)]
        for c, E in zip(vec, herm):
            if c:
                c = c if isinstance(c, CQ) else CQ(c)
                Z = [[Z[i][j] + E[i][j] * c for j in range(3)] for i in range(3)]
        S.append(Z)
    # trace-one Z in span(S) maximizing lambda_min
    t, y = _max_min_eig([_embed(Z) for Z in S])
    candidates = []
    if y is not None:
        for den in (1, 2, 4, 8, 16, 64, 256, 1000, 10 ** 4, 10 ** 6):
            candidates.append([Fraction(float(v)).limit_denominator(den) for v in y])
    candidates += [[Fraction(int(i == j)) for i in range(len(S))] for j in range(len(S))]
    for coeffs in candidates:
        Z = [[sum((S[b][i][j] * c for b, c in enumerate(coeffs) if c), CQ(0)) for j in range(3)]
             for i in range(3)]
        if all(Z[i][j] == 0 for i in range(3) for j in range(3)):
            continue
        if _is_psd_exact(Z) and all(_trace_pair(M, Z) == 0 for M in gens):
            return Z
    return None


def numeric_infeasibility_certificate(gens, tol: float = 1e-9):
    """Floating-point analogue of :func:`infeasibility_certificate`.

    Returns a trace-one ``Z`` (complex ndarray) with ``lambda_min(Z) >= -tol``
    and ``|tr(M_a Z)| <= tol`` for every generator, or ``None``.
    """
    herm = _hermitian_coords_basis(False)
    H = [np.array(E, dtype=complex) for E in herm]
    G = [np.array([[complex(x) for x in r] for r in M]) for M in gens]
    rows = np.array([[np.trace(M @ E).real for E in H] for M in G]).reshape(len(G), 9)
    if len(G):
        _, sv, vt = np.linalg.svd(rows)
        rank = int((sv > tol * max(1.0, sv.max())).sum())
        space = vt[rank:]
    else:
        space = np.eye(9)
    if len(space) == 0:
        return None
    S = [sum(v[a] * H[a] for a in range(9)) for v in space]
    t, y = _max_min_eig([_embed(Z) for Z in S])
    if y is None:
        return None
    Z = sum(c * Zb for c, Zb in zip(y, S))
    Z = Z / np.trace(Z).real
    if np.linalg.eigvalsh(Z).min() < -tol:
        return None
    if any(abs(np.trace(M @ Z)) > tol for M in G):
        return None
    return Z


def _rational_witness(space: Closed22Space, c):
    for den in (1, 2, 4, 8, 16, 64, 256, 1000, 10 ** 4, 10 ** 6, 10 ** 8):
        coeffs = [Fraction(float(v)).limit_denominator(den) for v in c]
        phi = Form.zero(4)
        for q, b in zip(coeffs, space.basis):
            if q:
                phi = phi + b * CQ(q)
        if phi.is_zero():
            continue
        M = positivity_matrix(phi)
        if all(re_part(m) > 0 for m in linalg.leading_minors(M)):
            return phi
    return None


def balanced_feasible(structure: Structure) -> FeasibilityVerdict:
    """Decide whether ``structure`` carries an invariant balanced metric.

    The numeric maximum of ``lambda_min`` over trace-normalized closed
    positive combinations is compared against ``DELTA_PLUS``/``DELTA_MINUS``;
    a numeric witness is accepted only after exact re-verification, and an
    exact infeasibility certificate clamps the margin to at most zero.
    """
    space = closed_22_space(structure)
    exact = structure.is_exact()
    gens = [positivity_matrix(b) for b in space.basis]
    embedded = []
    for M in gens:
        E = _embed(M)
        nrm = np.linalg.norm(E)
        embedded.append(E / nrm if nrm else E)
    t, c = _max_min_eig(embedded)
    if c is not None:
        # back to the unscaled generators; report lambda_min / trace of the optimum
        c = np.array([ci / (np.linalg.norm(_embed(M)) or 1.0) for ci, M in zip(c, gens)])
        A = sum(ci * np.array([[complex(x) for x in r] for r in M]) for ci, M in zip(c, gens))
        t = float(np.linalg.eigvalsh(A).min() / np.trace(A).real)
    details = {"numeric_max": t}
    if t is not None and t >= DELTA_PLUS:
        if exact:
            phi = _rational_witness(space, c)
            if phi is not None:
                metric = square_root_22(phi, allow_rescale=True)
                if is_balanced(structure, metric.F):
                    return FeasibilityVerdict(FeasibilityKind.FEASIBLE, t, metric, phi, None, space.dimension,
                                              details)
            log.warning("numeric witness did not survive exact verification")
        else:
            phi = Form.zero(4)
            for ci, b in zip(c, space.basis):
                phi = phi + b * complex(ci)
            metric = square_root_22(phi)
            if is_balanced(structure, metric.F, 1e-8):
                return FeasibilityVerdict(FeasibilityKind.FEASIBLE, t, metric, phi, None, space.dimension, details)
    Z = infeasibility_certificate(gens) if exact else numeric_infeasibility_certificate(gens)
    if Z is not None:
        margin = min(t, 0.0) if t is not None else 0.0
        details["certificate"] = "exact" if exact else "numeric"
        return FeasibilityVerdict(FeasibilityKind.INFEASIBLE, margin, certificate=Z,
                                  closed_dim=space.dimension, details=details)
    if t is not None and t <= -DELTA_MINUS:
        return FeasibilityVerdict(FeasibilityKind.INFEASIBLE, t, closed_dim=space.dimension, details=details)
    return FeasibilityVerdict(FeasibilityKind.UNKNOWN, t if t is not None else float("nan"),
                              closed_dim=space.dimension, details=details)


@dataclass
class NormalFormVerdict:
    feasible: bool
    D: object
    condis: object
    p2: object = None


def normal_form_balanced_h5(s, t) -> NormalFormVerdict:
    """Balanced criterion ``p^2 + D(t) = 0`` on the h5 disk family.

    An invariant metric in normal form is balanced iff ``p^2 = -D(t)``, which
    needs ``D(t)`` real and negative.
    """
    _, _, _, D = coefficients_h5(s, t)
    cond = condis_factor(s, t)
    if is_exact(D):
        real = im_part(D) == 0
    else:
        real = abs(im_part(D)) <= 1e-12
    feasible = real and re_part(D) < 0
    p2 = -D if feasible else None
    return NormalFormVerdict(feasible, D, cond, p2)


def normal_form_metric(p2, q2=1, u=0, exact: bool = True):
    """``2F = i(eta^1~1 + p^2 eta^2~2 + q^2 eta^3~3) + u eta^1~2 - ~u eta^2~1``."""
    lift = (lambda x: x if isinstance(x, CQ) else CQ(x)) if exact else complex
    ii = I if exact else 1j
    p2, q2, u = lift(p2), lift(q2), lift(u)
    one, z = lift(1), lift(0)
    H = [[one, -ii * u, z], [ii * u.conjugate(), p2, z], [z, z, q2]]
    return H


__all__ = [
    "Closed22Space",
    "FeasibilityKind",
    "FeasibilityVerdict",
    "NormalFormVerdict",
    "balanced_feasible",
    "closed_22_space",
    "fundamental_form",
    "infeasibility_certificate",
    "numeric_infeasibility_certificate",
    "normal_form_balanced_h5",
    "normal_form_metric",
    "positivity_matrix",
    "square_root_22",
]
