"""Hermitian metrics, adapted SU(3)-frames, Lee form and torsion.

A metric is stored as a Hermitian 3x3 array ``H`` over the (1,0)-coframe,
with fundamental form ``F = (i/2) sum H[k][l] w^k ^ ~w^l``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .errors import NotHolomorphic, NotPositiveDefinite
from .exterior import COMPLEX, Form, bidegree_split, j_act, monomials, to_complex, to_real, wedge
from .scalar import CQ, I, abs2, conj, is_exact, is_zero, modulus, re_part, real_sqrt
from .structures import (
    Structure,
    complex_change_matrix,
    express_form,
    pull_form,
    to_real_structure,
    transform,
)


def _lift_matrix(H):
    rows = [list(r) for r in H]
    if all(is_exact(x) for r in rows for x in r):
        return [[x if isinstance(x, CQ) else CQ(x) for x in r] for r in rows]
    return [[complex(x) for x in r] for r in rows]


def fundamental_form(H) -> Form:
    exact = all(is_exact(x) for r in H for x in r)
    half_i = I / 2 if exact else 0.5j
    terms = {}
    for k in range(3):
        for l in range(3):
            if not is_zero(H[k][l], 0.0):
                terms[(k, l + 3)] = half_i * H[k][l]
    return Form(2, terms, COMPLEX)


@dataclass(frozen=True, eq=False)
class HermitianMetric:
    H: tuple
    F: Form

    @property
    def exact(self) -> bool:
        return self.F.is_exact()

    def matrix(self):
        return [list(r) for r in self.H]


def make_metric(H) -> HermitianMetric:
    """Validate ``H`` and build the fundamental form.

    Raises
    ------
    ValueError
        If ``H`` is not Hermitian.
    NotPositiveDefinite
        If a leading principal minor is not positive; the exception carries
        the (1-based) index and value of the first failing minor.
    """
    H = _lift_matrix(H)
    if len(H) != 3 or any(len(r) != 3 for r in H):
        raise ValueError("H must be 3x3")
    exact = isinstance(H[0][0], CQ)
    if not linalg.is_hermitian(H, 0.0 if exact else 1e-12):
        raise ValueError("H is not Hermitian")
    for k, m in enumerate(linalg.leading_minors(H), start=1):
        if not re_part(m) > 0:
            raise NotPositiveDefinite(f"leading minor {k} is {m}", minor_index=k, minor=m)
    return HermitianMetric(tuple(tuple(r) for r in H), fundamental_form(H))


def cholesky_upper(G):
    """Upper-triangular ``L`` with ``L^* L = G`` and positive real diagonal.

    Exact input needs perfect-square pivots; otherwise
    :class:`NotExactlyRepresentable` is raised.
    """
    n = len(G)
    exact = all(is_exact(x) for r in G for x in r)
    z = CQ(0) if exact else 0j
    L = [[z] * n for _ in range(n)]
    for k in range(n):
        piv = G[k][k] - sum((abs2(L[m][k]) for m in range(k)), 0 * re_part(G[k][k]))
        piv = re_part(piv)
        if not piv > 0:
            raise NotPositiveDefinite(f"pivot {k + 1} is {piv}", minor_index=k + 1, minor=piv)
        root = real_sqrt(piv)
        L[k][k] = root
        for j in range(k + 1, n):
            acc = G[k][j] - sum((conj(L[m][k]) * L[m][j] for m in range(k)), z)
            L[k][j] = acc / L[k][k]
    return L


@dataclass(frozen=True, eq=False)
class SU3Frame:
    """Unitary coframe ``theta = L w`` and its real companion ``e``.

    ``theta_structure`` holds the structure equations in ``theta`` and
    ``real_structure`` those in ``e`` with ``e^{2k-1} + i e^{2k} = theta^k``.
    """

    L: tuple
    change: tuple
    metric: HermitianMetric
    theta_structure: Structure
    real_structure: Structure

    def to_theta(self, a: Form) -> Form:
        return express_form(a, [list(r) for r in self.change], COMPLEX)

    def to_real(self, a: Form) -> Form:
        return to_real(self.to_theta(a))

    def det_L(self):
        L = self.L
        return L[0][0] * L[1][1] * L[2][2]


def adapted_frame(structure: Structure, metric: HermitianMetric) -> SU3Frame:
    """Unitary coframe of ``metric``: ``theta = L w`` with ``L`` upper triangular.

    With ``F = (i/2) sum_k theta^k ^ ~theta^k`` one needs ``L^* L = conj(H)``;
    for diagonal ``H`` this is just ``L = diag(sqrt(H_kk))``.
    """
    H = metric.matrix()
    G = [[conj(H[i][j]) for j in range(3)] for i in range(3)]
    L = cholesky_upper(G)
    M = complex_change_matrix(L)
    theta = transform(structure, M, COMPLEX)
    real = to_real_structure(theta)
    return SU3Frame(tuple(tuple(r) for r in L), tuple(tuple(r) for r in M), metric, theta, real)


def dF2(structure: Structure, F: Form) -> Form:
    return structure.dee(wedge(F, F))


def is_balanced(structure: Structure, F: Form, tol: float = 1e-10) -> bool:
    out = dF2(structure, F)
    return out.is_zero() if out.is_exact() else out.close_to(Form.zero(5, out.basis), tol)


def lee_form(structure: Structure, F: Form) -> Form:
    """The 1-form ``theta`` with ``d(F^2) = theta ^ F^2``.

    Solved as a linear system in the six coefficients of ``theta``; the map
    ``theta -> theta ^ F^2`` is injective for nondegenerate ``F``.
    """
    F2 = wedge(F, F)
    target = structure.dee(F2)
    basis = structure.basis
    cols = [wedge(Form.generator(i, basis), F2) for i in range(6)]
    rows = monomials(5)
    A = [[c.terms.get(m, 0 * 1) for c in cols] for m in rows]
    b = [target.terms.get(m, 0) for m in rows]
    if not F.is_exact():
        A = [[complex(x) for x in r] for r in A]
        b = [complex(x) for x in b]
    x = linalg.solve(A, b)
    return Form(1, {(i,): x[i] for i in range(6)}, basis)


def torsion_and_dT(structure: Structure, F: Form):
    """``T = J dF`` (acting by ``i^(p-q)`` on ``(p,q)``-parts) and ``dT``."""
    T = j_act(structure.dee(F))
    return T, structure.dee(T)


def psi_norm(frame: SU3Frame, psi: Form):
    """``|f|`` where ``psi = f theta^123``."""
    parts = bidegree_split(psi)
    if psi.degree != 3 or any((p, q) != (3, 0) for p, q, _ in parts):
        raise NotHolomorphic("psi is not a (3,0)-form")
    f = psi.coefficient("123") / frame.det_L()
    return modulus(f)


def psi_norm_and_conformal_check(structure: Structure, frame: SU3Frame, psi: Form):
    """Norm of ``psi`` in the unitary coframe and the verdict of ``d(|psi| F^2) = 0``.

    The norm is constant for invariant data, so the verdict reduces to
    ``d(F^2) = 0``.

    Raises
    ------
    NotHolomorphic
        If ``psi`` is not a closed (3,0)-form.
    """
    if not structure.dee(psi).is_zero():
        raise NotHolomorphic("psi is not closed")
    norm = psi_norm(frame, psi)
    return norm, is_balanced(structure, frame.metric.F)


def metric_on_real_frame(frame: SU3Frame):
    """Gram matrix ``g(e_i, e_j) = F(e_i, J e_j)`` of the real frame.

    ``J`` on vectors is determined by ``J e_{2k-1} = e_{2k}``; the returned
    matrix is the identity when the frame is adapted.
    """
    Fr = frame.to_real(frame.metric.F)
    one = CQ(1) if Fr.is_exact() else 1 + 0j

    def F_of(i, j):
        if i == j:
            return 0 * one
        a, b = min(i, j), max(i, j)
        c = Fr.terms.get((a, b), 0 * one)
        return c if i < j else -c

    def J_vec(j):
        return (j + 1, one) if j % 2 == 0 else (j - 1, -one)

    g = []
    for i in range(6):
        row = []
        for j in range(6):
            k, sgn = J_vec(j)
            row.append(F_of(i, k) * sgn)
        g.append(row)
    return g


def real_to_w(frame: SU3Frame, a: Form) -> Form:
    """Express a real-frame form in the ``w`` coframe."""
    return pull_form(to_complex(a), [list(r) for r in frame.change], COMPLEX)
