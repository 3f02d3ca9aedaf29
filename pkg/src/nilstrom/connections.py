"""Levi-Civita and Bismut connections of left-invariant orthonormal frames.

Everything is expressed in a real coframe ``e^1..e^6`` that is orthonormal
for the metric (as produced by :func:`nilstrom.hermitian.adapted_frame`).
Indices are 0-based internally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ConventionError
from .exterior import COMPLEX, REAL, Form, bidegree_split, to_complex, wedge
from .scalar import CQ, is_exact
from .structures import Structure

N = 6


def _zero(exact: bool):
    return CQ(0) if exact else 0j


def _half(exact: bool):
    return CQ(1) / 2 if exact else 0.5 + 0j


@dataclass(frozen=True)
class BracketTable:
    """``b[i][j][k] = g([e_i, e_j], e_k)`` for the frame dual to ``e``.

    Obtained from ``de^k(X, Y) = -e^k([X, Y])``.
    """

    b: tuple
    exact: bool

    @classmethod
    def from_structure(cls, structure: Structure) -> "BracketTable":
        if structure.basis != REAL:
            raise ValueError("brackets need a real-coframe structure")
        exact = structure.is_exact()
        z = _zero(exact)
        b = [[[z] * N for _ in range(N)] for _ in range(N)]
        for k in range(N):
            for (i, j), c in structure.d[k].items():
                b[i][j][k] = -c
                b[j][i][k] = c
        return cls(tuple(tuple(tuple(r) for r in m) for m in b), exact)

    def jacobi_ok(self) -> bool:
        z = _zero(self.exact)
        for i in range(N):
            for j in range(N):
                for k in range(N):
                    for m in range(N):
                        acc = z
                        for (a, bb, c) in ((i, j, k), (j, k, i), (k, i, j)):
                            for n in range(N):
                                acc = acc + self.b[bb][c][n] * self.b[a][n][m]
                        if acc != 0 and (self.exact or abs(complex(acc)) > 1e-10):
                            return False
        return True


class Kind(str, enum.Enum):
    LEVI_CIVITA = "LeviCivita"
    BISMUT = "Bismut"


@dataclass(frozen=True)
class ConnectionData:
    """Christoffel table ``gamma[i][j][k] = g(nabla_{e_i} e_j, e_k)``.

    ``sigma[i][j]`` is the connection 1-form with
    ``sigma[i][j](X) = g(nabla_X e_j, e_i)``.
    """

    gamma: tuple
    sigma: tuple
    torsion: tuple
    kind: Kind
    brackets: BracketTable


def _sigma_from_gamma(gamma, exact):
    return tuple(
        tuple(Form(1, {(a,): gamma[a][j][i] for a in range(N)}, REAL) for j in range(N))
        for i in range(N))


def _torsion(gamma, b, exact):
    z = _zero(exact)
    out = [[[z] * N for _ in range(N)] for _ in range(N)]
    for i in range(N):
        for j in range(N):
            for k in range(N):
                out[i][j][k] = gamma[i][j][k] - gamma[j][i][k] - b[i][j][k]
    return tuple(tuple(tuple(r) for r in m) for m in out)


def _freeze(t):
    return tuple(tuple(tuple(r) for r in m) for m in t)


def levi_civita(brackets: BracketTable) -> ConnectionData:
    """Koszul formula ``2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)``."""
    b, exact = brackets.b, brackets.exact
    h = _half(exact)
    gamma = [[[h * (b[i][j][k] - b[j][k][i] + b[k][i][j]) for k in range(N)] for j in range(N)]
             for i in range(N)]
    gamma = _freeze(gamma)
    return ConnectionData(gamma, _sigma_from_gamma(gamma, exact), _torsion(gamma, b, exact),
                          Kind.LEVI_CIVITA, brackets)


def three_form_tensor(T: Form):
    """Fully antisymmetric array ``T[i][j][k] = T(e_i, e_j, e_k)``."""
    exact = T.is_exact()
    z = _zero(exact)
    out = [[[z] * N for _ in range(N)] for _ in range(N)]
    for (i, j, k), c in T.items():
        for (a, bb, cc), sgn in (((i, j, k), 1), ((j, k, i), 1), ((k, i, j), 1),
                                 ((j, i, k), -1), ((i, k, j), -1), ((k, j, i), -1)):
            out[a][bb][cc] = c * sgn
    return out


def bismut(lc: ConnectionData, T: Form) -> ConnectionData:
    """``g(nabla+_X Y, Z) = g(nabla_X Y, Z) + T(X, Y, Z) / 2``.

    Raises
    ------
    ConventionError
        If ``T`` is not a real 3-form in the real coframe.
    """
    if T.basis != REAL:
        raise ConventionError("torsion must be given in the real coframe")
    for _, c in T.items():
        im = c.imag if isinstance(c, (CQ, complex)) else 0
        if im != 0 and (is_exact(c) or abs(im) > 1e-10):
            raise ConventionError("torsion 3-form is not real")
    exact = lc.brackets.exact and T.is_exact()
    h = _half(exact)
    Tt = three_form_tensor(T)
    gamma = _freeze([[[lc.gamma[i][j][k] + h * Tt[i][j][k] for k in range(N)] for j in range(N)]
                     for i in range(N)])
    b = lc.brackets.b
    return ConnectionData(gamma, _sigma_from_gamma(gamma, exact), _torsion(gamma, b, exact),
                          Kind.BISMUT, lc.brackets)


@dataclass(frozen=True)
class CurvatureData:
    omega: tuple

    def entry(self, i: int, j: int) -> Form:
        """``Omega^i_j`` with 1-based indices."""
        return self.omega[i - 1][j - 1]


def curvature(conn: ConnectionData, structure: Structure) -> CurvatureData:
    """Cartan structure equation ``Omega^i_j = d sigma^i_j + sum_k sigma^i_k ^ sigma^k_j``."""
    s = conn.sigma
    out = []
    for i in range(N):
        row = []
        for j in range(N):
            acc = structure.dee(s[i][j])
            for k in range(N):
                acc = acc + wedge(s[i][k], s[k][j])
            row.append(acc)
        out.append(tuple(row))
    return CurvatureData(tuple(out))


def trace_four_form(curv: CurvatureData) -> Form:
    """``sum_{i<j} Omega^i_j ^ Omega^i_j``."""
    acc = Form.zero(4, REAL)
    for i in range(N):
        for j in range(i + 1, N):
            w = curv.omega[i][j]
            acc = acc + wedge(w, w)
    return acc


def _vanishes(a: Form, tol: float) -> bool:
    return a.is_zero() if a.is_exact() else all(abs(complex(c)) <= tol for _, c in a.items())


def hym_check(forms, F: Form, tol: float = 1e-10) -> bool:
    """``Omega ^ F^2 = 0`` and no (2,0)+(0,2) part, for every entry of ``forms``.

    ``forms`` may be a :class:`CurvatureData` or an iterable of 2-forms in the
    same coframe as ``F``.
    """
    if isinstance(forms, CurvatureData):
        forms = [w for row in forms.omega for w in row]
    if F.basis == REAL:
        F = to_complex(F)
    F2 = wedge(F, F)
    for w in forms:
        if w.basis == REAL:
            w = to_complex(w)
        if w.basis != COMPLEX:
            raise ValueError("curvature forms need a complex structure")
        if not _vanishes(wedge(w, F2), tol):
            return False
        for p, q, comp in bidegree_split(w):
            if (p, q) != (1, 1) and not _vanishes(comp, tol):
                return False
    return True


def bismut_curvature(frame_structure: Structure, T_real: Form):
    """Convenience: Levi-Civita, Bismut and curvature on an orthonormal real frame."""
    lc = levi_civita(BracketTable.from_structure(frame_structure))
    bc = bismut(lc, T_real)
    return lc, bc, curvature(bc, frame_structure)
