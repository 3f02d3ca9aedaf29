"""Dense linear algebra over exact or floating scalars.

Matrices are lists of rows.  Entries may be :class:`~nilstrom.scalar.CQ`,
``Fraction``/``int`` or ``complex``; elimination uses exact zero tests on exact
entries and partial pivoting with a tolerance on floating ones.
"""

from __future__ import annotations

from fractions import Fraction

from .scalar import CQ, TOL, conj, is_exact, is_zero


def _normalize(matrix):
    rows = [list(row) for row in matrix]
    if all(is_exact(x) for row in rows for x in row):
        return [[x if isinstance(x, CQ) else CQ(x) for x in row] for row in rows]
    return [[complex(x) for x in row] for row in rows]


def _pivot_row(m, col, start, n_rows):
    if all(is_exact(m[r][col]) for r in range(start, n_rows)):
        for r in range(start, n_rows):
            if m[r][col]:
                return r
        return None
    best, best_val = None, TOL
    for r in range(start, n_rows):
        v = abs(complex(m[r][col]))
        if v > best_val:
            best, best_val = r, v
    return best


def rref(matrix):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    m = _normalize(matrix)
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = _pivot_row(m, c, r, n_rows)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for rr in range(n_rows):
            if rr != r and not is_zero(m[rr][c], 0.0):
                f = m[rr][c]
                m[rr] = [a - f * b for a, b in zip(m[rr], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(matrix) -> int:
    if not matrix or not matrix[0]:
        return 0
    return len(rref(matrix)[1])


def nullspace(matrix, n_cols: int | None = None):
    """Basis of ``{x : matrix @ x = 0}`` as a list of column vectors (lists)."""
    if not matrix:
        if n_cols is None:
            raise ValueError("n_cols required for an empty matrix")
        return [[1 if i == j else 0 for i in range(n_cols)] for j in range(n_cols)]
    n_cols = len(matrix[0])
    red, pivots = rref(matrix)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n_cols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(matrix, rhs):
    """Solve ``matrix @ x = rhs``; raises ValueError if inconsistent.

    Free variables (if any) are set to zero.
    """
    n_cols = len(matrix[0])
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    if n_cols in pivots:
        raise ValueError("inconsistent linear system")
    x = [0] * n_cols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return x


def identity(n: int, one=1):
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def inverse(matrix):
    n = len(matrix)
    one = CQ(1) if all(is_exact(x) for row in matrix for x in row) else 1.0
    aug = [list(row) + identity(n, one)[i] for i, row in enumerate(matrix)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det(matrix):
    """Determinant by Gaussian elimination."""
    m = _normalize(matrix)
    n = len(m)
    if n == 0:
        return CQ(1)
    out = CQ(1) if isinstance(m[0][0], CQ) else 1.0
    for c in range(n):
        p = _pivot_row(m, c, c, n)
        if p is None:
            return out * 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out = out * m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if not is_zero(f, 0.0):
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return out


def matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), 0 * a[0][0]) for j in range(len(b[0]))]
            for i in range(len(a))]


def conj_transpose(a):
    return [[conj(a[j][i]) for j in range(len(a))] for i in range(len(a[0]))]


def transpose(a):
    return [[a[j][i] for j in range(len(a))] for i in range(len(a[0]))]


def adjugate3(m):
    """Adjugate of a 3x3 matrix (transpose of the cofactor matrix)."""
    def cof(i, j):
        rows = [r for r in range(3) if r != i]
        cols = [c for c in range(3) if c != j]
        minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]]
        return minor if (i + j) % 2 == 0 else -minor
    return [[cof(j, i) for j in range(3)] for i in range(3)]


def leading_minors(m):
    return [det([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]


def is_hermitian(m, tol: float = TOL) -> bool:
    n = len(m)
    return all(is_zero(m[i][j] - conj(m[j][i]), tol) for i in range(n) for j in range(n))


def rationalize(x: float, max_den: int) -> Fraction:
    return Fraction(x).limit_denominator(max_den)
