"""Invariant forms on a 6-dimensional dual space.

A form is a homogeneous element of the exterior algebra on six generators.
Three coframe tags are used:

``complex``
    generators ``w1 w2 w3 ~w1 ~w2 ~w3`` (a (1,0)-coframe and its conjugate),
    stored as indices 0..5.
``real``
    the real coframe ``e1..e6`` adapted to a complex coframe ``theta`` by
    ``e^{2k-1} + i e^{2k} = theta^k``; conversion to and from ``complex`` is
    canonical (see :func:`to_real`, :func:`to_complex`).
``plain``
    a real coframe with no declared complex structure (e.g. parsed from a
    Salamon tuple).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import BasisMismatch, NoComplexStructure
from .scalar import CQ, I, TOL, conj, format_scalar, is_zero

COMPLEX = "complex"
REAL = "real"
PLAIN = "plain"
DIM = 6


@lru_cache(maxsize=None)
def sort_sign(idx: tuple) -> tuple:
    """Sort a multi-index; returns ``(sorted, sign)`` with sign 0 on repeats."""
    if len(set(idx)) != len(idx):
        return (), 0
    inversions = 0
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if idx[a] > idx[b]:
                inversions += 1
    return tuple(sorted(idx)), (-1 if inversions % 2 else 1)


def _norm_coeff(c):
    if isinstance(c, CQ):
        return c
    if isinstance(c, (int, Fraction)):
        return CQ(c)
    return complex(c)


class Form:
    """Homogeneous invariant form; zero coefficients are never stored."""

    __slots__ = ("degree", "terms", "basis")

    def __init__(self, degree: int, terms=None, basis: str = COMPLEX):
        if not 0 <= degree <= DIM:
            raise ValueError(f"degree {degree} out of range")
        clean = {}
        for idx, c in (terms or {}).items():
            if len(idx) != degree:
                raise ValueError(f"multi-index {idx} has wrong length for degree {degree}")
            c = _norm_coeff(c)
            if not is_zero(c):
                clean[tuple(idx)] = c
        self.degree = degree
        self.terms = clean
        self.basis = basis

    # construction helpers

    @classmethod
    def zero(cls, degree: int, basis: str = COMPLEX) -> "Form":
        return cls(degree, {}, basis)

    @classmethod
    def scalar(cls, c, basis: str = COMPLEX) -> "Form":
        return cls(0, {(): c}, basis)

    @classmethod
    def generator(cls, i: int, basis: str = COMPLEX, coeff=1) -> "Form":
        return cls(1, {(i,): coeff}, basis)

    @classmethod
    def monomial(cls, spec: str, coeff=1, basis: str = COMPLEX) -> "Form":
        """Build ``coeff * monomial`` from labels.

        Complex labels are digits with an optional ``~`` for conjugation,
        ``"1~12~2"`` meaning ``w1 ^ ~w1 ^ w2 ^ ~w2``.  Real labels are digits,
        ``"1234"`` meaning ``e1 ^ e2 ^ e3 ^ e4``.
        """
        idx = parse_labels(spec, basis)
        s, sign = sort_sign(idx)
        if sign == 0:
            return cls.zero(len(idx), basis)
        return cls(len(idx), {s: _norm_coeff(coeff) * sign}, basis)

    # arithmetic

    def _check(self, other: "Form"):
        if self.basis != other.basis:
            raise BasisMismatch(f"{self.basis} vs {other.basis}")
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return Form(self.degree, out, self.basis)

    __radd__ = __add__

    def __neg__(self):
        return Form(self.degree, {k: -v for k, v in self.terms.items()}, self.basis)

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, Form):
            return wedge(self, c)
        c = _norm_coeff(c)
        return Form(self.degree, {k: v * c for k, v in self.terms.items()}, self.basis)

    def __rmul__(self, c):
        return self.__mul__(c)

    def __truediv__(self, c):
        c = _norm_coeff(c)
        return Form(self.degree, {k: v / c for k, v in self.terms.items()}, self.basis)

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.basis == other.basis and self.degree == other.degree and self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def close_to(self, other: "Form", tol: float = TOL) -> bool:
        if self.basis != other.basis or self.degree != other.degree:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(abs(complex(self.terms.get(k, 0)) - complex(other.terms.get(k, 0))) <= tol for k in keys)

    def coefficient(self, spec) -> object:
        """Coefficient on a monomial given by labels or a multi-index, sign-adjusted."""
        idx = parse_labels(spec, self.basis) if isinstance(spec, str) else tuple(spec)
        s, sign = sort_sign(idx)
        if sign == 0:
            raise ValueError(f"degenerate monomial {spec!r}")
        c = self.terms.get(s)
        if c is None:
            return CQ(0) if self.is_exact() else 0j
        return c * sign

    def is_exact(self) -> bool:
        return all(isinstance(v, CQ) for v in self.terms.values())

    def items(self):
        return sorted(self.terms.items())

    def map_coefficients(self, fn) -> "Form":
        return Form(self.degree, {k: fn(v) for k, v in self.terms.items()}, self.basis)

    def approx(self) -> "Form":
        return self.map_coefficients(complex)

    def __repr__(self):
        return f"Form({self.degree}, {self.basis}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for idx, c in self.items():
            pieces.append(f"({format_scalar(c)}) {monomial_label(idx, self.basis)}")
        return " + ".join(pieces)


_CLABEL = re.compile(r"\s*(~?)\s*([1-6])")


def parse_labels(spec: str, basis: str) -> tuple:
    out = []
    pos = 0
    spec = spec.strip()
    while pos < len(spec):
        m = _CLABEL.match(spec, pos)
        if not m:
            raise ValueError(f"bad monomial label {spec!r}")
        bar, digit = m.group(1), int(m.group(2))
        if basis == COMPLEX:
            if digit > 3:
                raise ValueError(f"complex coframe has generators 1..3, got {digit}")
            out.append(digit - 1 + (3 if bar else 0))
        else:
            if bar:
                raise ValueError("conjugation marker in a real coframe label")
            out.append(digit - 1)
        pos = m.end()
    return tuple(out)


def monomial_label(idx: tuple, basis: str) -> str:
    if basis == COMPLEX:
        return "w^" + "".join(("~" if i >= 3 else "") + str(i % 3 + 1) for i in idx) if idx else "1"
    return "e^" + "".join(str(i + 1) for i in idx) if idx else "1"


def zero_like(a: Form, degree: int | None = None) -> Form:
    return Form.zero(a.degree if degree is None else degree, a.basis)


# core operations

@lru_cache(maxsize=None)
def _wedge_mono(a: tuple, b: tuple) -> tuple:
    return sort_sign(a + b)


def wedge(a: Form, b: Form) -> Form:
    """Exterior product."""
    if a.basis != b.basis:
        raise BasisMismatch(f"{a.basis} vs {b.basis}")
    deg = a.degree + b.degree
    if deg > DIM:
        raise ValueError(f"wedge degree {deg} exceeds {DIM}")
    out = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            s, sign = _wedge_mono(ia, ib)
            if sign == 0:
                continue
            v = ca * cb if sign > 0 else -(ca * cb)
            out[s] = out[s] + v if s in out else v
    return Form(deg, out, a.basis)


def wedge_all(*forms: Form) -> Form:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def dee(structure, a: Form) -> Form:
    """Exterior derivative determined by the structure equations of ``structure``.

    ``structure.d[i]`` is the 2-form ``d(generator i)``; the derivative is
    extended by the graded Leibniz rule.
    """
    if structure.basis != a.basis:
        raise BasisMismatch(f"structure in {structure.basis}, form in {a.basis}")
    if a.degree == DIM:
        raise ValueError("exterior derivative of a top-degree form")
    out = {}
    diffs = structure.d
    for idx, c in a.terms.items():
        for j, g in enumerate(idx):
            sj = -c if j % 2 else c
            head, tail = idx[:j], idx[j + 1:]
            for mono, dc in diffs[g].terms.items():
                s, sign = sort_sign(head + mono + tail)
                if sign == 0:
                    continue
                v = sj * dc if sign > 0 else -(sj * dc)
                out[s] = out[s] + v if s in out else v
    return Form(a.degree + 1, out, a.basis)


def _conj_index(i: int) -> int:
    return i + 3 if i < 3 else i - 3


def conj_form(a: Form) -> Form:
    """Complex conjugation (swaps w^k and ~w^k in the complex coframe)."""
    if a.basis != COMPLEX:
        return a.map_coefficients(conj)
    out = {}
    for idx, c in a.terms.items():
        s, sign = sort_sign(tuple(_conj_index(i) for i in idx))
        v = conj(c)
        out[s] = v if sign > 0 else -v
    return Form(a.degree, out, a.basis)


def bidegree(idx: tuple) -> tuple:
    p = sum(1 for i in idx if i < 3)
    return p, len(idx) - p


def _require_complex(a: Form) -> Form:
    if a.basis == COMPLEX:
        return a
    if a.basis == REAL:
        return to_complex(a)
    raise NoComplexStructure("form is in a real coframe without a declared complex structure")


def bidegree_split(a: Form) -> list:
    """List of ``(p, q, component)`` with nonzero components, ``p`` descending."""
    c = _require_complex(a)
    parts = {}
    for idx, v in c.terms.items():
        parts.setdefault(bidegree(idx), {})[idx] = v
    out = []
    for (p, q) in sorted(parts, key=lambda pq: -pq[0]):
        comp = Form(c.degree, parts[(p, q)], COMPLEX)
        if a.basis == REAL:
            comp = to_real(comp)
        out.append((p, q, comp))
    return out


def component(a: Form, p: int, q: int) -> Form:
    for pp, qq, comp in bidegree_split(a):
        if (pp, qq) == (p, q):
            return comp
    return Form.zero(a.degree, a.basis)


def _i_power(n: int, exact: bool):
    n %= 4
    if exact:
        return (CQ(1), I, CQ(-1), -I)[n]
    return (1 + 0j, 1j, -1 + 0j, -1j)[n]


def j_act(a: Form) -> Form:
    """Action of the complex structure: multiplication by ``i^(p-q)`` on (p,q)-parts.

    With this convention ``j_act(dF)`` is the torsion 3-form of the Bismut
    connection of ``F`` (see :func:`nilstrom.hermitian.torsion_and_dT`).
    """
    c = _require_complex(a)
    exact = c.is_exact()
    out = {}
    for idx, v in c.terms.items():
        p, q = bidegree(idx)
        out[idx] = v * _i_power(p - q, exact)
    res = Form(c.degree, out, COMPLEX)
    return to_real(res) if a.basis == REAL else res


# linear substitution and the canonical complex <-> real conversions

def substitute(a: Form, images, basis: str) -> Form:
    """Replace generator ``i`` by the 1-form ``images[i]`` (expressed in ``basis``)."""
    acc = {}
    cache = {}
    for idx, c in a.terms.items():
        key = idx
        if key not in cache:
            if not idx:
                prod = Form.scalar(1, basis)
            else:
                prod = images[idx[0]]
                for g in idx[1:]:
                    prod = wedge(prod, images[g])
            cache[key] = prod
        for k, v in cache[key].terms.items():
            w = c * v
            acc[k] = acc[k] + w if k in acc else w
    return Form(a.degree, acc, basis)


def _half(exact: bool):
    return CQ(Fraction(1, 2)) if exact else 0.5


@lru_cache(maxsize=2)
def _real_images(exact: bool):
    """theta^k = e_{2k} + i e_{2k+1};  ~theta^k = e_{2k} - i e_{2k+1}."""
    one = CQ(1) if exact else 1 + 0j
    ii = I if exact else 1j
    imgs = []
    for k in range(3):
        imgs.append(Form(1, {(2 * k,): one, (2 * k + 1,): ii}, REAL))
    for k in range(3):
        imgs.append(Form(1, {(2 * k,): one, (2 * k + 1,): -ii}, REAL))
    return tuple(imgs)


@lru_cache(maxsize=2)
def _complex_images(exact: bool):
    """e_{2k} = (theta^k + ~theta^k)/2;  e_{2k+1} = -(i/2)(theta^k - ~theta^k)."""
    h = _half(exact)
    ii = I if exact else 1j
    imgs = []
    for k in range(3):
        imgs.append(Form(1, {(k,): h, (k + 3,): h}, COMPLEX))
        imgs.append(Form(1, {(k,): -ii * h, (k + 3,): ii * h}, COMPLEX))
    return tuple(imgs)


def to_real(a: Form) -> Form:
    """Express a complex-coframe form in the adapted real coframe."""
    if a.basis == REAL:
        return a
    if a.basis != COMPLEX:
        raise BasisMismatch(f"cannot convert {a.basis} form to real coframe")
    return substitute(a, _real_images(a.is_exact()), REAL)


def to_complex(a: Form) -> Form:
    """Express an adapted real-coframe form in the complex coframe."""
    if a.basis == COMPLEX:
        return a
    if a.basis != REAL:
        raise NoComplexStructure("plain real coframe has no complex structure")
    return substitute(a, _complex_images(a.is_exact()), COMPLEX)


def is_real_form(a: Form, tol: float = TOL) -> bool:
    c = conj_form(a)
    return c == a if a.is_exact() else c.close_to(a, tol)


def monomials(degree: int) -> list:
    return list(combinations(range(DIM), degree))


def bidegree_monomials(p: int, q: int) -> list:
    """Sorted complex multi-indices of bidegree (p, q)."""
    return [h + b for h in combinations(range(3), p) for b in combinations(range(3, 6), q)]


def volume(basis: str = REAL, coeff=1) -> Form:
    return Form(DIM, {tuple(range(DIM)): coeff}, basis)
