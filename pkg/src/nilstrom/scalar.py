"""Complex scalars: exact Gaussian rationals and binary64 approximations.

Exact values are :class:`CQ` instances (a pair of :class:`fractions.Fraction`).
Approximate values are plain Python :class:`complex`.  Every routine in the
package is written against the small protocol shared by both (``+ - * /``,
``conjugate()``) plus the helpers defined here, so a computation runs in exact
mode or approximate mode depending only on the scalars it is fed.
"""

from __future__ import annotations

import enum
import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import NotExactlyRepresentable, NonRationalLiteral

TOL = 1e-10


class Mode(str, enum.Enum):
    EXACT = "exact"
    APPROX = "approx"


class CQ:
    """Exact complex rational ``re + i*im``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, CQ):
            return other
        if isinstance(other, (int, Fraction)):
            return CQ(other)
        return None

    def __add__(self, other):
        o = CQ._coerce(other)
        if o is None:
            return complex(self) + other if isinstance(other, (float, complex)) else NotImplemented
        return CQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = CQ._coerce(other)
        if o is None:
            return complex(self) - other if isinstance(other, (float, complex)) else NotImplemented
        return CQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = CQ._coerce(other)
        if o is None:
            return other - complex(self) if isinstance(other, (float, complex)) else NotImplemented
        return CQ(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = CQ._coerce(other)
        if o is None:
            return complex(self) * other if isinstance(other, (float, complex)) else NotImplemented
        if not o.im:
            return CQ(self.re * o.re, self.im * o.re)
        return CQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = CQ._coerce(other)
        if o is None:
            return complex(self) / other if isinstance(other, (float, complex)) else NotImplemented
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("CQ division by zero")
            return CQ(self.re / o.re, self.im / o.re)
        n = o.re * o.re + o.im * o.im
        return CQ((self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = CQ._coerce(other)
        if o is None:
            return other / complex(self) if isinstance(other, (float, complex)) else NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return CQ(1) / (self ** -n)
        out = CQ(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __neg__(self):
        return CQ(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return CQ(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = CQ._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def __repr__(self):
        return f"CQ({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[CQ, complex]

I = CQ(0, 1)
ZERO = CQ(0)
ONE = CQ(1)


def is_exact(x) -> bool:
    return isinstance(x, (CQ, int, Fraction))


def is_zero(x, tol: float = TOL) -> bool:
    if isinstance(x, CQ):
        return not x.re and not x.im
    if isinstance(x, (int, Fraction)):
        return x == 0
    return abs(x) <= tol


def conj(x):
    return x.conjugate()


def re_part(x):
    if isinstance(x, CQ):
        return x.re
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return complex(x).real


def im_part(x):
    if isinstance(x, CQ):
        return x.im
    if isinstance(x, (int, Fraction)):
        return Fraction(0)
    return complex(x).imag


def abs2(x):
    """Squared modulus, a Fraction for exact input."""
    if isinstance(x, CQ):
        return x.abs2()
    if isinstance(x, (int, Fraction)):
        return Fraction(x) ** 2
    x = complex(x)
    return x.real * x.real + x.imag * x.imag


def scalars_close(a, b, tol: float = TOL) -> bool:
    return abs(complex(a) - complex(b)) <= tol


def exact_sqrt(q) -> Fraction:
    """Square root of a non-negative rational that is a perfect square."""
    q = Fraction(q)
    if q < 0:
        raise ValueError(f"negative radicand {q}")
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n != q.numerator or d * d != q.denominator:
        raise NotExactlyRepresentable(f"sqrt({q}) is irrational")
    return Fraction(n, d)


def real_sqrt(x):
    """Square root of a real non-negative scalar in the scalar's own mode."""
    if is_exact(x):
        if im_part(x):
            raise ValueError("real_sqrt of non-real value")
        return CQ(exact_sqrt(re_part(x)))
    x = complex(x)
    if abs(x.imag) > TOL or x.real < -TOL:
        raise ValueError(f"real_sqrt of {x}")
    return complex(math.sqrt(max(x.real, 0.0)), 0.0)


def modulus(x):
    """|x| in the scalar's mode (exact only for Pythagorean values)."""
    return real_sqrt(CQ(abs2(x)) if is_exact(x) else complex(abs2(x)))


def lift(x, mode: Mode | str = Mode.EXACT):
    """Convert a number (or literal string) into a scalar of the given mode."""
    mode = Mode(mode)
    if isinstance(x, str):
        x = parse_scalar(x, mode)
    if mode is Mode.EXACT:
        if isinstance(x, CQ):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return CQ(Fraction(x))
        raise NonRationalLiteral(f"{x!r} is not an exact rational value")
    return complex(x)


def to_complex(x) -> complex:
    return complex(x)


# parsing and formatting

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<ia>i)\s*(?:\*?\s*(?P<num_after>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?(?:\s*/\s*\d+)?)|\s*/\s*(?P<den_i>\d+))?
         |(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?(?:\s*/\s*\d+)?)\s*(?P<ib>\*?\s*i)?
        )\s*""",
    re.VERBOSE,
)


def _parse_real(text: str, mode: Mode):
    text = text.replace(" ", "")
    if "/" in text:
        p, q = text.split("/")
        if mode is Mode.EXACT and not (p.isdigit() and q.isdigit()):
            raise NonRationalLiteral(f"non-rational literal {text!r}")
        return Fraction(p) / Fraction(q) if mode is Mode.EXACT else float(p) / float(q)
    if text.isdigit():
        return Fraction(int(text)) if mode is Mode.EXACT else float(text)
    if mode is Mode.EXACT:
        raise NonRationalLiteral(f"non-rational literal {text!r}")
    return float(text)


def parse_scalar(text: str, mode: Mode | str = Mode.EXACT):
    """Parse ``"a/b+c/d i"`` style literals (``"3/10+2/5i"``, ``"i/32"``, ``"-1/4"``)."""
    mode = Mode(mode)
    s = text.strip()
    if not s:
        raise ValueError("empty scalar literal")
    re_acc = Fraction(0) if mode is Mode.EXACT else 0.0
    im_acc = Fraction(0) if mode is Mode.EXACT else 0.0
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ValueError(f"cannot parse scalar {text!r} at column {pos + 1}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("ia"):
            if m.group("num_after"):
                v = _parse_real(m.group("num_after"), mode)
            elif m.group("den_i"):
                v = _parse_real("1/" + m.group("den_i"), mode)
            else:
                v = Fraction(1) if mode is Mode.EXACT else 1.0
            im_acc += sign * v
        elif m.group("num"):
            v = _parse_real(m.group("num"), mode)
            if m.group("ib"):
                im_acc += sign * v
            else:
                re_acc += sign * v
        else:
            raise ValueError(f"cannot parse scalar {text!r}")
        pos = m.end()
    if mode is Mode.EXACT:
        return CQ(re_acc, im_acc)
    return complex(re_acc, im_acc)


def _fmt_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Reduced-fraction text for exact values, 17 significant digits otherwise."""
    if isinstance(x, (int, Fraction)):
        x = CQ(x)
    if isinstance(x, CQ):
        if not x.im:
            return _fmt_fraction(x.re)
        im = _fmt_fraction(abs(x.im))
        im_txt = "i" if abs(x.im) == 1 else f"{im} i"
        if not x.re:
            return ("-" if x.im < 0 else "") + im_txt
        return f"{_fmt_fraction(x.re)}{'-' if x.im < 0 else '+'}{im_txt}"
    x = complex(x)
    if x.imag == 0:
        return f"{x.real:.17g}"
    return f"{x.real:.17g}{'-' if x.imag < 0 else '+'}{abs(x.imag):.17g} i"
