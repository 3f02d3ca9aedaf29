"""The named complex structures and their holomorphic families.

``Xs``       h5 with ``d w3 = w^12 + w^1~1 - s^2 w^2~2``, ``0 < s < 1/2``.
``H5Disk``   the deformation ``w_t^1 = w^1 + t ~w^2``, ``w_t^2 = w^2 + t/(t - s^2) ~w^1``
             of ``Xs`` for ``|t| < s^2``, in the normalized coframe ``eta_t``.
``H4Disk``   the deformation ``eta_t^1 = eta^1 + t ~eta^1 - i t ~eta^2`` of the
             h4 structure ``d eta^3 = (i/2) eta^1~1 + (1/2) eta^1~2 + (1/2) eta^2~1``
             for ``|t| < 1``.
``Torus``    abelian.
``Iwasawa``  ``d w3 = w^12`` (complex parallelizable).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, NotExactlyRepresentable
from .exterior import Form, wedge_all
from .scalar import CQ, I, Mode, abs2, conj, im_part, is_exact, is_zero, lift, modulus, re_part
from .structures import DeformationParams, Structure, complex_change_matrix, deform, transform


class Family(str, enum.Enum):
    XS = "Xs"
    H5DISK = "H5Disk"
    H4DISK = "H4Disk"
    TORUS = "Torus"
    IWASAWA = "Iwasawa"

    @classmethod
    def parse(cls, name: str) -> "Family":
        key = name.replace("-", "").replace("_", "").lower()
        aliases = {"xs": cls.XS, "h5disk": cls.H5DISK, "h5": cls.H5DISK, "h4disk": cls.H4DISK,
                   "h4": cls.H4DISK, "torus": cls.TORUS, "iwasawa": cls.IWASAWA}
        if key not in aliases:
            raise ValueError(f"unknown family {name!r}")
        return aliases[key]


def _one(mode):
    return CQ(1) if Mode(mode) is Mode.EXACT else 1 + 0j


def _c(spec, coeff):
    return Form.monomial(spec, coeff)


def xs_structure(s) -> Structure:
    one = CQ(1) if is_exact(s) else 1 + 0j
    dw3 = _c("12", one) + _c("1~1", one) + _c("2~2", -(s * s))
    return Structure.from_complex([Form.zero(2), Form.zero(2), dw3], name="Xs", params={"s": s})


def torus_structure(mode=Mode.EXACT) -> Structure:
    return Structure.from_complex([Form.zero(2)] * 3, name="Torus")


def iwasawa_structure(mode=Mode.EXACT) -> Structure:
    return Structure.from_complex([Form.zero(2), Form.zero(2), _c("12", _one(mode))], name="Iwasawa")


def h4_base_structure(mode=Mode.EXACT) -> Structure:
    one = _one(mode)
    ii = I if Mode(mode) is Mode.EXACT else 1j
    half = one / 2
    dw3 = _c("1~1", ii * half) + _c("1~2", half) + _c("2~1", half)
    return Structure.from_complex([Form.zero(2), Form.zero(2), dw3], name="h4")


def check_s(s):
    if is_exact(s):
        ok = im_part(s) == 0 and 0 < re_part(s) < Fraction(1, 2)
    else:
        ok = abs(im_part(s)) < 1e-12 and 0 < re_part(s) < 0.5
    if not ok:
        raise DomainError(f"s must lie in (0, 1/2), got {s}")


def check_h5_disk(s, t):
    if not abs2(t) < abs2(s) ** 2:
        raise DomainError(f"t must satisfy |t| < s^2, got t = {t}")


def coefficients_h5(s, t):
    """Coefficients ``(a, b, c, D)`` of ``d w_t^3 = a w_t^12 + b w_t^1~1 + c w_t^2~2``.

    ``D = conj(b) c / |a|^2`` is the coefficient of ``eta^2~2`` in the
    normalized coframe; it is evaluated here from its closed form.
    """
    check_s(s)
    check_h5_disk(s, t)
    s2 = s * s
    tb = conj(t)
    at2 = abs2(t)
    at2 = CQ(at2) if is_exact(t) else at2
    den = abs2(t - at2 - s2)
    a = (t - s2) * (tb * (1 - tb) - s2) / den
    b = -s2 * (tb * (1 - t) - s2) / den
    c = abs2(t - s2) * (t * (1 - tb) - s2) / den
    D = -s2 * (t - at2 - s2) ** 2 / abs2(t - t * t - s2)
    return a, b, c, D


def condis_factor(s, t):
    """``t2 (t1^2 + t2^2 - t1 + s^2)``; vanishes exactly when D(t) is real."""
    t1, t2 = re_part(t), im_part(t)
    s2 = re_part(s * s)
    out = t2 * (t1 * t1 + t2 * t2 - t1 + s2)
    return CQ(out) if is_exact(t) else complex(out)


def h5_deformation(s, t) -> DeformationParams:
    z = CQ(0) if is_exact(t) else 0j
    return DeformationParams(((z, t, z), (t / (t - s * s), z, z), (z, z, z)), family="h5", s=s)


def h4_deformation(t) -> DeformationParams:
    z = CQ(0) if is_exact(t) else 0j
    ii = I if is_exact(t) else 1j
    return DeformationParams(((t, -ii * t, z), (z, z, z), (z, z, z)), family="h4")


def h5_disk_structure(s, t, normalized: bool = True):
    """Structure of ``X_t`` from scratch: deform ``Xs`` then rescale to ``eta_t``.

    Returns ``(structure, residual)``.
    """
    check_s(s)
    check_h5_disk(s, t)
    deformed, residual = deform(xs_structure(s), h5_deformation(s, t))
    if not normalized:
        return deformed, residual
    a, b, _, _ = coefficients_h5(s, t)
    k = abs2(a)
    k = CQ(k) / b if is_exact(t) else k / b
    z = CQ(0) if is_exact(t) else 0j
    L = [[a, z, z], [z, k, z], [z, z, k]]
    eta = transform(deformed, complex_change_matrix(L), name="H5Disk")
    return eta, residual


def h4_disk_structure(t):
    deformed, residual = deform(h4_base_structure(Mode.EXACT if is_exact(t) else Mode.APPROX), h4_deformation(t))
    return Structure(deformed.d, deformed.basis, "H4Disk", {"t": t}), residual


def resolve_abs_t(t, abs_t=None):
    """|t| with an exact consistency check when supplied."""
    if abs_t is None:
        return modulus(t)
    if is_exact(t) and is_exact(abs_t):
        if im_part(abs_t) != 0 or re_part(abs_t) < 0 or abs2(abs_t) != abs2(t):
            raise DomainError(f"|t| = {abs_t} is inconsistent with t = {t}")
        return abs_t
    if abs(abs(complex(t)) - complex(abs_t).real) > 1e-9:
        raise DomainError(f"|t| = {abs_t} is inconsistent with t = {t}")
    return complex(abs_t)


@dataclass
class FamilyPoint:
    family: Family
    structure: Structure
    params: dict
    metric: list | None = None
    psi: Form | None = None
    residual: object = None
    bundle_coframe: bool = False
    notes: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return self.structure.is_exact()

    def param(self, name):
        return self.params.get(name)


def _diag(*xs):
    z = xs[0] * 0
    return [[xs[i] if i == j else z for j in range(3)] for i in range(3)]


def build_family_point(family, s=None, t=None, r=None, abs_t=None, mode=Mode.EXACT, p2=None) -> FamilyPoint:
    """Construct a family point with the structure, reference metric and (3,0)-form.

    Reference metrics: ``diag(1, s^2, r^2)`` on ``Xs``; ``diag(1, |t|^2, r^2)``
    on ``H4Disk`` (``t != 0``); ``diag(1, p^2, r^2)`` on ``H5Disk`` with
    ``p^2 = s^2`` unless given; identity on ``Torus`` and ``Iwasawa``.
    """
    fam = Family.parse(family) if isinstance(family, str) else Family(family)
    mode = Mode(mode)
    lft = lambda v: None if v is None else lift(v, mode)  # noqa: E731
    s, t, r, abs_t = lft(s), lft(t), lft(r), lft(abs_t)
    one = _one(mode)
    if r is None:
        r = one
    if is_zero(r):
        raise DomainError("r must be nonzero")
    if im_part(r) != 0 and (is_exact(r) or abs(im_part(r)) > 1e-12):
        raise DomainError("r must be real")
    params = {"r": r}

    if fam is Family.XS:
        if s is None:
            raise DomainError("Xs needs s")
        check_s(s)
        st = xs_structure(s)
        params["s"] = s
        metric = _diag(one, s * s, r * r)
        psi = Form.monomial("123", s)
        return FamilyPoint(fam, st, params, metric, psi, one * 0, bundle_coframe=True)

    if fam is Family.H5DISK:
        if s is None or t is None:
            raise DomainError("H5Disk needs s and t")
        st, residual = h5_disk_structure(s, t)
        params.update(s=s, t=t)
        pp = s * s if p2 is None else lft(p2)
        metric = _diag(one, pp, r * r)
        a, b, _, _ = coefficients_h5(s, t)
        return FamilyPoint(fam, st, params, metric, None, residual, notes={"p2": pp})

    if fam is Family.H4DISK:
        if t is None:
            raise DomainError("H4Disk needs t")
        if not abs2(t) < 1:
            raise DomainError(f"t must satisfy |t| < 1, got {t}")
        st, residual = h4_disk_structure(t)
        params["t"] = t
        if is_zero(t):
            return FamilyPoint(fam, st, params, None, Form.monomial("123", one), residual)
        try:
            at = resolve_abs_t(t, abs_t)
        except NotExactlyRepresentable as exc:
            raise NotExactlyRepresentable(
                f"|t| is irrational for t = {t}; pass a Pythagorean t or use approx mode") from exc
        params["abs_t"] = at
        metric = _diag(one, at * at, r * r)
        psi = Form.monomial("123", r * at)
        return FamilyPoint(fam, st, params, metric, psi, residual, bundle_coframe=True)

    if fam is Family.TORUS:
        return FamilyPoint(fam, torus_structure(mode), params, _diag(one, one, one),
                           Form.monomial("123", one), one * 0)

    st = iwasawa_structure(mode)
    return FamilyPoint(fam, st, params, _diag(one, one, one), Form.monomial("123", one), one * 0)


def eta_expected_h5(s, t) -> Structure:
    """``d eta^3 = eta^12 + eta^1~1 + D(t) eta^2~2`` from the closed-form D."""
    _, _, _, D = coefficients_h5(s, t)
    one = CQ(1) if is_exact(t) else 1 + 0j
    dw3 = _c("12", one) + _c("1~1", one) + _c("2~2", D)
    return Structure.from_complex([Form.zero(2), Form.zero(2), dw3])


def h4_expected(t, mode=None) -> Structure:
    """``2(1-|t|^2) d eta^3 = 2 ~t eta^12 + i eta^1~1 + eta^1~2 + eta^2~1 - i|t|^2 eta^2~2``."""
    exact = is_exact(t)
    one = CQ(1) if exact else 1 + 0j
    ii = I if exact else 1j
    at2 = CQ(abs2(t)) if exact else abs2(t)
    k = one / (2 * (1 - at2))
    dw3 = (_c("12", 2 * conj(t) * k) + _c("1~1", ii * k) + _c("1~2", k) + _c("2~1", k)
           + _c("2~2", -ii * at2 * k))
    return Structure.from_complex([Form.zero(2), Form.zero(2), dw3])


def canonical_form(structure: Structure) -> Form:
    return wedge_all(*(structure.generator(i) for i in range(3)))
