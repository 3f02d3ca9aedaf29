"""Instanton models and the anomaly cancellation solver.

The anomaly equation ``dT = (alpha'/4) (tr R^R - tr F_A^F_A)`` is a linear
equation for the single scalar ``alpha'`` once both sides are known 4-forms.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .connections import CurvatureData, bismut_curvature, hym_check, trace_four_form
from .errors import UnsupportedModel
from .exterior import COMPLEX, Form, conj_form, wedge
from .families import Family, FamilyPoint, build_family_point
from .hermitian import SU3Frame, adapted_frame, is_balanced, make_metric, real_to_w, torsion_and_dT
from .scalar import CQ, I, Mode, exact_sqrt, re_part, scalars_close

# (1,0)(1,0)(0,1)(0,1) ordering of w^1 ^ ~w^1 ^ w^2 ^ ~w^2 in sorted storage
KEY_1122 = (0, 1, 3, 4)


def coeff_1122(a: Form):
    """Coefficient of ``w^1 ^ ~w^1 ^ w^2 ^ ~w^2`` in a complex 4-form."""
    if a.basis != COMPLEX:
        raise ValueError("expected a complex-coframe form")
    c = a.terms.get(KEY_1122)
    if c is None:
        return CQ(0) if a.is_exact() else 0j
    return -c


def form_1122(c) -> Form:
    """``c w^1 ^ ~w^1 ^ w^2 ^ ~w^2``."""
    return Form(4, {KEY_1122: -c}, COMPLEX)


class InstantonKind(str, enum.Enum):
    FLAT = "flat"
    CCDLMZ = "ccdlmz"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class InstantonModel:
    kind: InstantonKind
    trace: Form | None = None
    hym_asserted: bool = False

    @classmethod
    def flat(cls) -> "InstantonModel":
        return cls(InstantonKind.FLAT, None, True)

    @classmethod
    def ccdlmz(cls) -> "InstantonModel":
        return cls(InstantonKind.CCDLMZ, None, True)

    @classmethod
    def explicit(cls, trace: Form, hym: bool = False) -> "InstantonModel":
        return cls(InstantonKind.EXPLICIT, trace, hym)

    @classmethod
    def parse(cls, name: str) -> "InstantonModel":
        name = name.lower()
        if name == "flat":
            return cls.flat()
        if name == "ccdlmz":
            return cls.ccdlmz()
        raise ValueError(f"unknown instanton model {name!r}")


def bundle_coframe(point: FamilyPoint):
    """``(dz1, dz2)`` of the torus-bundle base, in the structure's coframe.

    ``dz1 = w^1`` and ``dz2 = s w^2`` on ``Xs``; ``dz1 = eta^1`` and
    ``dz2 = |t| eta^2`` on ``H4Disk``.
    """
    if not point.bundle_coframe:
        raise UnsupportedModel(f"no torus-bundle coframe declared for {point.family.value}")
    if point.family is Family.XS:
        k = point.params["s"]
    elif point.family is Family.H4DISK:
        k = point.params["abs_t"]
    else:  # pragma: no cover - bundle_coframe is only set on the two families above
        raise UnsupportedModel(point.family.value)
    one = CQ(1) if point.exact else 1 + 0j
    return Form.generator(0, COMPLEX, one), Form.generator(1, COMPLEX, k)


def instanton_trace(model: InstantonModel, point: FamilyPoint) -> Form:
    """``tr F_A ^ F_A`` as a 4-form in the structure's complex coframe."""
    exact = point.exact
    if model.kind is InstantonKind.FLAT:
        return Form.zero(4, COMPLEX)
    if model.kind is InstantonKind.EXPLICIT:
        return model.trace
    dz1, dz2 = bundle_coframe(point)
    half = CQ(1) / 2 if exact else 0.5 + 0j
    return wedge(wedge(wedge(dz1, dz2), conj_form(dz1)), conj_form(dz2)) * (-half)


def ccdlmz_field_strength(point: FamilyPoint, f, phase=None) -> Form:
    """Value of the abelian field strength at a point where the function equals ``f``.

    ``F_A = i f dz1^~dz1 - i f dz2^~dz2 + e^{ig} g dz1^~dz2 - e^{-ig} g dz2^~dz1``
    with ``g = sqrt(1/4 - f^2)``; exact mode needs ``g`` rational
    (e.g. ``f = 3/10``, ``g = 2/5``).  ``phase`` is ``e^{ig}`` (default 1).
    """
    dz1, dz2 = bundle_coframe(point)
    exact = point.exact
    if exact:
        f = CQ(f) if not isinstance(f, CQ) else f
        g = CQ(exact_sqrt(Fraction(1, 4) - re_part(f) ** 2))
        ii = I
        ph = CQ(1) if phase is None else phase
    else:
        f = complex(f)
        g = complex(math.sqrt(0.25 - f.real ** 2))
        ii = 1j
        ph = 1 + 0j if phase is None else complex(phase)
    b1, b2 = conj_form(dz1), conj_form(dz2)
    return (wedge(dz1, b1) * (ii * f) - wedge(dz2, b2) * (ii * f)
            + wedge(dz1, b2) * (ph * g) - wedge(dz2, b1) * (ph.conjugate() * g))


class Verdict(str, enum.Enum):
    PROPORTIONAL = "Proportional"
    INDETERMINATE = "Indeterminate"
    NO_SOLUTION = "NoSolution"
    NOT_PROPORTIONAL = "NotProportional"


@dataclass
class AlphaResult:
    verdict: Verdict
    alpha: object = None
    residual: Form | None = None
    P: Form | None = None

    @property
    def sign(self) -> int | None:
        if self.verdict is not Verdict.PROPORTIONAL:
            return None
        a = re_part(self.alpha)
        return (a > 0) - (a < 0)


def _is_zero_form(a: Form, tol: float = 1e-10) -> bool:
    return a.is_zero() if a.is_exact() else all(abs(complex(c)) <= tol for _, c in a.items())


def solve_alpha(dT: Form, tr_bismut: Form, tr_instanton: Form, rtol: float = 1e-9) -> AlphaResult:
    """Solve ``dT = (alpha'/4) P`` with ``P = tr_bismut - tr_instanton``.

    Exact inputs are decided exactly; approximate inputs need the
    componentwise ratios to agree within relative ``rtol``.
    """
    if not (dT.basis == tr_bismut.basis == tr_instanton.basis):
        raise ValueError("all 4-forms must share a coframe")
    P = tr_bismut - tr_instanton
    exact = dT.is_exact() and P.is_exact()
    scale = max([abs(complex(c)) for _, c in dT.items()] + [abs(complex(c)) for _, c in P.items()] + [1.0])
    tol = 0.0 if exact else rtol * scale
    if _is_zero_form(P, tol):
        if _is_zero_form(dT, tol):
            return AlphaResult(Verdict.INDETERMINATE, P=P)
        return AlphaResult(Verdict.NO_SOLUTION, residual=dT, P=P)
    key, pc = max(P.items(), key=lambda kv: abs(complex(kv[1])))
    quarter = dT.terms.get(key, CQ(0) if exact else 0j) / pc
    residual = dT - P * quarter
    if _is_zero_form(residual, tol):
        alpha = quarter * 4
        if not exact:
            alpha = complex(alpha)
        return AlphaResult(Verdict.PROPORTIONAL, alpha, residual, P)
    pp = sum(abs(complex(c)) ** 2 for _, c in P.items())
    pd = sum((complex(P.terms[k]).conjugate() * complex(c)) for k, c in dT.items() if k in P.terms)
    alpha_hat = 4 * pd.real / pp
    return AlphaResult(Verdict.NOT_PROPORTIONAL, alpha_hat, dT - P * (alpha_hat / 4), P)


@dataclass
class PointEvaluation:
    """All quantities of the anomaly pipeline at one family point."""

    point: FamilyPoint
    frame: SU3Frame
    F: Form
    T: Form
    dT: Form
    curvature: CurvatureData
    trace: Form
    trace_real: Form
    instanton: Form
    alpha: AlphaResult
    balanced: bool
    extras: dict = field(default_factory=dict)

    @property
    def dT_coeff(self):
        return coeff_1122(self.dT)

    @property
    def trace_coeff(self):
        return coeff_1122(self.trace)

    @property
    def instanton_coeff(self):
        return coeff_1122(self.instanton)


def evaluate_point(point: FamilyPoint, model: InstantonModel | None = None) -> PointEvaluation:
    """Metric, frame, torsion, Bismut curvature, traces and ``alpha'`` at ``point``."""
    model = model or InstantonModel.flat()
    if point.metric is None:
        raise UnsupportedModel(f"{point.family.value} at these parameters has no reference metric")
    metric = make_metric(point.metric)
    frame = adapted_frame(point.structure, metric)
    T, dT = torsion_and_dT(point.structure, metric.F)
    _, _, curv = bismut_curvature(frame.real_structure, frame.to_real(T))
    tr_real = trace_four_form(curv)
    tr = real_to_w(frame, tr_real)
    inst = instanton_trace(model, point)
    result = solve_alpha(dT, tr, inst)
    return PointEvaluation(point, frame, metric.F, T, dT, curv, tr, tr_real, inst, result,
                           is_balanced(point.structure, metric.F))


@dataclass
class ThresholdReport:
    """Sign change of ``alpha'(r)`` for the CCDLMZ model along ``r``.

    ``dT`` scales as ``r^2`` and the Bismut trace as ``r^4`` while the
    instanton trace does not depend on ``r``; ``critical_r4`` is the value of
    ``r^4`` where the bracket ``P`` vanishes.
    """

    critical_r4: object
    sign_below: int | None
    sign_above: int | None
    samples: list
    at_threshold: Verdict
    scaling_ok: bool

    @property
    def consistent(self) -> bool:
        below = [a.sign for r, r4, a in self.samples if r4 < self.critical_r4]
        above = [a.sign for r, r4, a in self.samples if r4 > self.critical_r4]
        return (self.scaling_ok and self.at_threshold is Verdict.NO_SOLUTION
                and all(x == self.sign_below for x in below)
                and all(x == self.sign_above for x in above))


def _point_with_r(point: FamilyPoint, r) -> FamilyPoint:
    p = point.params
    mode = Mode.EXACT if point.exact else Mode.APPROX
    return build_family_point(point.family, s=p.get("s"), t=p.get("t"), r=r, abs_t=p.get("abs_t"), mode=mode)


def _straddle(crit: Fraction, rel: Fraction = Fraction(1, 1000)):
    root = float(crit) ** 0.25
    lo = Fraction(root).limit_denominator(10 ** 6) * (1 - rel)
    hi = Fraction(root).limit_denominator(10 ** 6) * (1 + rel)
    lo, hi = lo.limit_denominator(10 ** 8), hi.limit_denominator(10 ** 8)
    while lo ** 4 >= crit:
        lo *= 1 - rel
    while hi ** 4 <= crit:
        hi *= 1 + rel
    return lo, hi


def alpha_sign_threshold(point: FamilyPoint, model: InstantonModel | None = None) -> ThresholdReport:
    """Critical ``r^4`` separating ``alpha' > 0`` and ``alpha' < 0``.

    Verifies the ``r^2``/``r^4`` scaling exactly at ``r = 1, 2`` and evaluates
    the full pipeline at rational radii straddling the threshold.
    """
    model = model or InstantonModel.ccdlmz()
    if model.kind is not InstantonKind.CCDLMZ:
        raise UnsupportedModel("thresholds are defined for the CCDLMZ instanton")
    if not point.bundle_coframe:
        raise UnsupportedModel(f"no torus-bundle coframe declared for {point.family.value}")
    e1 = evaluate_point(_point_with_r(point, 1), model)
    e2 = evaluate_point(_point_with_r(point, 2), model)
    a, q, c = e1.dT_coeff, e1.trace_coeff, e1.instanton_coeff
    if point.exact:
        scaling_ok = e2.dT_coeff == a * 4 and e2.trace_coeff == q * 16 and e2.instanton_coeff == c
    else:
        scaling_ok = all(scalars_close(x, y, 1e-9 * max(1.0, abs(complex(y))))
                         for x, y in ((e2.dT_coeff, a * 4), (e2.trace_coeff, q * 16), (e2.instanton_coeff, c)))
    crit = c / q
    crit_f = re_part(crit) if point.exact else float(re_part(crit))
    samples = []
    if crit_f > 0:
        lo, hi = _straddle(Fraction(crit_f))
        radii = [lo / 2, lo, hi, hi * 2]
    else:
        radii = [Fraction(1, 2), Fraction(1), Fraction(2)]
    for r in radii:
        ev = evaluate_point(_point_with_r(point, r), model)
        samples.append((r, r ** 4, ev.alpha))
    sign_below = next((al.sign for r, r4, al in samples if r4 < crit_f), None)
    sign_above = next((al.sign for r, r4, al in samples if r4 > crit_f), None)
    # dT(r) = r^2 dT(1) is nonzero for every r != 0, so only P matters at the threshold
    at = solve_alpha(e1.dT, e1.trace * crit, e1.instanton).verdict
    return ThresholdReport(crit_f, sign_below, sign_above, samples, at, scaling_ok)


def ccdlmz_hym(point: FamilyPoint, f=Fraction(3, 10)) -> bool:
    """HYM check of the CCDLMZ field strength at a point where the function equals ``f``."""
    metric = make_metric(point.metric)
    Fa = ccdlmz_field_strength(point, f)
    return hym_check([Fa], metric.F)
