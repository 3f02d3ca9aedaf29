from __future__ import annotations

from fractions import Fraction

import pytest

from nilstrom.anomaly import (
    InstantonModel,
    Verdict,
    alpha_sign_threshold,
    ccdlmz_hym,
    coeff_1122,
    evaluate_point,
    form_1122,
    instanton_trace,
    solve_alpha,
)
from nilstrom.errors import UnsupportedModel
from nilstrom.exterior import Form
from nilstrom.families import build_family_point
from nilstrom.reference import derived_xs, stated_h4
from nilstrom.scalar import CQ, Mode

Q = Fraction
T_REF = CQ(Q(3, 10), Q(2, 5))


def test_solve_alpha_verdicts():
    z = Form.zero(4)
    P = form_1122(CQ(3))
    assert solve_alpha(form_1122(CQ(6)), P, z).alpha == CQ(8)
    assert solve_alpha(z, z, z).verdict is Verdict.INDETERMINATE
    assert solve_alpha(form_1122(CQ(1)), z, z).verdict is Verdict.NO_SOLUTION
    other = Form.monomial("13~1~3", CQ(1))
    res = solve_alpha(form_1122(CQ(1)) + other, P, z)
    assert res.verdict is Verdict.NOT_PROPORTIONAL and res.sign is None


def test_solve_alpha_approx_tolerance():
    P = form_1122(3 + 0j)
    res = solve_alpha(form_1122(6 + 1e-14j), P, Form.zero(4))
    assert res.verdict is Verdict.PROPORTIONAL and abs(res.alpha - 8) < 1e-9


def test_coeff_1122_sign_convention():
    assert coeff_1122(Form.monomial("1~12~2", CQ(1))) == CQ(1)


def test_torus_indeterminate_and_iwasawa_no_solution():
    assert evaluate_point(build_family_point("torus")).alpha.verdict is Verdict.INDETERMINATE
    ev = evaluate_point(build_family_point("iwasawa"))
    assert ev.alpha.verdict is Verdict.NO_SOLUTION
    assert not ev.dT.is_zero() and ev.trace.is_zero()


@pytest.mark.parametrize("s", [Q(1, 8), Q(1, 4), Q(2, 5)])
def test_xs_pipeline_matches_derived_closed_forms(s):
    ref = derived_xs(s)
    ev = evaluate_point(build_family_point("xs", s=s))
    assert ev.balanced
    assert ev.dT_coeff == ref["dT_coeff"]
    assert ev.trace_coeff == ref["trace_coeff"]
    assert ev.alpha.alpha == ref["alpha_flat"]
    ev = evaluate_point(build_family_point("xs", s=s, r=2), InstantonModel.ccdlmz())
    assert ev.alpha.alpha == derived_xs(s, 2)["alpha_ccdlmz"]
    assert ev.instanton_coeff == ref["instanton_coeff"]


@pytest.mark.parametrize("r, key", [(1, "alpha_flat"), (Q(1, 2), "alpha_flat")])
def test_h4_flat_alpha(r, key):
    ev = evaluate_point(build_family_point("h4", t=T_REF, r=r))
    assert ev.alpha.alpha == stated_h4(CQ(Q(1, 2)), r)[key]
    assert ev.alpha.sign == 1


@pytest.mark.parametrize("r, expected", [(Q(1, 4), CQ(Q(-252, 37))), (1, CQ(Q(4032, 11183)))])
def test_h4_ccdlmz_alpha(r, expected):
    ev = evaluate_point(build_family_point("h4", t=T_REF, r=r), InstantonModel.ccdlmz())
    assert ev.alpha.alpha == expected


def test_h4_threshold_exact_and_approx():
    rep = alpha_sign_threshold(build_family_point("h4", t=T_REF))
    assert rep.critical_r4 == Q(81, 11264)
    assert rep.consistent and (rep.sign_below, rep.sign_above) == (-1, 1)
    approx = alpha_sign_threshold(build_family_point("h4", t=complex(T_REF), mode=Mode.APPROX))
    assert abs(approx.critical_r4 - 81 / 11264) < 1e-12
    assert approx.consistent and (approx.sign_below, approx.sign_above) == (-1, 1)


def test_xs_threshold():
    rep = alpha_sign_threshold(build_family_point("xs", s=Q(1, 4)))
    assert rep.critical_r4 == derived_xs(CQ(Q(1, 4)))["threshold_r4"]
    assert rep.consistent


def test_ccdlmz_is_hym():
    assert ccdlmz_hym(build_family_point("h4", t=T_REF))
    assert ccdlmz_hym(build_family_point("xs", s=Q(1, 4)))


def test_ccdlmz_unsupported_off_bundle_families():
    with pytest.raises(UnsupportedModel):
        instanton_trace(InstantonModel.ccdlmz(), build_family_point("torus"))
    with pytest.raises(UnsupportedModel):
        alpha_sign_threshold(build_family_point("iwasawa"))
    with pytest.raises(UnsupportedModel):
        alpha_sign_threshold(build_family_point("xs", s=Q(1, 4)), InstantonModel.flat())
    with pytest.raises(UnsupportedModel):
        evaluate_point(build_family_point("h4", t=0))


def test_instanton_model_parse():
    assert InstantonModel.parse("CCDLMZ") == InstantonModel.ccdlmz()
    with pytest.raises(ValueError):
        InstantonModel.parse("su2")
