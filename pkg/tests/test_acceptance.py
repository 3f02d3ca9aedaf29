"""Acceptance criteria 1-10, one test per criterion.

Every criterion collects named sub-checks, prints one PASS/FAIL line and
asserts that all sub-checks hold.  Expected values are the quoted closed forms
from :mod:`nilstrom.reference` (``stated_*``), at their quoted tolerances:
exact criteria compare reduced fractions for equality.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

import conftest
from nilstrom.anomaly import InstantonModel, _straddle, evaluate_point
from nilstrom.cohomology import bott_chern_dims, dolbeault_dims
from nilstrom.connections import bismut_curvature
from nilstrom.exterior import Form, j_act, wedge
from nilstrom.families import (
    build_family_point,
    condis_factor,
    h4_disk_structure,
    h5_disk_structure,
    iwasawa_structure,
    torus_structure,
    xs_structure,
)
from nilstrom.feasibility import FeasibilityKind, balanced_feasible, normal_form_balanced_h5, square_root_22
from nilstrom.hermitian import adapted_frame, is_balanced, make_metric, torsion_and_dT
from nilstrom.reference import h4_curvature, stated_h4, stated_xs, xs_curvature
from nilstrom.report import H4_T, H5_T, XS_S, run_scenario
from nilstrom.scalar import CQ, im_part, parse_scalar, re_part
from nilstrom.structures import check_structure
from oracles import trace_rotation_defect
from strategies import PYTHAGOREAN_T, forms, h5_t, hermitian_pd

Q = Fraction
XS = [CQ(Q(s)) for s in XS_S]
T_REF, ABS_REF = CQ(Q(3, 10), Q(2, 5)), CQ(Q(1, 2))
H5S = CQ(Q(1, 4))
E1234 = (0, 1, 2, 3)


class Criterion:
    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.failed: list = []

    def check(self, label: str, ok) -> None:
        if not ok:
            self.failed.append(label)

    def finish(self) -> None:
        status = "PASS" if not self.failed else "FAIL"
        line = f"{status}  criterion {self.number:>2}: {self.title}"
        if self.failed:
            line += f"  [failed: {', '.join(self.failed)}]"
        conftest.ACCEPTANCE_LINES[self.number] = line
        print(line)
        assert not self.failed, line


def _holds(prop) -> bool:
    """Run a hypothesis property; ``False`` if it finds a counterexample."""
    try:
        prop()
    except Exception:  # noqa: BLE001 - any falsifying example fails the criterion
        return False
    return True


def _ev(family, model=None, **kw):
    return evaluate_point(build_family_point(family, **kw), model)


def test_criterion_01_structure_validity():
    c = Criterion(1, "structure validity (d^2 = 0, integrability)")
    samples = {f"Xs s={s}": (xs_structure(s), 0) for s in XS}
    for t in H5_T:
        samples[f"H5Disk t={t}"] = h5_disk_structure(H5S, parse_scalar(t))
    for t in PYTHAGOREAN_T:
        samples[f"H4Disk t={t}"] = h4_disk_structure(t)
    samples["Torus"] = (torus_structure(), 0)
    samples["Iwasawa"] = (iwasawa_structure(), 0)
    for label, (structure, residual) in samples.items():
        diag = check_structure(structure)
        c.check(label, diag.jacobi_ok and diag.integrable and residual == 0)
    c.finish()


def test_criterion_02_balanced_metrics():
    c = Criterion(2, "balanced reference metrics")
    for s in XS:
        pt = build_family_point("xs", s=s)
        c.check(f"F_s s={s}", is_balanced(pt.structure, make_metric(pt.metric).F))
    for r in (1, Q(1, 4)):
        pt = build_family_point("h4", t=T_REF, r=r)
        c.check(f"F_t,r r={r}", is_balanced(pt.structure, make_metric(pt.metric).F))
    c.finish()


def test_criterion_03_torsion_differential():
    c = Criterion(3, "torsion differential dT")
    for s in XS:
        c.check(f"dT_s s={s}", _ev("xs", s=s).dT_coeff == stated_xs(s)["dT_coeff"])
    c.check("dT_s = 288 at s=1/4", _ev("xs", s=Q(1, 4)).dT_coeff == CQ(288))
    h4 = _ev("h4", t=T_REF, r=1).dT_coeff
    c.check("dT_t,r |t|=1/2 r=1", h4 == stated_h4(ABS_REF)["dT_coeff"] == CQ(Q(14, 9)))
    for r in (Q(1, 2), 2):
        c.check(f"dT_s,r s=1/4 r={r}", _ev("xs", s=Q(1, 4), r=r).dT_coeff == stated_xs(H5S, r)["dT_coeff"])
    c.finish()


def _curvature_matches(ev, expected: dict) -> list:
    return [f"Omega^{i}_{j}" for (i, j), form in expected.items() if ev.curvature.entry(i, j) != form]


def test_criterion_04_curvature():
    c = Criterion(4, "Bismut curvature forms")
    ev = _ev("xs", s=Q(1, 4))
    bad = _curvature_matches(ev, xs_curvature(H5S))
    c.check(f"Xs list {bad}", not bad)
    c.check("Omega^1_3 = -16(e13+e24)",
            ev.curvature.entry(1, 3) == Form.monomial("13", CQ(-16), "real") + Form.monomial("24", CQ(-16), "real"))
    bad = _curvature_matches(_ev("h4", t=T_REF, r=1), h4_curvature(T_REF, ABS_REF, CQ(1)))
    c.check(f"H4Disk list and relations {bad}", not bad)
    c.finish()


def test_criterion_05_traces():
    c = Criterion(5, "trace of Bismut curvature")
    ev = _ev("xs", s=Q(1, 4))
    c.check("Xs e1234 = -81920", ev.trace_real.terms.get(E1234) == CQ(-81920))
    c.check("Xs w1122 = 1280", ev.trace_coeff == CQ(1280))
    ev = _ev("h4", t=T_REF, r=1)
    c.check("H4Disk e1234 = -22528/81", ev.trace_real.terms.get(E1234) == CQ(Q(-22528, 81)))
    for r in (Q(1, 2), 2):
        got = _ev("xs", s=Q(1, 4), r=r).trace_coeff
        c.check(f"Xs F_s,r r={r}", got == stated_xs(H5S, r)["trace_coeff"])
    c.finish()


def test_criterion_06_slope_parameters():
    c = Criterion(6, "slope parameter alpha'")
    c.check("Xs flat = 9/40", _ev("xs", s=Q(1, 4)).alpha.alpha == CQ(Q(9, 40)))
    c.check("H4Disk flat r=1 = 63/176", _ev("h4", t=T_REF, r=1).alpha.alpha == CQ(Q(63, 176)))
    c.check("H4Disk CCDLMZ r=1/4 = -252/37",
            _ev("h4", InstantonModel.ccdlmz(), t=T_REF, r=Q(1, 4)).alpha.alpha == CQ(Q(-252, 37)))
    ccd = InstantonModel.ccdlmz()
    for r in (1, 2):
        got = _ev("xs", ccd, s=Q(1, 4), r=r).alpha.alpha
        c.check(f"Xs CCDLMZ formula r={r}", got == stated_xs(H5S, r)["alpha_ccdlmz"])
    crit = re_part(stated_xs(H5S)["threshold_r4"])
    lo, hi = _straddle(crit)
    below = _ev("xs", ccd, s=Q(1, 4), r=lo).alpha.sign
    above = _ev("xs", ccd, s=Q(1, 4), r=hi).alpha.sign
    c.check("Xs CCDLMZ sign flips at r^4 = s^6/(8(4s^2+1))", below is not None and above is not None
            and below == -above)
    c.check("H4Disk CCDLMZ sign flips at stated threshold",
            run_scenario("h4-threshold").match)
    c.finish()


def test_criterion_07_non_openness():
    c = Criterion(7, "h5 disk: balanced exactly for real t")
    samples = [parse_scalar(t) for t in H5_T]
    samples += [CQ(Q(k, 80), Q(m, 80)) for k in range(-4, 5) for m in range(-4, 5) if k * k + m * m < 25]
    for t in samples:
        nf = normal_form_balanced_h5(H5S, t)
        real = im_part(t) == 0
        c.check(f"t={t} verdict", nf.feasible == real)
        c.check(f"t={t} condis", (condis_factor(H5S, t) == 0) == (im_part(nf.D) == 0))
        if real:
            c.check(f"t={t} p^2 = s^2", nf.p2 == H5S * H5S)
    c.finish()


def test_criterion_08_non_closedness():
    c = Criterion(8, "h4 disk: no balanced metric at t = 0")
    v = balanced_feasible(h4_disk_structure(CQ(0))[0])
    c.check("t=0 infeasible", v.kind is FeasibilityKind.INFEASIBLE and v.margin <= 0)
    for t in H4_T:
        structure, _ = h4_disk_structure(parse_scalar(t))
        v = balanced_feasible(structure)
        ok = v.kind is FeasibilityKind.FEASIBLE
        if ok:
            # re-verify independently of the solver: positivity and closedness of the witness
            metric = square_root_22(v.phi, allow_rescale=True)
            ok = is_balanced(structure, metric.F) and structure.dee(v.phi).is_zero()
        c.check(f"t={t} witness", ok)
    c.finish()


def test_criterion_09_cohomology():
    c = Criterion(9, "Bott-Chern and Dolbeault numbers")
    c.check("torus h22_BC = 9", bott_chern_dims(torus_structure())[2, 2] == 9)
    h22 = {bott_chern_dims(xs_structure(s))[2, 2] for s in XS}
    c.check("Xs h22_BC >= 7 and constant", len(h22) == 1 and min(h22) >= 7)
    c.check("Xs h01 = 2", all(dolbeault_dims(xs_structure(s))[0, 1] == 2 for s in XS))
    c.finish()


XS_Q = xs_structure(H5S)
H4_Q = h4_disk_structure(T_REF)[0]


@settings(max_examples=15)
@given(forms(max_terms=3), forms(max_terms=3))
def _leibniz(a, b):
    if a.degree + b.degree > 5:
        return
    for structure in (XS_Q, H4_Q):
        lhs = structure.dee(wedge(a, b))
        rhs = wedge(structure.dee(a), b) + wedge(a, structure.dee(b)) * CQ((-1) ** a.degree)
        assert lhs == rhs


@settings(max_examples=15)
@given(forms(max_terms=3), forms(max_terms=3))
def _graded(a, b):
    assert wedge(a, b) == wedge(b, a) * CQ((-1) ** (a.degree * b.degree))


@settings(max_examples=15)
@given(forms(max_terms=4))
def _j_squared(a):
    assert j_act(j_act(a)) == a * CQ((-1) ** a.degree)


@settings(max_examples=6)
@given(hermitian_pd())
def _frame_properties(H):
    metric = make_metric(H)
    frame = adapted_frame(XS_Q, metric)
    T, _ = torsion_and_dT(XS_Q, metric.F)
    T_real = frame.to_real(T)
    assert all(c.imag == 0 for _, c in T_real.items())
    lc, bc, curv = bismut_curvature(frame.real_structure, T_real)
    for i in range(6):
        for j in range(6):
            assert lc.sigma[i][j] == -lc.sigma[j][i] and bc.sigma[i][j] == -bc.sigma[j][i]
            assert curv.omega[i][j] == -curv.omega[j][i]
            for k in range(6):
                assert lc.torsion[i][j][k] == 0
    from nilstrom.connections import three_form_tensor
    Tt = three_form_tensor(T_real)
    assert all(bc.torsion[i][j][k] == Tt[i][j][k] for i in range(6) for j in range(6) for k in range(6))


@settings(max_examples=6)
@given(st.integers(0, 2 ** 31 - 1))
def _rotation(seed):
    pt = build_family_point("h4", t=T_REF)
    metric = make_metric(pt.metric)
    frame = adapted_frame(pt.structure, metric)
    T, _ = torsion_and_dT(pt.structure, metric.F)
    q, _ = np.linalg.qr(np.random.default_rng(seed).normal(size=(6, 6)))
    assert trace_rotation_defect(frame.real_structure, frame.to_real(T), q) <= 1e-9


@settings(max_examples=15)
@given(hermitian_pd())
def _round_trip(H):
    F = make_metric(H).F
    assert square_root_22(wedge(F, F)).matrix() == make_metric(H).matrix()


@settings(max_examples=10)
@given(h5_t())
def _h5_cross(t):
    exact = evaluate_point(build_family_point("h5", s=H5S, t=t))
    approx = evaluate_point(build_family_point("h5", s=H5S, t=complex(t), mode="approx"))
    for x, y in ((exact.dT_coeff, approx.dT_coeff), (exact.trace_coeff, approx.trace_coeff)):
        assert abs(complex(x) - complex(y)) <= 1e-10 * max(1.0, abs(complex(x)))


def test_criterion_10_property_suites():
    c = Criterion(10, "property suites")
    c.check("Leibniz", _holds(_leibniz))
    c.check("graded commutativity", _holds(_graded))
    c.check("j_act^2 = (-1)^deg", _holds(_j_squared))
    c.check("T real, antisymmetry, torsion", _holds(_frame_properties))
    c.check("trace invariant under rotations", _holds(_rotation))
    c.check("F <-> F^2 round trip", _holds(_round_trip))
    c.check("exact vs approx on h5 points", _holds(_h5_cross))
    c.check("exact vs approx at scenario points", run_scenario("cross-validation").match)
    c.finish()
