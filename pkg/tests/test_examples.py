"""Worked examples with hand-checkable values, one per documented operation."""

from __future__ import annotations

from fractions import Fraction

import pytest

from nilstrom import linalg
from nilstrom.anomaly import Verdict, alpha_sign_threshold, evaluate_point
from nilstrom.connections import BracketTable, bismut, bismut_curvature, hym_check, levi_civita
from nilstrom.errors import NoComplexStructure
from nilstrom.exterior import COMPLEX, PLAIN, REAL, Form, bidegree_monomials, bidegree_split, j_act, to_complex, wedge
from nilstrom.families import (
    build_family_point,
    coefficients_h5,
    condis_factor,
    h4_disk_structure,
    h5_disk_structure,
    torus_structure,
    xs_structure,
)
from nilstrom.feasibility import (
    FeasibilityKind,
    _real_vector,
    balanced_feasible,
    closed_22_space,
    normal_form_balanced_h5,
    positivity_matrix,
    square_root_22,
)
from nilstrom.hermitian import adapted_frame, lee_form, make_metric, psi_norm_and_conformal_check, torsion_and_dT
from nilstrom.scalar import CQ, I
from nilstrom.structures import DeformationParams, deform, parse_structure

Q = Fraction
S = CQ(Q(1, 4))
ONE = CQ(1)


def c(spec, coeff=ONE, basis=COMPLEX):
    return Form.monomial(spec, CQ(coeff) if not isinstance(coeff, CQ) else coeff, basis)


def r(spec, coeff=1):
    return c(spec, coeff, REAL)


def diag(*xs):
    z = CQ(0)
    return [[CQ(xs[i]) if i == j else z for j in range(3)] for i in range(3)]


def test_wedge_examples():
    assert wedge(r("1"), r("1")).is_zero()
    x = r("13") + r("24")
    assert wedge(x, x) == r("1234", -2)
    assert wedge(c("1~1"), c("2~2")) == c("1~12~2")


def test_dee_examples():
    xs = xs_structure(S)
    assert xs.dee(c("3")) == c("12") + c("1~1") - c("2~2", Q(1, 16))
    assert xs.dee(c("1")).is_zero()
    assert xs.dee(c("13")) == c("12~2", Q(1, 16))


def test_h4_real_equations_at_half():
    pt = build_family_point("h4", t=CQ(Q(1, 2)))
    frame = adapted_frame(pt.structure, make_metric(pt.metric))
    k = Q(4, 3)
    assert frame.real_structure.d[4] == r("12", k) - r("34", k) + r("13", k) - r("24", k)


def test_bidegree_split_examples():
    assert bidegree_split(c("1")) == [(1, 0, c("1"))]
    split = bidegree_split(xs_structure(S).dee(c("3")))
    assert split == [(2, 0, c("12")), (1, 1, c("1~1") - c("2~2", Q(1, 16)))]
    assert bidegree_split(to_complex(r("12"))) == [(1, 1, c("1~1", I / 2))]
    with pytest.raises(NoComplexStructure):
        bidegree_split(Form.monomial("12", ONE, PLAIN))


def test_j_act_examples():
    assert j_act(c("1~2")) == c("1~2")
    assert j_act(c("123")) == c("123", -I)


def test_torsion_of_xs():
    metric = make_metric(diag(1, Q(1, 16), 1))
    T, _ = torsion_and_dT(xs_structure(S), metric.F)
    s2 = Q(1, 16)
    expected = (c("12~3") - c("1~1~3") + c("2~2~3", s2) + c("1~13") - c("2~23", s2) + c("3~1~2")) * CQ(Q(-1, 2))
    assert T == expected
    T0, dT0 = torsion_and_dT(torus_structure(), make_metric(diag(1, 1, 1)).F)
    assert T0.is_zero() and dT0.is_zero()


def test_dsl_small_examples():
    assert parse_structure("d w1 = 0; d w2 = 0; d w3 = 0") == torus_structure()
    assert parse_structure("d w3 = w1^w1") == torus_structure()


def test_zero_deformation_is_identity():
    z = CQ(0)
    new, residual = deform(xs_structure(S), DeformationParams(((z,) * 3,) * 3))
    assert new == xs_structure(S) and residual == 0


def test_family_base_points():
    eta, _ = h5_disk_structure(S, CQ(0))
    assert eta.d[2] == c("12") + c("1~1") - c("2~2", Q(1, 16))
    h4, _ = h4_disk_structure(CQ(0))
    assert h4.d[2] * CQ(2) == c("1~1", I) + c("1~2") + c("2~1")
    assert coefficients_h5(S, CQ(0)) == (ONE, ONE, -S * S, -S * S)
    assert condis_factor(S, CQ(0, Q(1, 32))) == CQ(Q(65, 32768))
    assert condis_factor(S, CQ(Q(1, 50))) == 0


def test_adapted_frames():
    frame = adapted_frame(xs_structure(S), make_metric(diag(1, Q(1, 16), 1)))
    assert [frame.L[k][k] for k in range(3)] == [ONE, S, ONE]
    pt = build_family_point("h4", t=CQ(Q(3, 10), Q(2, 5)), r=Q(1, 4))
    frame = adapted_frame(pt.structure, make_metric(pt.metric))
    assert [frame.L[k][k] for k in range(3)] == [ONE, CQ(Q(1, 2)), CQ(Q(1, 4))]


def test_lee_form_examples():
    assert lee_form(xs_structure(S), make_metric(diag(1, Q(1, 16), 1)).F).is_zero()
    assert lee_form(torus_structure(), make_metric(diag(2, 3, 5)).F).is_zero()
    assert not lee_form(h4_disk_structure(CQ(0))[0], make_metric(diag(1, 1, 1)).F).is_zero()


@pytest.mark.parametrize("family, kw", [("xs", dict(s=Q(1, 4))), ("h4", dict(t=CQ(Q(3, 10), Q(2, 5)), r=Q(1, 4)))])
def test_psi_has_unit_norm(family, kw):
    pt = build_family_point(family, **kw)
    frame = adapted_frame(pt.structure, make_metric(pt.metric))
    assert psi_norm_and_conformal_check(pt.structure, frame, pt.psi) == (ONE, True)


def test_flat_torus_connections():
    pt = build_family_point("torus")
    frame = adapted_frame(pt.structure, make_metric(pt.metric))
    lc, bc, curv = bismut_curvature(frame.real_structure, Form.zero(3, REAL))
    assert all(f.is_zero() for row in lc.sigma for f in row)
    assert bc.gamma == lc.gamma
    assert all(f.is_zero() for row in curv.omega for f in row)


def test_bismut_with_zero_torsion_is_levi_civita():
    frame = adapted_frame(xs_structure(S), make_metric(diag(1, Q(1, 16), 1)))
    lc = levi_civita(BracketTable.from_structure(frame.real_structure))
    assert bismut(lc, Form.zero(3, REAL)).gamma == lc.gamma


def test_h4_scaled_curvature_entry():
    ev = evaluate_point(build_family_point("h4", t=CQ(Q(3, 10), Q(2, 5))))
    rho = CQ(Q(9, 64))
    assert ev.curvature.entry(1, 3) * rho == (r("13") + r("24")) * CQ(Q(-1, 4)) + r("56")


def test_hym_examples():
    F = make_metric(diag(1, 1, 1)).F
    assert hym_check([Form.zero(2)], F)
    assert not hym_check([F], F)
    assert not hym_check([c("12") + c("~1~2")], F)


@pytest.mark.parametrize("family, kw", [("xs", dict(s=Q(1, 4))), ("h4", dict(t=CQ(Q(3, 10), Q(2, 5))))])
def test_threshold_is_no_solution(family, kw):
    assert alpha_sign_threshold(build_family_point(family, **kw)).at_threshold is Verdict.NO_SOLUTION


def test_closed_cone_contains_F_s_squared():
    space = closed_22_space(xs_structure(S))
    F = make_metric(diag(1, Q(1, 16), 1)).F
    keys = bidegree_monomials(2, 2)
    rows = [_real_vector(b, keys) for b in space.basis]
    assert linalg.rank(rows + [_real_vector(wedge(F, F), keys)]) == linalg.rank(rows)


def test_positivity_matrix_examples():
    Fr = r("12") + r("34") + r("56")
    assert positivity_matrix(wedge(to_complex(Fr), to_complex(Fr))) == diag(4, 4, 4)
    assert positivity_matrix(Form.zero(4)) == diag(0, 0, 0)
    F = make_metric(diag(1, 4, 9)).F
    assert positivity_matrix(wedge(F, F)) == diag(144, 36, 16)


def test_square_root_examples():
    F = make_metric(diag(1, 1, 1)).F
    assert square_root_22(wedge(F, F)).matrix() == diag(1, 1, 1)
    F = make_metric(diag(1, 4, 9)).F
    assert square_root_22(wedge(F, F)).matrix() == diag(1, 4, 9)


def test_normal_form_examples():
    imag = normal_form_balanced_h5(S, CQ(0, Q(1, 32)))
    assert not imag.feasible and imag.D.imag != 0
    base = normal_form_balanced_h5(S, CQ(0))
    assert base.feasible and base.p2 == S * S


def test_feasibility_examples():
    assert balanced_feasible(torus_structure()).kind is FeasibilityKind.FEASIBLE
    assert balanced_feasible(xs_structure(S)).kind is FeasibilityKind.FEASIBLE
    assert balanced_feasible(h4_disk_structure(CQ(0))[0]).kind is FeasibilityKind.INFEASIBLE
