from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilstrom.reference import H4_RELATIONS, derived_xs, h4_curvature, stated_h4, stated_xs, xs_curvature
from nilstrom.scalar import CQ

Q = Fraction
moduli = st.fractions(min_value=Q(1, 20), max_value=Q(19, 20), max_denominator=40).map(CQ)
radii = st.fractions(min_value=Q(1, 10), max_value=4, max_denominator=20).map(CQ)
s_values = st.fractions(min_value=Q(1, 40), max_value=Q(19, 40), max_denominator=40).map(CQ)


def _consistent(ref, r):
    four = 4 * ref["dT_coeff"]
    assert ref["alpha_flat"] == four / ref["trace_coeff"]
    assert ref["alpha_ccdlmz"] == four / (ref["trace_coeff"] - ref["instanton_coeff"])
    assert ref["threshold_r4"] == ref["instanton_coeff"] / (ref["trace_coeff"] / r ** 4)


@given(moduli, radii)
def test_h4_closed_forms_are_self_consistent(m, r):
    _consistent(stated_h4(m, r), r)


@given(s_values, radii)
def test_derived_xs_closed_forms_are_self_consistent(s, r):
    _consistent(derived_xs(s, r), r)
    ref = derived_xs(s, r)
    assert ref["trace_e1234"] == -4 * ref["trace_coeff"] / s ** 2


@given(s_values)
def test_stated_xs_flat_alpha_disagrees_with_its_own_ratio(s):
    ref = stated_xs(s)
    assert ref["alpha_flat"] != 4 * ref["dT_coeff"] / ref["trace_coeff"]


def test_h4_values_at_half():
    ref = stated_h4(CQ(Q(1, 2)))
    assert ref["threshold_r4"] == CQ(Q(81, 11264))
    assert ref["alpha_flat"] == CQ(Q(63, 176))
    assert stated_h4(CQ(Q(1, 2)), CQ(Q(1, 4)))["alpha_ccdlmz"] == CQ(Q(-252, 37))
    assert stated_h4(CQ(Q(1, 2)), 1)["alpha_ccdlmz"] == CQ(Q(4032, 11183))


def test_xs_values_at_quarter():
    s = CQ(Q(1, 4))
    assert derived_xs(s)["alpha_flat"] == CQ(Q(9, 10))
    assert derived_xs(s)["threshold_r4"] == CQ(Q(1, 160))
    assert stated_xs(s)["threshold_r4"] == CQ(Q(1, 40960))
    assert stated_xs(s)["dT_coeff"] == CQ(288)


@pytest.mark.parametrize("s", [Q(1, 8), Q(1, 4), Q(2, 5)])
def test_xs_curvature_list_is_antisymmetric_in_pairs(s):
    O = xs_curvature(CQ(s))
    assert len(O) == 15
    assert O[2, 3] == -O[1, 4] and O[2, 5] == -O[1, 6] and O[4, 5] == -O[3, 6]


def test_h4_relations_fill_the_list():
    O = h4_curvature(CQ(Q(3, 10), Q(2, 5)), CQ(Q(1, 2)), CQ(1))
    assert len(O) == 15 and set(H4_RELATIONS) <= set(O)
    assert O[5, 6] == -(O[1, 2] + O[3, 4])
