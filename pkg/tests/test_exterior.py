from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilstrom.errors import BasisMismatch
from nilstrom.exterior import (
    COMPLEX,
    REAL,
    Form,
    bidegree_split,
    component,
    conj_form,
    is_real_form,
    j_act,
    to_complex,
    to_real,
    volume,
    wedge,
)
from nilstrom.families import h4_disk_structure, iwasawa_structure, xs_structure
from nilstrom.scalar import CQ, I
from strategies import forms

STRUCTURES = [
    xs_structure(CQ(Fraction(1, 4))),
    iwasawa_structure(),
    h4_disk_structure(CQ(Fraction(3, 10), Fraction(2, 5)))[0],
]
structure_st = st.sampled_from(STRUCTURES)


def test_monomial_labels():
    a = Form.monomial("1~12~2", 1)
    assert a.coefficient("1~12~2") == 1
    assert a.coefficient("~11 2~2") == -1
    assert Form.monomial("11", 1).is_zero()
    e = Form.monomial("1234", 1, REAL)
    assert e.coefficient("2134") == -1


@given(forms(), forms())
def test_graded_commutativity(a, b):
    sign = (-1) ** (a.degree * b.degree)
    if a.degree + b.degree <= 6:
        assert wedge(a, b) == wedge(b, a) * sign


@given(structure_st, forms(max_terms=3), forms(max_terms=3))
def test_leibniz(structure, a, b):
    if a.degree + b.degree > 5:
        return
    lhs = structure.dee(wedge(a, b))
    rhs = wedge(structure.dee(a), b) + wedge(a, structure.dee(b)) * (-1) ** a.degree
    assert lhs == rhs


@given(structure_st, forms(max_terms=4))
def test_d_squared_zero(structure, a):
    if a.degree <= 4:
        assert structure.dee(structure.dee(a)).is_zero()


@given(forms())
def test_j_squared(a):
    assert j_act(j_act(a)) == a * (-1) ** a.degree


@given(forms())
def test_conjugation_involution_and_bidegree(a):
    assert conj_form(conj_form(a)) == a
    total = Form.zero(a.degree)
    for p, q, comp in bidegree_split(a):
        assert component(a, p, q) == comp
        total = total + comp
    assert total == a


@given(forms())
def test_real_complex_round_trip(a):
    assert to_complex(to_real(a)) == a
    real = a + conj_form(a)
    assert is_real_form(real)
    assert all(c.imag == 0 for _, c in to_real(real).items())


@given(forms(max_terms=3), forms(max_terms=3))
def test_exact_vs_approx_wedge(a, b):
    if a.degree + b.degree > 6:
        return
    exact = wedge(a, b).approx()
    approx = wedge(a.approx(), b.approx())
    assert exact.close_to(approx, 1e-10)


def test_volume_and_basis_mismatch():
    assert to_complex(volume()).degree == 6
    with pytest.raises(BasisMismatch):
        Form.monomial("12", 1, REAL) + Form.monomial("12", 1, COMPLEX)


def test_j_on_bidegrees():
    a = Form.monomial("1~2", 1)
    assert j_act(a) == a
    b = Form.monomial("12", 1)
    assert j_act(b) == -b
    c = Form.monomial("12~3", 1)
    assert j_act(c) == c * I
