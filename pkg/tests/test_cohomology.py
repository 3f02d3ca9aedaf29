from __future__ import annotations

from fractions import Fraction

import pytest

from nilstrom.cohomology import Flavor, bott_chern_dims, dolbeault_dims
from nilstrom.families import h4_disk_structure, h5_disk_structure, iwasawa_structure, torus_structure, xs_structure
from nilstrom.scalar import CQ
from oracles import bott_chern, from_structure

Q = Fraction
STRUCTURES = {
    "xs": xs_structure(CQ(Q(1, 4))),
    "torus": torus_structure(),
    "iwasawa": iwasawa_structure(),
    "h4": h4_disk_structure(CQ(Q(3, 5)))[0],
    "h5": h5_disk_structure(CQ(Q(1, 4)), CQ(Q(1, 50), Q(1, 40)))[0],
}


@pytest.mark.parametrize("name", sorted(STRUCTURES))
def test_bott_chern_matches_dense_oracle(name):
    st_ = STRUCTURES[name]
    table = bott_chern_dims(st_)
    assert table.flavor is Flavor.BOTT_CHERN
    assert table.dims == bott_chern(from_structure(st_))


def test_xs_bott_chern_table():
    assert bott_chern_dims(STRUCTURES["xs"]).rows() == [[1, 2, 1, 1], [2, 4, 6, 2], [1, 6, 7, 3], [1, 2, 3, 1]]


def test_torus_tables_are_binomial():
    from math import comb
    for table in (bott_chern_dims(STRUCTURES["torus"]), dolbeault_dims(STRUCTURES["torus"])):
        assert table.rows() == [[comb(3, p) * comb(3, q) for q in range(4)] for p in range(4)]


def test_iwasawa_dolbeault():
    h = dolbeault_dims(STRUCTURES["iwasawa"])
    assert (h[1, 0], h[0, 1], h[1, 1]) == (3, 2, 6)


@pytest.mark.parametrize("name", ["xs", "iwasawa", "h4"])
def test_approx_matches_exact(name):
    st_ = STRUCTURES[name]
    assert bott_chern_dims(st_.approx()).dims == bott_chern_dims(st_).dims
    assert dolbeault_dims(st_.approx()).dims == dolbeault_dims(st_).dims


def test_bott_chern_serre_symmetry():
    for st_ in STRUCTURES.values():
        d = bott_chern_dims(st_).dims
        assert all(d[p, q] == d[q, p] for p in range(4) for q in range(4))
