import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from patchwork.cellpairs import XiPoset, toric_hpp
from patchwork.hodgeclosed import (alpha, beta, binom, e_total, hodge_table)
from patchwork.hodgecosheaf import FpkCosheaf, dim_formula, hodge_poset
from patchwork.triangulation import generate_alcove, trivial_triangulation


def test_binom_extended():
    assert binom(5, 2) == 10
    assert binom(4, -1) == 0
    assert binom(-1, 2) == 1  # (-1)(-2)/2
    assert binom(-2, 3) == -4


@given(st.integers(0, 8), st.integers(0, 8), st.integers(-3, 12), st.integers(0, 8))
@settings(max_examples=200)
def test_alpha_equals_beta(m, k, p, i):
    assert alpha(m, k, p, i) == beta(m, k, p, i)


def test_k0_table_is_toric_diagonal():
    poly, tri = generate_alcove(2, 3)
    table = hodge_table(poly, tri, 0)
    hpp = toric_hpp(poly)
    for p in range(3):
        for q in range(3):
            assert table.h[p][q] == (hpp[p] if p == q else 0)


def test_cubic_curve_table():
    poly, tri = generate_alcove(2, 3)
    table = hodge_table(poly, tri, 1)
    assert table.h == [[1, 1], [1, 1]]  # genus-1 curve
    assert table.signature() == 0


def test_quartic_surface_table():
    poly, tri = generate_alcove(3, 4)
    table = hodge_table(poly, tri, 1)
    assert table.h[0] == [1, 0, 1]
    assert table.h[1] == [0, 20, 0]
    assert table.h[2] == [1, 0, 1]
    assert table.signature() == -16


def test_table_euler_matches_e_total():
    poly, tri = generate_alcove(2, 3)
    for k in range(3):
        table = hodge_table(poly, tri, k)
        m = table.m
        for p in range(m + 1):
            assert sum((-1) ** q * table.h[p][q] for q in range(m + 1)) \
                == e_total(poly, tri, k, p)


def test_poset_matches_closed_form_on_curves():
    for d in (1, 2, 3):
        poly, tri = generate_alcove(2, d)
        xi = XiPoset(poly, tri)
        table = hodge_table(poly, tri, 1)
        for p in range(2):
            ranks = hodge_poset(poly, tri, p, 1, xi)
            ranks += [0] * (2 - len(ranks))
            assert ranks[:2] == table.h[p]


def test_dim_formula_matches_space_dims():
    poly, tri = generate_alcove(2, 2)
    xi = XiPoset(poly, tri)
    for k in range(3):
        for p in range(3):
            fam = FpkCosheaf(xi, p, k)
            for i, (fkey, skey) in enumerate(xi.elements):
                expected = dim_formula(
                    poly.faces[fkey].dim, tri.simplices[skey].dim, p, k)
                assert fam.space_dim(i) == expected


def test_tline_tables_agree():
    poly, tri = trivial_triangulation(3)
    xi = XiPoset(poly, tri)
    table = hodge_table(poly, tri, 2)
    for p in range(2):
        ranks = hodge_poset(poly, tri, p, 2, xi)
        ranks += [0] * (2 - len(ranks))
        assert ranks[:2] == table.h[p]
