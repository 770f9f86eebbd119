import pytest

from patchwork.cellpairs import (ConstantCosheaf, XiPoset, chain_complex,
                                 check_thin, toric_face_complex, toric_hpp)
from patchwork.polytope import dilated_simplex, unit_cube
from patchwork.triangulation import generate_alcove, trivial_triangulation


@pytest.fixture(scope="module")
def xi_trivial_2(triangle_trivial):
    return XiPoset(*triangle_trivial)


def test_pair_counts():
    assert len(XiPoset(*trivial_triangulation(1))) == 5
    assert len(XiPoset(*trivial_triangulation(2))) == 19
    assert len(XiPoset(*generate_alcove(2, 2))) == 37


def test_grading_strict(xi_trivial_2):
    xi = xi_trivial_2
    for i in range(len(xi)):
        for j in xi.down_covers(i):
            assert xi.grade(j) == xi.grade(i) - 1
            assert xi.leq(j, i) and not xi.leq(i, j)


def test_thin(xi_trivial_2):
    xi = xi_trivial_2
    assert check_thin(len(xi), xi.grade, xi.leq)


def test_open_star_is_open(xi_trivial_2):
    xi = xi_trivial_2
    for i in range(len(xi)):
        assert xi.is_open(xi.open_star(i))


def test_constant_cosheaf_is_contractible(xi_trivial_2):
    xi = xi_trivial_2
    cc = chain_complex(xi, ConstantCosheaf(xi))
    assert cc.homology_ranks()[:3] == [1, 0, 0]


def test_boundary_squares_to_zero(xi_trivial_2):
    xi = xi_trivial_2
    cc = chain_complex(xi, ConstantCosheaf(xi))
    for q in sorted(cc.boundary):
        if q - 1 in cc.boundary:
            assert (cc.boundary[q - 1] @ cc.boundary[q]).is_zero()


def test_toric_hpp_values():
    assert toric_hpp(dilated_simplex(2, 1)) == [1, 1, 1]
    assert toric_hpp(unit_cube(2)) == [1, 2, 1]
    assert toric_hpp(dilated_simplex(3, 2)) == [1, 1, 1, 1]


def test_toric_face_complex_concentrated():
    poly, tri = generate_alcove(2, 2)
    hpp = toric_hpp(poly)
    for p in range(3):
        ranks = toric_face_complex(poly, tri, p).homology_ranks()
        expected = [0] * len(ranks)
        expected[p] = hpp[p]
        assert ranks == expected
