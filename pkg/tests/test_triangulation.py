from math import comb

import pytest

from patchwork.polytope import dilated_simplex
from patchwork.triangulation import (Triangulation, generate_alcove,
                                     trivial_triangulation)


def test_alcove_2_2_counts():
    poly, tri = generate_alcove(2, 2)
    assert len(tri.maximal) == 4
    counts = {d: len(ss) for d, ss in tri.by_dim.items()}
    assert counts == {0: 6, 1: 9, 2: 4}
    assert tri.validate().ok


@pytest.mark.parametrize("n,d", [(1, 4), (2, 5), (3, 2)])
def test_alcove_validates(n, d):
    poly, tri = generate_alcove(n, d)
    report = tri.validate()
    assert report.ok, report.issues
    assert len(tri.maximal) == d ** n


def test_alcove_uses_all_lattice_points():
    poly, tri = generate_alcove(2, 4)
    assert len(tri.points) == comb(2 + 4, 2)
    assert sorted(tri.points) == sorted(poly.lattice_points())


def test_trivial_triangulation():
    poly, tri = trivial_triangulation(3)
    assert len(tri.maximal) == 1
    assert tri.validate().ok


def test_min_faces():
    poly, tri = generate_alcove(2, 2)
    # every full-dimensional simplex sits inside the whole polytope only
    assert all(s.min_face_key == poly.top.key for s in tri.by_dim[2])
    # a corner vertex lies on a vertex of the polytope
    corner = next(s for s in tri.by_dim[0] if tri.points[s.key[0]] == (0, 0))
    assert tri.min_face(corner).dim == 0


def test_nu_counts():
    poly, tri = generate_alcove(2, 3)
    # the whole polytope contains everything
    assert tri.nu_counts(poly.top) == [len(tri.by_dim[d]) for d in range(3)]
    # a facet is a segment dilated 3 times: 4 points, 3 edges
    facet = poly.faces_by_dim[1][0]
    assert tri.nu_counts(facet) == [4, 3]


def test_lambda_equals_binomial_nu_sum():
    poly, tri = generate_alcove(3, 4)
    for fs in poly.faces_by_dim.values():
        for f in fs:
            nu = tri.nu_counts(f)
            for u in range(1, 7):
                expected = sum(comb(u - 1, i) * nu[i] for i in range(len(nu)))
                assert poly.lambda_count(f, u) == expected


def test_duplicate_point_rejected():
    poly, tri = generate_alcove(2, 2)
    bad = Triangulation(poly, tri.points, [tri.maximal[0]] * len(tri.maximal))
    assert not bad.validate().ok


def test_non_unimodular_rejected():
    poly = dilated_simplex(2, 2)
    pts = sorted(poly.lattice_points())
    keys = {p: i for i, p in enumerate(pts)}
    big = [keys[(0, 0)], keys[(2, 0)], keys[(0, 2)]]
    assert not Triangulation(poly, pts, [tuple(sorted(big))]).validate().ok


def test_json_roundtrip():
    poly, tri = generate_alcove(2, 3)
    again = Triangulation.from_json(poly, tri.to_json())
    assert again.points == tri.points
    assert sorted(again.maximal) == sorted(tri.maximal)
    assert again.validate().ok
