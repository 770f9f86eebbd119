import random
from fractions import Fraction

import pytest

from patchwork.cellpairs import XiPoset
from patchwork.phase import from_sign_distribution, random_kn, trivial_k0
from patchwork.tmanifold import (betti_bound_check, betti_via_cosheaf,
                                 betti_via_simplicial, check_links,
                                 euler_and_signature_check, export_svg,
                                 hypersurface_geometry_2d, realize_simplicial,
                                 search_equality_signs)
from patchwork.triangulation import generate_alcove, trivial_triangulation


def test_projective_plane(curve_instances, curve_xi):
    poly, tri = curve_instances[2]
    xi = curve_xi[2]
    ph = trivial_k0(tri)
    assert betti_via_cosheaf(xi, ph) == [1, 1, 1]
    assert betti_via_simplicial(xi, ph) == [1, 1, 1]
    complex_ = realize_simplicial(xi, ph)
    assert complex_.is_pure() and complex_.dim == 2
    assert check_links(complex_, 1).ok  # surface: links are circles


def test_tline():
    poly, tri = trivial_triangulation(3)
    xi = XiPoset(poly, tri)
    from patchwork.phase import enumerate_all
    ph = enumerate_all(tri, 2)[0]
    b = betti_via_cosheaf(xi, ph)
    assert b == [1, 1]
    chi, sig, ok = euler_and_signature_check(poly, tri, ph, xi, b)
    assert (chi, sig, ok) == (0, 0, True)
    bound_ok, equality = betti_bound_check(poly, tri, 2, b)
    assert bound_ok and equality


def test_top_k_point_count(curve_instances, curve_xi):
    poly, tri = curve_instances[3]
    b = betti_via_cosheaf(curve_xi[3], random_kn(tri, 5))
    assert b[0] == 9 and all(x == 0 for x in b[1:])


def test_random_curves_two_routes(curve_instances, curve_xi):
    poly, tri = curve_instances[3]
    xi = curve_xi[3]
    rng = random.Random(2)
    for _ in range(6):
        signs = [rng.getrandbits(1) for _ in tri.points]
        ph = from_sign_distribution(tri, signs)
        b1 = betti_via_cosheaf(xi, ph)
        b2 = betti_via_simplicial(xi, ph)
        assert b1 == b2
        assert b1[0] == b1[1]  # a curve's components each carry one cycle
        chi, sig, ok = euler_and_signature_check(poly, tri, ph, xi, b1)
        assert ok and chi == 0
        complex_ = realize_simplicial(xi, ph)
        assert check_links(complex_, 0).ok  # curve: links are point pairs


def test_search_finds_maximal_curve(curve_instances, curve_xi):
    poly, tri = curve_instances[3]
    res = search_equality_signs(poly, tri, seed=11, xi=curve_xi[3])
    assert res is not None
    signs, b = res
    assert b == [2, 2]
    assert betti_bound_check(poly, tri, 1, b) == (True, True)


def test_harnack_signs_attain_bound(curve_instances, curve_xi):
    for d in range(1, 7):
        poly, tri = curve_instances[d]
        signs = [(p[0] * p[1]) % 2 for p in tri.points]
        b = betti_via_cosheaf(curve_xi[d], from_sign_distribution(tri, signs),
                              check_functorial=False)
        assert b[0] == 1 + (d - 1) * (d - 2) // 2


def test_geometry_segment_counts(curve_instances):
    poly, tri = curve_instances[3]
    signs = [(p[0] * p[1]) % 2 for p in tri.points]
    geo = hypersurface_geometry_2d(poly, tri, signs)
    assert set(geo) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    for segs in geo.values():
        for (x1, y1), (x2, y2) in segs:
            assert all(isinstance(c, Fraction) for c in (x1, y1, x2, y2))
    # each triangle contributes at most one segment per orthant
    assert all(len(segs) <= len(tri.maximal) for segs in geo.values())


def test_export_svg(tmp_path, curve_instances):
    poly, tri = curve_instances[2]
    signs = [1] * len(tri.points)
    out = tmp_path / "curve.svg"
    export_svg(out, poly, tri, signs)
    text = out.read_text()
    assert text.startswith("<svg") and text.rstrip().endswith("</svg>")
    assert 'width="240"' in text and 'height="240"' in text
