import random

import pytest

from patchwork.cellpairs import XiPoset
from patchwork.duality import (FlagComplex, enumerate_flags, leibniz_residual,
                               omega_boundary_is_zero, verify_bar, verify_pd)
from patchwork.hodgecosheaf import FpkCosheaf
from patchwork.triangulation import generate_alcove, trivial_triangulation


@pytest.fixture(scope="module")
def xi_trivial():
    return XiPoset(*trivial_triangulation(2))


@pytest.fixture(scope="module")
def xi_d2():
    return XiPoset(*generate_alcove(2, 2))


def test_fundamental_class_is_cycle(xi_trivial, xi_d2):
    for xi in (xi_trivial, xi_d2):
        for k in range(3):
            assert omega_boundary_is_zero(xi, k)


def test_flag_homology_matches_cellular(xi_trivial):
    xi = xi_trivial
    for p, k in [(0, 0), (1, 1), (0, 1), (2, 0)]:
        assert verify_bar(xi, FpkCosheaf(xi, p, k))


def test_flag_homology_on_stars(xi_d2):
    xi = xi_d2
    fam = FpkCosheaf(xi, 1, 1)
    for x in range(0, len(xi), 7):
        assert verify_bar(xi, fam, xi.open_star(x))


def test_bar_rejects_non_open_set(xi_trivial):
    xi = xi_trivial
    top = max(range(len(xi)), key=xi.grade)
    with pytest.raises(ValueError):
        verify_bar(xi, FpkCosheaf(xi, 0, 0), [i for i in range(len(xi)) if i != top])


def test_duality_full_poset(xi_trivial, xi_d2):
    for xi in (xi_trivial, xi_d2):
        for k in range(3):
            m = 2 - k
            for p in range(m + 1):
                for q in range(m + 1):
                    assert verify_pd(xi, k, p, q)


def test_duality_on_open_stars(xi_d2):
    xi = xi_d2
    for x in range(len(xi)):
        U = xi.open_star(x)
        for p in range(2):
            for q in range(2):
                assert verify_pd(xi, 1, p, q, U)


def test_leibniz_rule_random_chains(xi_d2):
    xi = xi_d2
    U = list(range(len(xi)))
    rng = random.Random(3)
    for k, p, pp, q, qp in [(1, 0, 1, 0, 1), (1, 0, 1, 1, 1), (0, 1, 2, 1, 2)]:
        fam_p = FpkCosheaf(xi, p, k)
        oc = FlagComplex(xi, enumerate_flags(xi, U, U), fam_p)
        fam_pp = FpkCosheaf(xi, pp, k)
        kc = FlagComplex(xi, enumerate_flags(xi, U), fam_pp)
        od = oc.cc.dims.get(q, 0)
        kd = kc.cc.dims.get(qp, 0)
        for _ in range(3):
            phi = rng.getrandbits(od) if od else 0
            alpha = rng.getrandbits(kd) if kd else 0
            assert leibniz_residual(xi, U, k, p, pp, q, qp, phi, alpha) == 0
