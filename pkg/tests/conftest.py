import pytest

from patchwork.cellpairs import XiPoset
from patchwork.triangulation import generate_alcove, trivial_triangulation


@pytest.fixture(scope="session")
def curve_instances():
    """Alcove-triangulated dilated triangles, d = 1..6."""
    return {d: generate_alcove(2, d) for d in range(1, 7)}


@pytest.fixture(scope="session")
def curve_xi(curve_instances):
    return {d: XiPoset(*curve_instances[d]) for d in range(1, 7)}


@pytest.fixture(scope="session")
def triangle_trivial():
    return trivial_triangulation(2)


@pytest.fixture(scope="session")
def tetra_trivial():
    return trivial_triangulation(3)
