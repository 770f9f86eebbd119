from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from patchwork import intlin

small_ints = st.integers(min_value=-6, max_value=6)


def test_det_known():
    assert intlin.det([[1, 2], [3, 4]]) == -2
    assert intlin.det([[2, 0, 0], [0, 3, 0], [0, 0, 5]]) == 30


@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_fraction_rank(mat):
    assert (intlin.det(mat) != 0) == (intlin.frac_rank(mat) == 3)


def test_primitive():
    assert list(intlin.primitive([4, -6, 2])) == [2, -3, 1]
    assert list(intlin.primitive([0, 0])) == [0, 0]


def test_solve_unique():
    sol = intlin.solve([[2, 0], [0, 3]], [4, 9])
    assert sol is not None
    values, unique = sol
    assert values == (Fraction(2), Fraction(3)) and unique


def test_solve_inconsistent():
    assert intlin.solve([[1, 1], [1, 1]], [0, 1]) is None


def test_integer_kernel():
    ker = intlin.integer_kernel([[1, 1, 1]], 3)
    assert len(ker) == 2
    for v in ker:
        assert sum(v) == 0


def test_saturate_removes_index():
    sat = [list(v) for v in intlin.saturate([[2, 0]], 2)]
    assert sat == [[1, 0]]
    sat2 = [list(v) for v in intlin.saturate([[2, 0], [0, 2]], 2)]
    assert sorted(sat2) == [[0, 1], [1, 0]]


def test_saturate_skew_sublattice():
    # spanned by (1,1) and (1,-1): index 2, saturation is all of Z^2
    sat = [list(v) for v in intlin.saturate([[1, 1], [1, -1]], 2)]
    assert sorted(sat) == [[0, 1], [1, 0]]


def test_hnf_echelon_shape():
    # lattice spanned by (3,1) and (1,1) has index 2 in Z^2
    h = [list(v) for v in intlin.hnf([[3, 1], [1, 1]], 2)]
    assert h == [[1, 1], [0, 2]]


@given(st.lists(st.lists(small_ints, min_size=3, max_size=3), min_size=1, max_size=4))
def test_hnf_preserves_lattice_membership(rows):
    h = intlin.hnf(rows, 3)
    # every original row is an integer combination of the hnf rows
    for r in rows:
        sol = intlin.solve([list(col) for col in zip(*h)], r) if h else None
        if h:
            assert sol is not None
            values, _ = sol
            assert all(v.denominator == 1 for v in values)
        else:
            assert r == [0, 0, 0]
