import random

from hypothesis import given, settings
from hypothesis import strategies as st

from patchwork.gf2 import (GF2Matrix, GF2Subspace, contract, dot, echelon,
                           exterior_matrix, exterior_power_subspace, gf2_det,
                           gf2_rank, solve, wedge_indices, wedge_of_vectors)

matrices = st.builds(
    lambda rows, ncols: GF2Matrix([r & ((1 << ncols) - 1) for r in rows], ncols),
    st.lists(st.integers(min_value=0, max_value=(1 << 8) - 1), min_size=1, max_size=8),
    st.integers(min_value=1, max_value=8),
)


def test_dot_is_popcount_parity():
    assert dot(0b1011, 0b1110) == (0 + 1 + 1) % 2
    assert dot(0, 0b111) == 0


@given(matrices)
def test_rank_nullity(m):
    assert m.rank() + len(m.kernel_basis()) == m.ncols


@given(matrices)
def test_kernel_vectors_annihilate(m):
    for v in m.kernel_basis():
        assert m.mul_vec(v) == 0


@given(matrices, matrices)
def test_matmul_against_vectors(a, b):
    if a.ncols != b.nrows:
        return
    c = a @ b
    for j in range(b.ncols):
        assert c.mul_vec(1 << j) == a.mul_vec(b.mul_vec(1 << j))


@given(matrices)
def test_transpose_involution(m):
    assert m.transpose().transpose() == m


def test_echelon_pivots_distinct():
    basis = echelon([0b110, 0b011, 0b101])
    pivots = [b & -b for b in basis]
    assert len(set(pivots)) == len(basis)
    assert gf2_rank([0b110, 0b011, 0b101]) == len(basis)


@given(st.lists(st.integers(min_value=0, max_value=255), min_size=1, max_size=6),
       st.integers(min_value=0, max_value=255))
def test_solve_recovers_combination(vectors, coeffs):
    target = 0
    for i, v in enumerate(vectors):
        if (coeffs >> i) & 1:
            target ^= v
    sol = solve(vectors, target)
    assert sol is not None
    acc = 0
    for i, v in enumerate(vectors):
        if (sol >> i) & 1:
            acc ^= v
    assert acc == target


def test_solve_unsolvable():
    assert solve([0b01], 0b10) is None


@given(st.lists(st.integers(min_value=0, max_value=255), max_size=6))
def test_subspace_coords_roundtrip(vectors):
    W = GF2Subspace.from_vectors(8, vectors)
    rng = random.Random(0)
    for _ in range(5):
        c = rng.getrandbits(W.dim) if W.dim else 0
        v = W.from_coords(c)
        assert v in W
        assert W.coords(v) == c


def test_subspace_intersection_sum_dims():
    U = GF2Subspace.from_vectors(4, [0b0011, 0b0110])
    V = GF2Subspace.from_vectors(4, [0b0110, 0b1100])
    assert U.intersection(V).dim + (U + V).dim == U.dim + V.dim


def test_gf2_det():
    assert gf2_det([0b01, 0b10], 2) == 1
    assert gf2_det([0b11, 0b11], 2) == 0


def test_wedge_of_vectors_alternating():
    assert wedge_of_vectors([0b011, 0b011], 3) == 0
    w = wedge_of_vectors([0b001, 0b010], 3)
    assert w == 1 << wedge_indices(3, 2).index((0, 1))


def test_exterior_power_dimension():
    W = GF2Subspace.from_vectors(4, [0b0011, 0b0101, 0b1001])
    assert exterior_power_subspace(W, 2).dim == 3  # C(3,2)
    assert exterior_power_subspace(W, 0).dim == 1


@settings(max_examples=30)
@given(st.integers(min_value=0, max_value=(1 << 9) - 1),
       st.integers(min_value=0, max_value=(1 << 9) - 1))
def test_exterior_matrix_multiplicative(abits, bbits):
    a = GF2Matrix([(abits >> (3 * i)) & 7 for i in range(3)], 3)
    b = GF2Matrix([(bbits >> (3 * i)) & 7 for i in range(3)], 3)
    assert exterior_matrix(a @ b, 2) == exterior_matrix(a, 2) @ exterior_matrix(b, 2)


def test_contract_basis_case():
    # <e_0^v, e_0 ^ e_2> = e_2 in Lambda^1 of F_2^3
    idx2 = wedge_indices(3, 2)
    w = 1 << idx2.index((0, 2))
    out = contract(0b001, w, 3, 1, 2)
    assert out == 1 << 2
    # functional not involving the wedge support contracts to zero
    assert contract(0b010, w, 3, 1, 2) == 0
