"""Exact linear algebra over the two-element field.

Vectors live in F_2^n and are stored as Python integers with bit i holding
coordinate i; addition is xor, so Gaussian elimination runs word-parallel on
arbitrary widths for free.  Matrices keep one integer per row.  Subspaces are
always kept in reduced row echelon form, which makes equality tests, coset
canonicalization and quotient coordinates deterministic.

The same encoding serves F_2^n, its dual (F_2^n)^v (pairing = popcount parity
of the bitwise and) and all exterior powers, whose standard basis is indexed
by strictly increasing index tuples in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations


def dot(a: int, b: int) -> int:
    """Pairing of a dual vector with a vector: parity of the overlap."""
    return (a & b).bit_count() & 1


class GF2Matrix:
    """A matrix over F_2; ``rows[i]`` has bit j = entry (i, j)."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows, ncols):
        self.rows = list(rows)
        self.ncols = ncols

    @property
    def nrows(self):
        return len(self.rows)

    @classmethod
    def zero(cls, nrows, ncols):
        return cls([0] * nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls([1 << i for i in range(n)], n)

    @classmethod
    def from_lists(cls, entries, ncols=None):
        if ncols is None:
            ncols = len(entries[0]) if entries else 0
        rows = []
        for r in entries:
            acc = 0
            for j, e in enumerate(r):
                if e & 1:
                    acc |= 1 << j
            rows.append(acc)
        return cls(rows, ncols)

    def to_lists(self):
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]

    def copy(self):
        return GF2Matrix(self.rows, self.ncols)

    def __eq__(self, other):
        return (
            isinstance(other, GF2Matrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"GF2Matrix({self.nrows}x{self.ncols})"

    def mul_vec(self, x: int) -> int:
        """Matrix times column vector; both vectors are bit-packed ints."""
        y = 0
        for i, r in enumerate(self.rows):
            if (r & x).bit_count() & 1:
                y |= 1 << i
        return y

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if other.nrows != self.ncols:
            raise ValueError("shape mismatch")
        rows = []
        for r in self.rows:
            acc = 0
            j = 0
            rr = r
            while rr:
                if rr & 1:
                    acc ^= other.rows[j]
                rr >>= 1
                j += 1
            rows.append(acc)
        return GF2Matrix(rows, other.ncols)

    def transpose(self) -> "GF2Matrix":
        rows = [0] * self.ncols
        for i, r in enumerate(self.rows):
            j = 0
            while r:
                if r & 1:
                    rows[j] |= 1 << i
                r >>= 1
                j += 1
        return GF2Matrix(rows, self.nrows)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.rows)

    def rank(self) -> int:
        return len(echelon(self.rows))

    def kernel_basis(self) -> list[int]:
        """RREF basis of {x : M x = 0}, x packed over ncols bits."""
        # Eliminate on rows augmented with nothing; track free columns of
        # the column space instead: standard nullspace via RREF of M.
        rref, pivots = rref_with_pivots(self.rows)
        pivot_set = set(pivots)
        basis = []
        for j in range(self.ncols):
            if j in pivot_set:
                continue
            v = 1 << j
            for row, pj in zip(rref, pivots):
                if (row >> j) & 1:
                    v |= 1 << pj
            basis.append(v)
        return echelon(basis)


def echelon(vectors) -> list[int]:
    """Reduced echelon basis (pivot = lowest set bit) of the span."""
    basis: list[int] = []  # kept sorted by pivot, fully reduced
    for v in vectors:
        for b in basis:
            if v & (b & -b):
                v ^= b
        if v:
            # reduce earlier rows against the new pivot
            p = v & -v
            basis = [b ^ v if b & p else b for b in basis]
            basis.append(v)
            basis.sort(key=lambda b: b & -b)
    return basis


def rref_with_pivots(rows):
    """Row-reduce; returns (rref rows, pivot column per row)."""
    basis = echelon(rows)
    return basis, [b.bit_length() and (b & -b).bit_length() - 1 for b in basis]


def gf2_rank(rows) -> int:
    return len(echelon(rows))


def solve(vectors: list[int], target: int):
    """Coefficients c (bit-packed) with xor of chosen vectors = target.

    Returns None if target is not in the span.
    """
    # Augment each vector with its index indicator above the data bits.
    width = max([v.bit_length() for v in vectors] + [target.bit_length(), 1])
    aug = [(v | (1 << (width + i))) for i, v in enumerate(vectors)]
    mask = (1 << width) - 1
    basis = []
    for a in aug:
        for b in basis:
            if a & mask & ((b & mask) & -(b & mask)):
                a ^= b
        if a & mask:
            basis.append(a)
            basis.sort(key=lambda b: (b & mask) & -(b & mask))
    t = target
    coeffs = 0
    for b in basis:
        if t & ((b & mask) & -(b & mask)):
            t ^= b & mask
            coeffs ^= b >> width
    return None if t else coeffs


@dataclass(frozen=True)
class GF2Subspace:
    """A subspace of F_2^ambient_dim held as a reduced echelon basis."""

    ambient_dim: int
    basis: tuple[int, ...] = field(default=())

    @classmethod
    def from_vectors(cls, ambient_dim, vectors):
        return cls(ambient_dim, tuple(echelon(vectors)))

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim, tuple(1 << i for i in range(ambient_dim)))

    @property
    def dim(self):
        return len(self.basis)

    @property
    def pivots(self):
        return tuple((b & -b).bit_length() - 1 for b in self.basis)

    def reduce(self, v: int) -> int:
        """Canonical coset representative of v modulo this subspace."""
        for b in self.basis:
            if v & (b & -b):
                v ^= b
        return v

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def contains_space(self, other: "GF2Subspace") -> bool:
        return all(b in self for b in other.basis)

    def coords(self, v: int) -> int:
        """Coefficients of v in the echelon basis (must be a member)."""
        c = 0
        for i, b in enumerate(self.basis):
            if v & (b & -b):
                v ^= b
                c |= 1 << i
        if v:
            raise ValueError("vector not in subspace")
        return c

    def from_coords(self, c: int) -> int:
        v = 0
        for i, b in enumerate(self.basis):
            if (c >> i) & 1:
                v ^= b
        return v

    def __add__(self, other: "GF2Subspace") -> "GF2Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return GF2Subspace.from_vectors(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersection(self, other: "GF2Subspace") -> "GF2Subspace":
        # Zassenhaus would be overkill at these sizes: brute force through
        # the smaller space's elements only when tiny, else kernel trick.
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        small, big = sorted((self, other), key=lambda s: s.dim)
        vecs = [v for v in small.elements() if v in big]
        return GF2Subspace.from_vectors(self.ambient_dim, vecs)

    def elements(self):
        """Iterate all 2^dim vectors (use only on small subspaces)."""
        for c in range(1 << self.dim):
            yield self.from_coords(c)


@lru_cache(maxsize=None)
def wedge_indices(m: int, p: int) -> tuple[tuple[int, ...], ...]:
    """The standard basis of the p-th exterior power of F_2^m, lex order."""
    if p < 0 or p > m:
        return ()
    return tuple(combinations(range(m), p))


@lru_cache(maxsize=None)
def wedge_position(m: int, p: int):
    """Inverse lookup: index tuple -> position in wedge_indices(m, p)."""
    return {s: i for i, s in enumerate(wedge_indices(m, p))}


def gf2_det(rows: list[int], size: int) -> int:
    """Determinant of a size x size bit matrix over F_2."""
    rows = list(rows)
    for col in range(size):
        piv = None
        for i in range(col, size):
            if (rows[i] >> col) & 1:
                piv = i
                break
        if piv is None:
            return 0
        rows[col], rows[piv] = rows[piv], rows[col]
        for i in range(col + 1, size):
            if (rows[i] >> col) & 1:
                rows[i] ^= rows[col]
    return 1


def _submatrix(rows, row_idx, col_idx):
    out = []
    for i in row_idx:
        r = rows[i]
        acc = 0
        for jj, j in enumerate(col_idx):
            if (r >> j) & 1:
                acc |= 1 << jj
        out.append(acc)
    return out


def wedge_of_vectors(vectors: list[int], m: int) -> int:
    """Expand v_1 ^ ... ^ v_p in the standard wedge basis of F_2^m."""
    p = len(vectors)
    acc = 0
    for pos, cols in enumerate(wedge_indices(m, p)):
        if gf2_det(_submatrix(vectors, range(p), cols), p):
            acc |= 1 << pos
    return acc


def exterior_power_subspace(W: GF2Subspace, p: int) -> GF2Subspace:
    """The image of Lambda^p W inside Lambda^p of the ambient space.

    Spanned by all p-fold wedges of W's echelon basis; its dimension is
    C(dim W, p).  For p = 0 this is the full 1-dimensional Lambda^0.
    """
    m = W.ambient_dim
    if p < 0 or p > m:
        raise ValueError(f"exterior power {p} out of range for ambient {m}")
    ambient = len(wedge_indices(m, p))
    if p == 0:
        return GF2Subspace.from_vectors(1, [1])
    vecs = [
        wedge_of_vectors([W.basis[i] for i in sel], m)
        for sel in combinations(range(W.dim), p)
    ]
    return GF2Subspace.from_vectors(ambient, vecs)


def exterior_matrix(M: GF2Matrix, p: int) -> GF2Matrix:
    """Lambda^p of a linear map: entries are p x p minors over F_2."""
    rows_idx = wedge_indices(M.nrows, p)
    cols_idx = wedge_indices(M.ncols, p)
    if p == 0:
        return GF2Matrix.identity(1)
    rows = []
    for ri in rows_idx:
        acc = 0
        for jpos, cj in enumerate(cols_idx):
            if gf2_det(_submatrix(M.rows, ri, cj), p):
                acc |= 1 << jpos
        rows.append(acc)
    return GF2Matrix(rows, len(cols_idx))


def quotient_map(ambient: int, kill: GF2Subspace) -> GF2Matrix:
    """A fixed surjection F_2^ambient -> F_2^(ambient - dim kill), kernel = kill.

    Output coordinates are dual to the non-pivot positions of kill's echelon
    basis, so repeated calls agree bit for bit.
    """
    if kill.ambient_dim != ambient:
        raise ValueError("ambient dimension mismatch")
    pivots = set(kill.pivots)
    rows = []
    for j in range(ambient):
        if j in pivots:
            continue
        row = 1 << j
        for b in kill.basis:
            if (b >> j) & 1:
                row |= b & -b
        rows.append(row)
    return GF2Matrix(rows, ambient)


def contract(phi: int, w: int, m: int, p: int, p_prime: int) -> int:
    """Contraction of a p-covector against a p'-vector over F_2.

    Both arguments are expanded in the standard (dual) wedge bases of F_2^m;
    on basis elements <e_S^v, e_T> = e_{T \\ S} when S is a subset of T, else 0.
    The result lives in the (p'-p)-th wedge.
    """
    if p > p_prime:
        raise ValueError("covector degree exceeds vector degree")
    out_pos = wedge_position(m, p_prime - p)
    acc = 0
    phi_sets = [frozenset(s) for s in wedge_indices(m, p)]
    w_sets = wedge_indices(m, p_prime)
    for i, S in enumerate(phi_sets):
        if not (phi >> i) & 1:
            continue
        for j, T in enumerate(w_sets):
            if not (w >> j) & 1:
                continue
            if S <= set(T):
                rest = tuple(t for t in T if t not in S)
                acc ^= 1 << out_pos[rest]
    return acc
