"""Exact integer and rational linear algebra helpers.

Everything here is over ZZ or QQ (Fraction); no floats.  Used for lattice
geometry only — the homological workhorse lives in gf2.py.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def primitive(v):
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = vec_gcd(v)
    return tuple(x // g for x in v) if g else tuple(v)


def frac_rank(rows) -> int:
    """Rank of a matrix given as rows of integers/Fractions."""
    rows = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / pr[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rank += 1
        col += 1
    return rank


def det(mat) -> int:
    """Determinant of a square integer matrix (Bareiss, exact)."""
    m = [list(r) for r in mat]
    size = len(m)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for col in range(size - 1):
        if m[col][col] == 0:
            piv = next((i for i in range(col + 1, size) if m[i][col]), None)
            if piv is None:
                return 0
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        for i in range(col + 1, size):
            for j in range(col + 1, size):
                m[i][j] = (m[i][j] * m[col][col] - m[i][col] * m[col][j]) // prev
            m[i][col] = 0
        prev = m[col][col]
    return sign * m[size - 1][size - 1]


def solve(rows, rhs):
    """Solve A x = b exactly over QQ.

    rows: list of coefficient rows, rhs: list of right-hand sides.
    Returns (solution tuple of Fractions, unique flag), or None if the
    system is inconsistent.  When underdetermined, free variables are 0.
    """
    aug = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(aug)) if aug[i][col]), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        pr = aug[rank]
        inv = pr[col]
        aug[rank] = [a / inv for a in pr]
        pr = aug[rank]
        for i in range(len(aug)):
            if i != rank and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], pr)]
        pivots.append(col)
        rank += 1
    for i in range(rank, len(aug)):
        if aug[i][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        x[col] = aug[r][ncols]
    return tuple(x), rank == ncols


def kernel_vector(rows, n):
    """A primitive integer vector spanning the kernel of a rank n-1 row set.

    Raises if the kernel is not 1-dimensional.
    """
    mat = [[Fraction(x) for x in r] for r in rows]
    # RREF on the rows, then read one kernel vector off the free column.
    pivots = []
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = mat[rank][col]
        mat[rank] = [a / inv for a in mat[rank]]
        pr = mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], pr)]
        pivots.append(col)
        rank += 1
    if rank != n - 1:
        raise ValueError("kernel is not one-dimensional")
    free = next(c for c in range(n) if c not in pivots)
    v = [Fraction(0)] * n
    v[free] = Fraction(1)
    for r, col in enumerate(pivots):
        v[col] = -mat[r][free]
    denom = 1
    for f in v:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    return primitive(tuple(int(f * denom) for f in v))


def integer_kernel(rows, n):
    """HNF basis of {x in ZZ^n : M x = 0} for the integer matrix with the given rows.

    Uses the standard augmented-HNF trick on [M^T | I]; rows of the result
    supported on the identity block span the kernel lattice exactly.
    """
    k = len(rows)
    if k == 0:
        return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    aug = [
        [rows[r][i] for r in range(k)] + [1 if j == i else 0 for j in range(n)]
        for i in range(n)
    ]
    h = hnf(aug, k + n)
    return [tuple(r[k:]) for r in h if not any(r[:k])]


def saturate(rows, n):
    """HNF basis of the saturation (span_QQ intersect ZZ^n) of the row lattice."""
    if not any(any(r) for r in rows):
        return []
    normals = integer_kernel(rows, n)
    if not normals:
        return hnf([[1 if j == i else 0 for j in range(n)] for i in range(n)], n)
    return hnf(integer_kernel(normals, n), n)


def hnf(rows, n):
    """Row-style Hermite normal form basis of the lattice spanned by rows.

    Returns a list of rank-many integer tuples; echelon shape with positive
    pivots and entries above a pivot reduced into [0, pivot).  Deterministic.
    """
    work = [list(r) for r in rows if any(r)]
    basis = []
    for col in range(n):
        active = [i for i in range(len(work)) if work[i][col] != 0]
        if not active:
            continue
        # gcd elimination within the column
        while len(active) > 1:
            active.sort(key=lambda i: abs(work[i][col]))
            a = active[0]
            for i in active[1:]:
                q = work[i][col] // work[a][col]
                work[i] = [x - q * y for x, y in zip(work[i], work[a])]
            active = [i for i in active if work[i][col] != 0]
        row = work.pop(active[0])
        if row[col] < 0:
            row = [-x for x in row]
        basis.append(row)
    # reduce entries above pivots
    for bi in range(len(basis) - 1, -1, -1):
        pcol = next(c for c in range(n) if basis[bi][c] != 0)
        for bj in range(bi):
            q = basis[bj][pcol] // basis[bi][pcol]
            if q:
                basis[bj] = [x - q * y for x, y in zip(basis[bj], basis[bi])]
    return [tuple(r) for r in basis]
