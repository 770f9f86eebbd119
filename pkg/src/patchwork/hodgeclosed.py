"""Closed combinatorial formulas for Hodge numbers of complete intersections.

Everything is exact integer arithmetic built on the extended binomial
C(a, b) = a(a-1)...(a-b+1)/b! for b >= 0 and 0 for b < 0, which is defined
for negative a as well (so C(-1, b) = (-1)^b).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .cellpairs import toric_hpp
from .polytope import LatticePolytope
from .triangulation import Triangulation


@lru_cache(maxsize=None)
def binom(a: int, b: int) -> int:
    """Extended binomial coefficient: falling factorial over b!, 0 for b < 0."""
    if b < 0:
        return 0
    num = 1
    for t in range(b):
        num *= a - t
    return num // factorial(b)


def alpha(m: int, k: int, p: int, i: int) -> int:
    """Direct summation of the double sum over l >= 1, u >= 1.

    The summands vanish outside u in [max(1, p-m), p+l] and l <= k, so the
    loops below cover the full support.
    """
    total = 0
    for l in range(1, k + 1):
        for u in range(max(1, p - m), p + l + 1):
            total += (
                (-1) ** u
                * binom(k, l)
                * binom(u - 1, l - 1)
                * binom(m + l, m - p + u)
                * binom(u - 1, i)
            )
    return total


def beta(m: int, k: int, p: int, i: int) -> int:
    """The closed single-sum form; equals alpha on the whole parameter range."""
    return (-1) ** (i + 1) * sum(
        binom(i, l) * binom(m - i, p - i + l) for l in range(k)
    )


def e_orbit(m: int, k: int, p: int, nu) -> int:
    """Orbit p-characteristic of a face of dimension m with simplex counts nu."""
    return (-1) ** m * (
        binom(m, p) + sum(alpha(m, k, p, i) * nu[i] for i in range(len(nu)))
    )


def e_total(poly: LatticePolytope, tri: Triangulation, k: int, p: int) -> int:
    """Sum of orbit p-characteristics over all faces, the polytope included."""
    total = 0
    for d in range(poly.n + 1):
        for face in poly.faces_by_dim[d]:
            total += e_orbit(face.dim, k, p, tri.nu_counts(face))
    return total


@dataclass
class HodgeTable:
    k: int
    m: int  # complex dimension n - k
    h: list[list[int]]  # h[p][q]

    def signature(self) -> int:
        return sum(
            (-1) ** q * self.h[p][q]
            for p in range(self.m + 1)
            for q in range(self.m + 1)
        )

    def euler(self) -> int:
        return sum(
            (-1) ** (p + q) * self.h[p][q]
            for p in range(self.m + 1)
            for q in range(self.m + 1)
        )

    def to_dict(self):
        return {"k": self.k, "dimension": self.m, "h": self.h}


def hodge_table(poly: LatticePolytope, tri: Triangulation, k: int) -> HodgeTable:
    """Assemble the full Hodge table of the codimension-k intersection.

    Entries with p+q below the diagonal come from the ambient toric
    h-vector, entries above from duality, and the anti-diagonal from the
    orbit p-characteristics.
    """
    n = poly.n
    m = n - k
    hpp = toric_hpp(poly)
    h = [[0] * (m + 1) for _ in range(m + 1)]
    if k == 0:
        for p in range(m + 1):
            h[p][p] = hpp[p]
        return HodgeTable(k, m, h)
    for p in range(m + 1):
        for q in range(m + 1):
            if p + q < m and p == q:
                h[p][q] = hpp[p]
    for p in range(m + 1):
        for q in range(m + 1):
            if p + q > m:
                h[p][q] = h[m - p][m - q]
    for p in range(m + 1):
        q_star = m - p
        rest = sum(
            (-1) ** q * h[p][q] for q in range(m + 1) if q != q_star
        )
        h[p][q_star] = (-1) ** q_star * (e_total(poly, tri, k, p) - rest)
    return HodgeTable(k, m, h)
