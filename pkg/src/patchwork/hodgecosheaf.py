"""The exterior-power cosheaves on the cell-pair poset and their homology.

At a pair (F, sigma) the value is the sum over k-dimensional faces tau of
sigma of the p-th exterior power of tau^perp / F^perp, realized as a
subspace of the full wedge power of V_F = (F_2^n)^v / F^perp.  V_F is
coordinatized by evaluation on the fixed tangent basis of F, which turns
all projection maps into concrete matrices.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from .cellpairs import XiPoset, chain_complex
from .gf2 import GF2Matrix, GF2Subspace, exterior_matrix, exterior_power_subspace
from .hodgeclosed import binom
from .polytope import LatticePolytope
from .triangulation import Triangulation


def dim_formula(mF: int, dsigma: int, p: int, k: int) -> int:
    """Closed form for dim of the cosheaf space at a pair with these dimensions."""
    return binom(mF, p) - sum(
        binom(dsigma, l) * binom(mF - dsigma, p - dsigma + l) for l in range(k)
    )


class FpkCosheaf:
    """F_p^k on the cell-pair poset; spaces cached, maps built on covers."""

    def __init__(self, xi: XiPoset, p: int, k: int):
        self.xi = xi
        self.p = p
        self.k = k
        self._spaces: dict[int, GF2Subspace] = {}
        self._maps: dict[tuple[int, int], GF2Matrix] = {}

    def space(self, i: int) -> GF2Subspace:
        if i not in self._spaces:
            fkey, skey = self.xi.elements[i]
            mF = self.xi.poly.faces[fkey].dim
            s = self.xi.tri.simplices[skey]
            ambient = comb(mF, self.p) if self.p <= mF else 0
            if s.dim < self.k or self.p > mF or self.p < 0:
                self._spaces[i] = GF2Subspace(max(ambient, 0))
            else:
                vecs = []
                for tau_key in combinations(skey, self.k + 1):
                    W = self.xi.perp_in_face(tau_key, fkey)
                    vecs.extend(exterior_power_subspace(W, self.p).basis)
                self._spaces[i] = GF2Subspace.from_vectors(ambient, vecs)
        return self._spaces[i]

    def space_dim(self, i: int) -> int:
        return self.space(i).dim

    def cover_map(self, j: int, i: int) -> GF2Matrix:
        """Matrix of the structure map to the smaller pair, in subspace bases."""
        key = (j, i)
        if key not in self._maps:
            fk_i, _ = self.xi.elements[i]
            fk_j, _ = self.xi.elements[j]
            src = self.space(i)
            dst = self.space(j)
            if fk_i == fk_j:
                ambient = None  # same face: the identity on the ambient wedge
            else:
                ambient = exterior_matrix(
                    self.xi.face_projection(fk_j, fk_i), self.p
                )
            cols = []
            for b in src.basis:
                v = b if ambient is None else ambient.mul_vec(b)
                try:
                    cols.append(dst.coords(v))
                except ValueError:
                    raise AssertionError(
                        f"cosheaf map image escapes target space at pair {key}"
                    )
            rows = [0] * dst.dim
            for c, col in enumerate(cols):
                for r in range(dst.dim):
                    if (col >> r) & 1:
                        rows[r] |= 1 << c
            self._maps[key] = GF2Matrix(rows, src.dim)
        return self._maps[key]


def hodge_poset(poly: LatticePolytope, tri: Triangulation, p: int, k: int,
                xi: XiPoset | None = None, check_functorial: bool = True) -> list[int]:
    """Homology ranks of the cosheaf over the cell-pair poset: h^{p,q} per q."""
    xi = xi or XiPoset(poly, tri)
    cc = chain_complex(xi, FpkCosheaf(xi, p, k), check_functorial=check_functorial)
    return cc.homology_ranks()
