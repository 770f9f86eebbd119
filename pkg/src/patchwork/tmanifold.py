"""The patchworked manifold: homology, simplicial model, planar geometry.

Two independent homology routes are provided: ranks of the sign cosheaf
over the cell-pair poset, and plain simplicial homology of the refining
simplicial complex whose vertices are pairs (simplex of the triangulation,
admissible residue on its minimal polytope face).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .cellpairs import ChainComplex, XiPoset, chain_complex
from .gf2 import GF2Matrix
from .hodgeclosed import HodgeTable, hodge_table
from .phase import RealPhaseStructure, SignCosheaf, from_sign_distribution
from .polytope import LatticePolytope
from .triangulation import Triangulation


def betti_via_cosheaf(xi: XiPoset, phase: RealPhaseStructure,
                      check_functorial: bool = True) -> list[int]:
    """Mod-2 Betti numbers from the sign cosheaf over the cell-pair poset."""
    cc = chain_complex(xi, SignCosheaf(xi, phase), check_functorial=check_functorial)
    ranks = cc.homology_ranks()
    m = xi.poly.n - phase.k
    assert all(r == 0 for r in ranks[m + 1:]), "homology above the expected dimension"
    return ranks[: m + 1]


class TSimplicialComplex:
    """Abstract simplicial complex refining the patchworked manifold."""

    def __init__(self, simplices):
        # simplices: iterable of frozensets of vertices; closed under subsets
        self.by_dim: dict[int, list[frozenset]] = {}
        for s in set(simplices):
            self.by_dim.setdefault(len(s) - 1, []).append(s)
        for d in self.by_dim:
            self.by_dim[d].sort(key=sorted)
        self.vertices = sorted(
            {v for s in self.by_dim.get(0, []) for v in s}
        )

    @property
    def dim(self):
        return max(self.by_dim) if self.by_dim else -1

    def is_pure(self) -> bool:
        if not self.by_dim:
            return True
        top = self.dim
        maximal = {
            s for d, ss in self.by_dim.items() for s in ss
            if not any(s < t for dd in self.by_dim for t in self.by_dim[dd] if dd > d)
        }
        return all(len(s) - 1 == top for s in maximal)

    def chain_complex(self) -> ChainComplex:
        if not self.by_dim:
            return ChainComplex({0: 0}, {})
        dims = {d: len(ss) for d, ss in self.by_dim.items()}
        for d in range(max(dims) + 1):
            dims.setdefault(d, 0)
        boundary = {}
        for d in range(1, max(dims) + 1):
            lower = {s: i for i, s in enumerate(self.by_dim.get(d - 1, []))}
            rows = [0] * dims[d - 1]
            for c, s in enumerate(self.by_dim.get(d, [])):
                for v in s:
                    rows[lower[s - {v}]] |= 1 << c
            boundary[d] = GF2Matrix(rows, dims[d])
        return ChainComplex(dims, boundary)

    def betti(self) -> list[int]:
        return self.chain_complex().homology_ranks()

    def link(self, vertex) -> "TSimplicialComplex":
        return TSimplicialComplex(
            s - {vertex}
            for d, ss in self.by_dim.items() if d >= 1
            for s in ss if vertex in s
        )


def realize_simplicial(xi: XiPoset, phase: RealPhaseStructure) -> TSimplicialComplex:
    """Build the refining simplicial complex from chain labels.

    A label is a chain sigma_1 < ... < sigma_l of simplices together with
    an admissible residue s on the minimal face of sigma_l; its vertex set
    is the set of pairs (sigma_i, s projected to sigma_i's minimal face).
    """
    tri = xi.tri
    sign = SignCosheaf(xi, phase)

    chains_cache: dict[tuple, list[tuple]] = {}

    def chains_ending_at(key):
        # all chains of simplex keys with maximum = key
        if key not in chains_cache:
            out = [(key,)]
            for size in range(1, len(key)):
                for sub in combinations(key, size):
                    out.extend(c + (key,) for c in chains_ending_at(sub))
            chains_cache[key] = out
        return chains_cache[key]

    simplices = []
    for top in tri.simplices.values():
        f_top = top.min_face_key
        for chain in chains_ending_at(top.key):
            first = chain[0]
            elem = xi.index[(f_top, first)]
            for s in sign.residues(elem):
                verts = []
                for skey in chain:
                    f_i = tri.simplices[skey].min_face_key
                    proj = xi.face_projection(f_i, f_top)
                    verts.append((skey, proj.mul_vec(s)))
                simplices.append(frozenset(verts))
    return TSimplicialComplex(simplices)


def betti_via_simplicial(xi: XiPoset, phase: RealPhaseStructure) -> list[int]:
    m = xi.poly.n - phase.k
    ranks = realize_simplicial(xi, phase).betti()
    ranks += [0] * (m + 1 - len(ranks))
    assert all(r == 0 for r in ranks[m + 1:])
    return ranks[: m + 1]


@dataclass
class LinkReport:
    ok: bool
    failures: list


def check_links(complex_: TSimplicialComplex, sphere_dim: int) -> LinkReport:
    """Every vertex link must have the mod-2 homology of a sphere."""
    if sphere_dim == 0:
        expected = [2]
    else:
        expected = [1] + [0] * (sphere_dim - 1) + [1]
    failures = []
    for v in complex_.vertices:
        b = complex_.link(v).betti()
        padded = b + [0] * max(0, len(expected) - len(b))
        if padded[: len(expected)] != expected or any(x for x in padded[len(expected):]):
            failures.append((v, b))
    return LinkReport(ok=not failures, failures=failures)


def euler_and_signature_check(poly: LatticePolytope, tri: Triangulation,
                              phase: RealPhaseStructure,
                              xi: XiPoset | None = None,
                              betti: list[int] | None = None):
    """(Euler characteristic of the manifold, signature from Hodge numbers, equal?)."""
    xi = xi or XiPoset(poly, tri)
    if betti is None:
        betti = betti_via_cosheaf(xi, phase)
    chi = sum((-1) ** q * b for q, b in enumerate(betti))
    sig = hodge_table(poly, tri, phase.k).signature()
    return chi, sig, chi == sig


def betti_bound_check(poly: LatticePolytope, tri: Triangulation, k: int,
                      betti: list[int]):
    """b_p <= sum_q h^{p,q}; returns (bound_ok, equality everywhere)."""
    table = hodge_table(poly, tri, k)
    m = table.m
    bounds = [sum(table.h[p][q] for q in range(m + 1)) for p in range(m + 1)]
    padded = betti + [0] * (m + 1 - len(betti))
    ok = all(padded[p] <= bounds[p] for p in range(m + 1))
    eq = all(padded[p] == bounds[p] for p in range(m + 1))
    return ok, eq


def search_equality_signs(poly: LatticePolytope, tri: Triangulation, seed: int,
                          xi: XiPoset | None = None, restarts: int = 20):
    """Hill-climb over sign flips for a curve attaining the first Betti bound.

    Returns (signs, betti) on success, None if every restart stalls below
    the bound.  Deterministic in the seed.
    """
    import random

    xi = xi or XiPoset(poly, tri)
    d = max(max(v) for v in poly.vertices)
    target = 1 + (d - 1) * (d - 2) // 2
    rng = random.Random(seed)
    npts = len(tri.points)

    def b0(signs):
        phase = from_sign_distribution(tri, signs)
        return betti_via_cosheaf(xi, phase, check_functorial=False)[0]

    for _ in range(restarts):
        signs = [rng.getrandbits(1) for _ in range(npts)]
        best = b0(signs)
        improved = True
        while improved and best < target:
            improved = False
            order = list(range(npts))
            rng.shuffle(order)
            for i in order:
                signs[i] ^= 1
                cand = b0(signs)
                if cand > best:
                    best = cand
                    improved = True
                else:
                    signs[i] ^= 1
        if best == target:
            phase = from_sign_distribution(tri, signs)
            return signs, betti_via_cosheaf(xi, phase, check_functorial=False)
    return None


# ---------- planar geometry (n = 2, k = 1) ----------


def hypersurface_geometry_2d(poly: LatticePolytope, tri: Triangulation, signs):
    """Per orthant, the segments joining midpoints of sign-changing edges.

    Returns {orthant (s1, s2): [((x1, y1), (x2, y2)), ...]} with exact
    rational midpoint coordinates of the reflected copies.
    """
    if poly.n != 2:
        raise ValueError("planar geometry needs n = 2")
    out = {}
    for s1 in (0, 1):
        for s2 in (0, 1):
            segs = []
            for ms in tri.maximal:
                pts = [tri.points[i] for i in ms]
                eps = [
                    (signs[i] ^ (s1 * p[0] + s2 * p[1])) & 1
                    for i, p in zip(ms, pts)
                ]
                changing = [
                    (a, b) for a, b in combinations(range(3), 2)
                    if eps[a] != eps[b]
                ]
                if not changing:
                    continue
                assert len(changing) == 2, "a triangle has 0 or 2 sign-changing edges"
                mids = []
                for a, b in changing:
                    mids.append((
                        Fraction((-1) ** s1 * (pts[a][0] + pts[b][0]), 2),
                        Fraction((-1) ** s2 * (pts[a][1] + pts[b][1]), 2),
                    ))
                segs.append((mids[0], mids[1]))
            out[(s1, s2)] = segs
    return out


def export_svg(path, poly: LatticePolytope, tri: Triangulation, signs,
               scale: int = 40):
    """Draw the four reflected copies with sign-colored lattice points."""
    geometry = hypersurface_geometry_2d(poly, tri, signs)
    d = max(max(abs(x) for x in v) for v in poly.vertices) or 1
    pad = 1
    span = (d + pad) * scale

    def xy(px, py):
        return float(span + px * scale), float(span - py * scale)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{2 * span}" '
        f'height="{2 * span}" viewBox="0 0 {2 * span} {2 * span}">',
        f'<line x1="0" y1="{span}" x2="{2 * span}" y2="{span}" stroke="#bbb"/>',
        f'<line x1="{span}" y1="0" x2="{span}" y2="{2 * span}" stroke="#bbb"/>',
    ]
    for (s1, s2), segs in geometry.items():
        for (x1, y1), (x2, y2) in segs:
            a = xy(x1, y1)
            b = xy(x2, y2)
            parts.append(
                f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" '
                'stroke="black" stroke-width="2"/>'
            )
        for i, p in enumerate(tri.points):
            eps = (signs[i] ^ (s1 * p[0] + s2 * p[1])) & 1
            cx, cy = xy((-1) ** s1 * p[0], (-1) ** s2 * p[1])
            color = "black" if eps == 0 else "white"
            parts.append(
                f'<circle cx="{cx}" cy="{cy}" r="4" fill="{color}" '
                'stroke="black"/>'
            )
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts))
    return path
