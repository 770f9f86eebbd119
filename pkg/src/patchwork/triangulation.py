"""Unimodular triangulations of a lattice polytope.

Stores the point list and maximal simplices, derives the full face poset
(every nonempty subset of a maximal simplex), and validates over ZZ:
unimodularity of each maximal simplex, the volume count, the exact
face-to-face property, and that all lattice points of the polytope occur.
Non-convex (irregular) triangulations are accepted — only the above checks
are enforced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product

from . import intlin
from .gf2 import GF2Matrix, GF2Subspace
from .polytope import Face, LatticePolytope, dilated_simplex, pack_mod2


@dataclass(frozen=True)
class Simplex:
    key: tuple[int, ...]  # sorted point ids
    dim: int
    tangent_basis_Z: tuple[tuple[int, ...], ...]
    tangent_F2: GF2Subspace
    perp_F2: GF2Subspace  # sigma^perp in (F_2^n)^v
    min_face_key: tuple[int, ...]  # key of the minimal polytope face containing it

    def __repr__(self):
        return f"Simplex{self.key}"


@dataclass
class ValidationReport:
    ok: bool
    issues: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


class Triangulation:
    def __init__(self, poly: LatticePolytope, points, maximal):
        self.poly = poly
        self.points = [tuple(int(x) for x in p) for p in points]
        self.point_index = {p: i for i, p in enumerate(self.points)}
        self.maximal = [tuple(sorted(s)) for s in maximal]
        self.simplices: dict[tuple[int, ...], Simplex] = {}
        self.by_dim: dict[int, list[Simplex]] = {}
        self._build_poset()

    # ---------- construction ----------

    def _build_poset(self):
        n = self.poly.n
        keys = set()
        for ms in self.maximal:
            for size in range(1, len(ms) + 1):
                keys.update(combinations(ms, size))
        for key in sorted(keys):
            self.simplices[key] = self._make_simplex(key)
        self.by_dim = {d: [] for d in range(n + 1)}
        for s in self.simplices.values():
            self.by_dim.setdefault(s.dim, []).append(s)
        for d in self.by_dim:
            self.by_dim[d].sort(key=lambda s: s.key)

    def _make_simplex(self, key) -> Simplex:
        n = self.poly.n
        pts = [self.points[i] for i in key]
        base = min(pts)
        diffs = [intlin.vec_sub(p, base) for p in pts if p != base]
        basis = tuple(intlin.saturate(diffs, n)) if diffs else ()
        masks = [pack_mod2(b) for b in basis]
        t_f2 = GF2Subspace.from_vectors(n, masks)
        perp = GF2Subspace.from_vectors(n, GF2Matrix(masks, n).kernel_basis())
        tight = frozenset(
            fi for fi in range(len(self.poly.facets))
            if all(self.poly.facet_values(p)[fi] == 0 for p in pts)
        )
        if tight:
            common = None
            for fi in tight:
                vs = {
                    i for i in self.poly.top.vertex_ids
                    if fi in self.poly.faces[(i,)].tight_facets
                }
                common = vs if common is None else common & vs
            min_key = tuple(sorted(common))
        else:
            min_key = self.poly.top.key
        return Simplex(
            key=key,
            dim=len(basis),
            tangent_basis_Z=basis,
            tangent_F2=t_f2,
            perp_F2=perp,
            min_face_key=min_key,
        )

    def min_face(self, s: Simplex) -> Face:
        return self.poly.faces[s.min_face_key]

    # ---------- queries ----------

    def skeleton(self, k: int):
        """All simplices of dimension at most k."""
        return [s for d in range(k + 1) for s in self.by_dim.get(d, [])]

    def star(self, s: Simplex):
        ks = set(s.key)
        return [t for t in self.simplices.values() if ks <= set(t.key)]

    def link(self, s: Simplex):
        """Abstract simplicial complex: faces disjoint from s whose join with s is a simplex."""
        ks = set(s.key)
        return sorted(
            tuple(i for i in t.key if i not in ks)
            for t in self.simplices.values()
            if ks < set(t.key)
        )

    def faces_of(self, s: Simplex):
        return [self.simplices[c] for size in range(1, len(s.key) + 1)
                for c in combinations(s.key, size)]

    def nu_counts(self, face: Face):
        """nu_F(i) = number of i-simplices of the triangulation inside F."""
        nu = [0] * (face.dim + 1)
        fkey = set(face.key)
        for s in self.simplices.values():
            if set(self.simplices[s.key].min_face_key) <= fkey and s.dim <= face.dim:
                nu[s.dim] += 1
        return nu

    # ---------- validation ----------

    def validate(self) -> ValidationReport:
        issues = []
        n = self.poly.n
        if len(set(self.points)) != len(self.points):
            issues.append("duplicate points")
        for p in self.points:
            if not self.poly.contains_point(p):
                issues.append(f"point {p} outside polytope")
        expected = set(self.poly.lattice_points())
        if set(self.points) != expected:
            missing = sorted(expected - set(self.points))
            extra = sorted(set(self.points) - expected)
            if missing:
                issues.append(f"lattice points missing from point list: {missing}")
            if extra:
                issues.append(f"points that are not lattice points of the polytope: {extra}")
        for ms in self.maximal:
            if len(set(ms)) != n + 1:
                issues.append(f"maximal simplex {ms} does not have {n + 1} distinct vertices")
                continue
            pts = [self.points[i] for i in ms]
            mat = [intlin.vec_sub(p, pts[0]) for p in pts[1:]]
            d = intlin.det(mat)
            if abs(d) != 1:
                issues.append(f"simplex {ms} not unimodular (det {d})")
        if len(set(self.maximal)) != len(self.maximal):
            issues.append("duplicate maximal simplices")
        nvol = self.poly.normalized_volume()
        if not issues and len(self.maximal) != nvol:
            issues.append(
                f"{len(self.maximal)} maximal simplices but normalized volume {nvol}"
            )
        if not issues:
            issues.extend(self._check_face_to_face())
        return ValidationReport(ok=not issues, issues=issues)

    def _simplex_inequalities(self, ms):
        """Affine functionals (a, c), one per vertex: barycentric coordinates.

        x is in the simplex iff a.x + c >= 0 for all of them; the functional
        at index i vanishes exactly on the facet opposite vertex i.
        """
        n = self.poly.n
        pts = [self.points[i] for i in ms]
        # lambda_i for i >= 1 from the inverse of the edge matrix
        cols = [intlin.vec_sub(p, pts[0]) for p in pts[1:]]
        out = []
        for i in range(1, n + 1):
            # row i of the inverse: solve M^T a = e_i with M columns = edges
            rhs = [1 if j == i - 1 else 0 for j in range(n)]
            a, unique = intlin.solve([list(c) for c in cols], rhs)
            assert unique
            c = -sum(x * y for x, y in zip(a, pts[0]))
            out.append((tuple(a), c))
        a0 = tuple(-sum(a[j] for a, _ in out) for j in range(n))
        c0 = 1 - sum(c for _, c in out)
        return [(a0, c0)] + out

    def _check_face_to_face(self):
        issues = []
        n = self.poly.n
        boxes = []
        ineqs = []
        for ms in self.maximal:
            pts = [self.points[i] for i in ms]
            boxes.append((
                tuple(min(p[j] for p in pts) for j in range(n)),
                tuple(max(p[j] for p in pts) for j in range(n)),
            ))
            ineqs.append(self._simplex_inequalities(ms))
        for ai, bi in combinations(range(len(self.maximal)), 2):
            lo_a, hi_a = boxes[ai]
            lo_b, hi_b = boxes[bi]
            if any(hi_a[j] < lo_b[j] or hi_b[j] < lo_a[j] for j in range(n)):
                continue
            if not self._pair_face_to_face(self.maximal[ai], self.maximal[bi],
                                           ineqs[ai], ineqs[bi]):
                issues.append(
                    f"simplices {self.maximal[ai]} and {self.maximal[bi]} "
                    "do not intersect in a common face"
                )
        return issues

    def _pair_face_to_face(self, ms_a, ms_b, ineq_a, ineq_b):
        n = self.poly.n
        common = set(ms_a) & set(ms_b)
        pos_a = {p: i for i, p in enumerate(ms_a)}
        pos_b = {p: i for i, p in enumerate(ms_b)}
        system = ineq_a + ineq_b
        for rows in combinations(range(len(system)), n):
            mat = [system[r][0] for r in rows]
            rhs = [-system[r][1] for r in rows]
            sol = intlin.solve([list(m) for m in mat], rhs)
            if sol is None or not sol[1]:
                continue
            x = sol[0]
            vals_a = [sum(a * xi for a, xi in zip(a_, x)) + c for a_, c in ineq_a]
            vals_b = [sum(a * xi for a, xi in zip(a_, x)) + c for a_, c in ineq_b]
            if any(v < 0 for v in vals_a + vals_b):
                continue
            # x is in the intersection; it must lie in the span of the shared
            # vertices w.r.t. both barycentric coordinate systems
            for i, v in enumerate(vals_a):
                if v != 0 and ms_a[i] not in common:
                    return False
            for i, v in enumerate(vals_b):
                if v != 0 and ms_b[i] not in common:
                    return False
        return True

    # ---------- io ----------

    def to_json(self) -> str:
        return json.dumps({
            "points": [list(p) for p in self.points],
            "simplices": [list(s) for s in self.maximal],
        })

    @classmethod
    def from_json(cls, poly: LatticePolytope, text: str) -> "Triangulation":
        data = json.loads(text)
        return cls(poly, [tuple(p) for p in data["points"]],
                   [tuple(s) for s in data["simplices"]])


def generate_alcove(n: int, d: int):
    """The alcove (Freudenthal) triangulation of d times the standard n-simplex.

    Works in the order-simplex model 0 <= y_1 <= ... <= y_n <= d, takes all
    unit Freudenthal simplices contained in that region, and maps back by
    x_1 = y_1, x_i = y_i - y_{i-1}.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    poly = dilated_simplex(n, d)
    points = poly.lattice_points()
    index = {p: i for i, p in enumerate(points)}

    def y_to_x(y):
        return tuple(y[i] - (y[i - 1] if i else 0) for i in range(n))

    def in_region(y):
        return 0 <= y[0] and y[n - 1] <= d and all(
            y[i] <= y[i + 1] for i in range(n - 1)
        )

    maximal = set()
    for z in product(range(d + 1), repeat=n):
        for pi in permutations(range(n)):
            ys = [list(z)]
            for j in pi:
                nxt = list(ys[-1])
                nxt[j] += 1
                ys.append(nxt)
            if all(in_region(y) for y in ys):
                maximal.add(tuple(sorted(index[y_to_x(tuple(y))] for y in ys)))
    return poly, Triangulation(poly, points, sorted(maximal))


def trivial_triangulation(n: int):
    """The standard n-simplex triangulated by itself."""
    poly = dilated_simplex(n, 1)
    points = poly.lattice_points()
    return poly, Triangulation(poly, points, [tuple(range(len(points)))])
