"""Non-singular lattice polytopes with face lattice and tangent lattices.

A polytope is built from its integer vertices (facets brute-forced for
n <= 4, or supplied explicitly).  Faces are keyed by their sorted vertex-id
tuples.  Each face carries an integer tangent basis in Hermite normal form,
its mod-2 reduction, and the annihilator F^perp inside the dual of F_2^n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from . import intlin
from .gf2 import GF2Matrix, GF2Subspace, dot


def pack_mod2(v) -> int:
    acc = 0
    for i, x in enumerate(v):
        if x & 1:
            acc |= 1 << i
    return acc


@dataclass(frozen=True)
class Face:
    key: tuple[int, ...]  # sorted vertex ids, the face's identity
    dim: int
    vertex_ids: tuple[int, ...]
    tight_facets: frozenset[int]
    tangent_basis_Z: tuple[tuple[int, ...], ...]  # HNF rows, T_Z(F)
    tangent_F2: GF2Subspace  # span of tangent basis mod 2 in F_2^n
    perp_F2: GF2Subspace  # F^perp in (F_2^n)^v

    def __repr__(self):
        return f"Face(dim={self.dim}, vertices={self.key})"


class LatticePolytope:
    """Full-dimensional lattice polytope with its graded face lattice."""

    def __init__(self, n, vertices, facets, faces, faces_by_dim):
        self.n = n
        self.vertices = vertices  # list of integer tuples
        self.facets = facets  # list of (primitive inward normal, offset)
        self.faces = faces  # key -> Face
        self.faces_by_dim = faces_by_dim  # dim -> list of Face
        self.top = faces_by_dim[n][0]
        self._nvol = None

    # ---------- construction ----------

    @classmethod
    def build(cls, vertices, facets=None):
        vertices = [tuple(int(x) for x in v) for v in vertices]
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertices")
        n = len(vertices[0])
        diffs = [intlin.vec_sub(v, vertices[0]) for v in vertices[1:]]
        if not diffs or intlin.frac_rank(diffs) != n:
            raise ValueError("vertices are not full-dimensional")
        if facets is None:
            if n > 4:
                raise ValueError("facet enumeration is brute force; supply facets for n > 4")
            facets = cls._brute_force_facets(vertices, n)
        else:
            facets = [(tuple(nrm), int(off)) for nrm, off in facets]
            cls._check_facets(vertices, facets)
        faces, faces_by_dim = cls._build_face_lattice(vertices, facets, n)
        return cls(n, vertices, facets, faces, faces_by_dim)

    @staticmethod
    def _brute_force_facets(vertices, n):
        found = {}
        for sub in combinations(range(len(vertices)), n):
            pts = [vertices[i] for i in sub]
            rows = [intlin.vec_sub(p, pts[0]) for p in pts[1:]]
            if n > 1 and intlin.frac_rank(rows) != n - 1:
                continue
            normal = intlin.kernel_vector(rows, n) if n > 1 else (1,)
            off = -sum(a * b for a, b in zip(normal, pts[0]))
            vals = [sum(a * b for a, b in zip(normal, v)) + off for v in vertices]
            if all(x >= 0 for x in vals) and any(x > 0 for x in vals):
                found[(normal, off)] = True
            elif all(x <= 0 for x in vals) and any(x < 0 for x in vals):
                normal = tuple(-a for a in normal)
                found[(normal, -off)] = True
        return sorted(found)

    @staticmethod
    def _check_facets(vertices, facets):
        for normal, off in facets:
            vals = [sum(a * b for a, b in zip(normal, v)) + off for v in vertices]
            if any(x < 0 for x in vals) or not any(x == 0 for x in vals):
                raise ValueError(f"bad facet {(normal, off)}")

    @classmethod
    def _build_face_lattice(cls, vertices, facets, n):
        tight = []  # per facet: frozenset of vertex ids on it
        for normal, off in facets:
            tight.append(frozenset(
                i for i, v in enumerate(vertices)
                if sum(a * b for a, b in zip(normal, v)) + off == 0
            ))
        # faces = intersections of facet vertex sets, closed under pairwise
        # intersection, plus the polytope itself
        all_ids = frozenset(range(len(vertices)))
        sets = {all_ids} | set(tight)
        frontier = set(sets)
        while frontier:
            new = set()
            for s in frontier:
                for t in tight:
                    u = s & t
                    if u and u not in sets:
                        new.add(u)
            sets |= new
            frontier = new
        faces = {}
        faces_by_dim = {d: [] for d in range(n + 1)}
        for vs in sets:
            ids = tuple(sorted(vs))
            face = cls._make_face(vertices, ids, tight, n)
            faces[face.key] = face
            faces_by_dim[face.dim].append(face)
        for d in faces_by_dim:
            faces_by_dim[d].sort(key=lambda f: f.key)
        return faces, faces_by_dim

    @staticmethod
    def _make_face(vertices, ids, tight, n):
        pts = [vertices[i] for i in ids]
        base = min(pts)
        diffs = [intlin.vec_sub(p, base) for p in pts if p != base]
        # T_Z(F) is the saturation: all integer vectors in the tangent space
        basis = tuple(intlin.saturate(diffs, n)) if diffs else ()
        t_f2 = GF2Subspace.from_vectors(n, [pack_mod2(b) for b in basis])
        perp = GF2Subspace.from_vectors(
            n, GF2Matrix([pack_mod2(b) for b in basis], n).kernel_basis()
        )
        return Face(
            key=ids,
            dim=len(basis),
            vertex_ids=ids,
            tight_facets=frozenset(i for i, t in enumerate(tight) if set(ids) <= t),
            tangent_basis_Z=basis,
            tangent_F2=t_f2,
            perp_F2=perp,
        )

    # ---------- queries ----------

    def face_leq(self, g: Face, f: Face) -> bool:
        return set(g.key) <= set(f.key)

    def children(self, f: Face):
        """Faces covered by f (codimension one in f)."""
        return [g for g in self.faces_by_dim.get(f.dim - 1, []) if self.face_leq(g, f)]

    def faces_below(self, f: Face):
        return [g for fs in self.faces_by_dim.values() for g in fs if self.face_leq(g, f)]

    def facet_values(self, p):
        return [sum(a * b for a, b in zip(nrm, p)) + off for nrm, off in self.facets]

    def contains_point(self, p) -> bool:
        return all(x >= 0 for x in self.facet_values(p))

    def lattice_points(self, face: Face | None = None, dilation: int = 1):
        """All integer points of dilation * face, sorted lexicographically."""
        if dilation < 0:
            raise ValueError("dilation must be nonnegative")
        face = face or self.top
        if dilation == 0:
            return [(0,) * self.n]
        verts = [tuple(dilation * x for x in self.vertices[i]) for i in face.vertex_ids]
        lo = [min(v[j] for v in verts) for j in range(self.n)]
        hi = [max(v[j] for v in verts) for j in range(self.n)]
        out = []
        for p in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            ok = True
            for fi, (nrm, off) in enumerate(self.facets):
                val = sum(a * b for a, b in zip(nrm, p)) + dilation * off
                if val < 0 or (val != 0 and fi in face.tight_facets):
                    ok = False
                    break
            if ok:
                out.append(p)
        return out

    def lambda_count(self, face: Face, dilation: int) -> int:
        return len(self.lattice_points(face, dilation))

    def normalized_volume(self) -> int:
        """Lattice volume (n! times Euclidean volume), exact."""
        if self._nvol is None:
            self._nvol = self._nvol_rec()
        return self._nvol

    def _nvol_rec(self) -> int:
        n = self.n
        if n == 1:
            xs = [v[0] for v in self.vertices]
            return max(xs) - min(xs)
        v0 = self.vertices[0]
        total = 0
        for fi, (nrm, off) in enumerate(self.facets):
            dist = sum(a * b for a, b in zip(nrm, v0)) + off
            if dist == 0:
                continue
            facet_face = next(
                f for f in self.faces_by_dim[n - 1] if fi in f.tight_facets
            )
            sub = self._face_as_polytope(facet_face)
            total += dist * sub.normalized_volume()
        return total

    def _face_as_polytope(self, face: Face) -> "LatticePolytope":
        """The face re-expressed in the coordinates of its own tangent lattice."""
        pts = [self.vertices[i] for i in face.vertex_ids]
        base = min(pts)
        coords = []
        for p in pts:
            d = intlin.vec_sub(p, base)
            sol = intlin.solve([[b[j] for b in face.tangent_basis_Z] for j in range(self.n)], d)
            if sol is None:
                raise AssertionError("face vertex outside its tangent lattice")
            x, _ = sol
            assert all(f.denominator == 1 for f in x)
            coords.append(tuple(int(f) for f in x))
        return LatticePolytope.build(coords)

    def is_nonsingular(self) -> bool:
        """Simple and smooth: n edges at each vertex forming a lattice basis."""
        n = self.n
        for vf in self.faces_by_dim[0]:
            vid = vf.vertex_ids[0]
            edges = [e for e in self.faces_by_dim[1] if vid in e.vertex_ids]
            if len(edges) != n:
                return False
            dirs = []
            for e in edges:
                other = next(i for i in e.vertex_ids if i != vid)
                dirs.append(intlin.primitive(
                    intlin.vec_sub(self.vertices[other], self.vertices[vid])
                ))
            if abs(intlin.det(dirs)) != 1:
                return False
        return True

    # ---------- io ----------

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n,
            "vertices": [list(v) for v in self.vertices],
            "facets": [{"normal": list(nrm), "offset": off} for nrm, off in self.facets],
        })

    @classmethod
    def from_json(cls, text: str) -> "LatticePolytope":
        data = json.loads(text)
        facets = None
        if "facets" in data and data["facets"]:
            facets = [(tuple(f["normal"]), f["offset"]) for f in data["facets"]]
        p = cls.build(data["vertices"], facets)
        if p.n != data["n"]:
            raise ValueError("declared dimension does not match vertices")
        return p


def dilated_simplex(n: int, d: int) -> LatticePolytope:
    """d * (standard n-simplex)."""
    verts = [(0,) * n] + [tuple(d if j == i else 0 for j in range(n)) for i in range(n)]
    return LatticePolytope.build(verts)


def unit_cube(n: int) -> LatticePolytope:
    return LatticePolytope.build(list(product((0, 1), repeat=n)))
