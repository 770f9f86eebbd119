"""Real phase structures on the k-skeleton and the associated sign cosheaf.

A phase structure assigns to each k-simplex sigma a coset in the dual of
F_2^n modulo sigma^perp, stored as the canonical (echelon-reduced)
representative.  Validity is the parity condition: over every
(k+1)-simplex tau and every residue s, the number of facets of tau whose
assigned coset matches s is even.

For k = 1 these are exactly sign distributions on the lattice points, up
to a global flip; both translations are provided.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations

from .cellpairs import XiPoset
from .gf2 import GF2Matrix, dot
from .polytope import pack_mod2
from .triangulation import Simplex, Triangulation


@dataclass
class PhaseReport:
    ok: bool
    violations: list = field(default_factory=list)  # (tau key, residue)
    all_counts_in_0_2: bool = True

    def __bool__(self):
        return self.ok


def _coset_reps(perp) -> list[int]:
    """Canonical representatives of the dual space modulo the given subspace.

    These are exactly the vectors with no bits in the pivot positions of
    the echelon basis, enumerated in increasing order.
    """
    n = perp.ambient_dim
    free = [j for j in range(n) if j not in set(perp.pivots)]
    reps = []
    for c in range(1 << len(free)):
        v = 0
        for t, j in enumerate(free):
            if (c >> t) & 1:
                v |= 1 << j
        reps.append(v)
    return sorted(reps)


def _eval_on_simplex(s: Simplex, value: int) -> int:
    """A functional's coordinates in sigma^v: values on the tangent basis."""
    acc = 0
    for i, b in enumerate(s.tangent_basis_Z):
        if dot(pack_mod2(b), value):
            acc |= 1 << i
    return acc


class RealPhaseStructure:
    def __init__(self, tri: Triangulation, k: int, values: dict):
        """values: simplex key -> representative in the dual of F_2^n (n bits)."""
        self.tri = tri
        self.k = k
        self.values = {}
        for s in tri.by_dim.get(k, []):
            if s.key not in values:
                raise ValueError(f"missing phase value on {s.key}")
            self.values[s.key] = s.perp_F2.reduce(values[s.key])

    def value(self, skey) -> int:
        return self.values[tuple(skey)]

    def validate(self) -> PhaseReport:
        violations = []
        in_0_2 = True
        for tau in self.tri.by_dim.get(self.k + 1, []):
            for s in _coset_reps(tau.perp_F2):
                count = 0
                for facet_key in combinations(tau.key, self.k + 1):
                    sigma = self.tri.simplices[facet_key]
                    if sigma.perp_F2.reduce(s) == self.values[facet_key]:
                        count += 1
                if count % 2:
                    violations.append((tau.key, s))
                if count not in (0, 2):
                    in_0_2 = False
        return PhaseReport(ok=not violations, violations=violations,
                           all_counts_in_0_2=in_0_2)

    # ---------- io ----------

    def to_json(self) -> str:
        n = self.tri.poly.n
        return json.dumps({
            "k": self.k,
            "phases": [
                {"simplex": list(key), "value": [(v >> j) & 1 for j in range(n)]}
                for key, v in sorted(self.values.items())
            ],
        })

    @classmethod
    def from_json(cls, tri: Triangulation, text: str) -> "RealPhaseStructure":
        data = json.loads(text)
        values = {
            tuple(sorted(ph["simplex"])): pack_mod2(ph["value"])
            for ph in data["phases"]
        }
        return cls(tri, data["k"], values)


# ---------- constructors ----------


def trivial_k0(tri: Triangulation) -> RealPhaseStructure:
    """The unique structure on vertices (all dual quotients are zero)."""
    return RealPhaseStructure(tri, 0, {s.key: 0 for s in tri.by_dim[0]})


def random_kn(tri: Triangulation, seed: int) -> RealPhaseStructure:
    """Arbitrary values on maximal simplices; always valid (no (n+1)-simplices)."""
    n = tri.poly.n
    rng = random.Random(seed)
    return RealPhaseStructure(
        tri, n, {s.key: rng.getrandbits(n) for s in tri.by_dim[n]}
    )


def from_sign_distribution(tri: Triangulation, signs) -> RealPhaseStructure:
    """Signs on lattice points -> phase structure on edges (k = 1)."""
    if len(signs) != len(tri.points):
        raise ValueError("need one sign per point")
    values = {}
    for e in tri.by_dim.get(1, []):
        v, w = e.key
        want = 1 ^ (signs[v] & 1) ^ (signs[w] & 1)  # value on the edge generator
        gen = e.tangent_basis_Z[0]
        mask = pack_mod2(gen)
        rep = 0 if want == 0 else (mask & -mask)  # any functional hitting the generator
        assert dot(rep, mask) == want
        values[e.key] = rep
    return RealPhaseStructure(tri, 1, values)


def to_sign_distribution(phase: RealPhaseStructure):
    """Phase structure on edges -> signs on points, zero at the smallest point.

    Walks the edge graph; a cycle inconsistency means the structure is not
    of sign type and raises.
    """
    if phase.k != 1:
        raise ValueError("sign distributions correspond to k = 1")
    tri = phase.tri
    edges = tri.by_dim.get(1, [])
    adj = {i: [] for i in range(len(tri.points))}
    for e in edges:
        v, w = e.key
        flip = 1 ^ dot(phase.values[e.key], pack_mod2(e.tangent_basis_Z[0]))
        # flip = eps(v) + eps(w)
        adj[v].append((w, flip))
        adj[w].append((v, flip))
    start = min(range(len(tri.points)), key=lambda i: tri.points[i])
    signs = [None] * len(tri.points)
    signs[start] = 0
    queue = [start]
    while queue:
        v = queue.pop()
        for w, flip in adj[v]:
            want = signs[v] ^ flip
            if signs[w] is None:
                signs[w] = want
                queue.append(w)
            elif signs[w] != want:
                raise ValueError("inconsistent cycle: structure is not of sign type")
    if any(s is None for s in signs):
        raise ValueError("edge graph does not reach every point")
    return signs


def enumerate_all(tri: Triangulation, k: int, limit: int = 24):
    """All valid phase structures on the k-skeleton by pruned depth-first search."""
    k_simplices = tri.by_dim.get(k, [])
    if len(k_simplices) > limit:
        raise ValueError(f"too many {k}-simplices ({len(k_simplices)} > {limit})")
    order = [s.key for s in k_simplices]
    pos = {key: idx for idx, key in enumerate(order)}
    reps = {s.key: _coset_reps(s.perp_F2) for s in k_simplices}
    # for pruning: (k+1)-simplices whose k-faces all sit within a prefix
    taus = tri.by_dim.get(k + 1, [])

    def parity_ok(assigned, upto):
        for tau in taus:
            fkeys = list(combinations(tau.key, k + 1))
            if any(pos[fk] > upto for fk in fkeys):
                continue
            for s in _coset_reps(tau.perp_F2):
                count = sum(
                    1 for fk in fkeys
                    if tri.simplices[fk].perp_F2.reduce(s) == assigned[fk]
                )
                if count % 2:
                    return False
        return True

    results = []
    assigned = {}

    def rec(idx):
        if idx == len(order):
            results.append(RealPhaseStructure(tri, k, dict(assigned)))
            return
        key = order[idx]
        for rep in reps[key]:
            assigned[key] = rep
            if parity_ok(assigned, idx):
                rec(idx + 1)
        del assigned[key]

    rec(0)
    return results


# ---------- the sign cosheaf ----------


class SignCosheaf:
    """Free F_2 spaces on the admissible residue sets over each cell pair."""

    def __init__(self, xi: XiPoset, phase: RealPhaseStructure):
        self.xi = xi
        self.phase = phase
        self.k = phase.k
        self._sets: dict[int, list[int]] = {}
        self._maps: dict[tuple[int, int], GF2Matrix] = {}

    def residues(self, i: int) -> list[int]:
        """E(F, sigma): residues in F^v matching the phase on some k-face of sigma.

        Residues are coordinates on F's tangent basis (dim F bits), sorted.
        """
        if i not in self._sets:
            fkey, skey = self.xi.elements[i]
            mF = self.xi.poly.faces[fkey].dim
            found = set()
            for tau_key in combinations(skey, self.k + 1):
                tau = self.xi.tri.simplices[tau_key]
                proj = self.xi.simplex_rows_in_face(tau_key, fkey)
                target = _eval_on_simplex(tau, self.phase.values[tau_key])
                for s in range(1 << mF):
                    if proj.mul_vec(s) == target:
                        found.add(s)
            self._sets[i] = sorted(found)
        return self._sets[i]

    def space_dim(self, i: int) -> int:
        return len(self.residues(i))

    def cover_map(self, j: int, i: int) -> GF2Matrix:
        key = (j, i)
        if key not in self._maps:
            fk_i, _ = self.xi.elements[i]
            fk_j, _ = self.xi.elements[j]
            src = self.residues(i)
            dst = self.residues(j)
            dst_pos = {s: r for r, s in enumerate(dst)}
            proj = None if fk_i == fk_j else self.xi.face_projection(fk_j, fk_i)
            rows = [0] * len(dst)
            for c, s in enumerate(src):
                t = s if proj is None else proj.mul_vec(s)
                if t not in dst_pos:
                    raise AssertionError(
                        "sign cosheaf: projected residue not admissible downstairs"
                    )
                rows[dst_pos[t]] |= 1 << c
            self._maps[key] = GF2Matrix(rows, len(src))
        return self._maps[key]
