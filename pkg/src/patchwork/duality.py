"""Order complexes, the flag comparison map, cap products and duality checks.

The order complex of the cell-pair poset carries two flag families for an
open (upward-closed) set U: flags entirely inside U, and flags anywhere
whose largest element lies in U.  Chains with cosheaf coefficients on the
latter compare to cellular chains on U via the map alpha -> (X -> alpha(last X)),
and the cap product against the fundamental class realizes duality between
the cohomology of the former and the homology of the latter.
"""

from __future__ import annotations

from math import comb

from .cellpairs import (ChainComplex, ComposedMaps, QuotientBasis, XiPoset,
                        chain_complex, cohomology_basis, homology_basis)
from .gf2 import GF2Matrix, contract
from .hodgecosheaf import FpkCosheaf


class FlagPoset:
    """A family of flags of the cell-pair poset, ordered by flag refinement."""

    def __init__(self, xi: XiPoset, flags):
        self.xi = xi
        self.flags = sorted(set(flags), key=lambda f: (len(f), f))
        self.index = {f: i for i, f in enumerate(self.flags)}
        self._down: dict[int, list[int]] = {}

    @property
    def n_elements(self):
        return len(self.flags)

    def grade(self, i):
        return len(self.flags[i]) - 1

    def leq(self, i, j):
        fi, fj = self.flags[i], self.flags[j]
        return set(fi) <= set(fj)

    def down_covers(self, i):
        if i not in self._down:
            f = self.flags[i]
            out = []
            for drop in range(len(f)):
                sub = f[:drop] + f[drop + 1:]
                if sub and sub in self.index:
                    out.append(self.index[sub])
            self._down[i] = sorted(out)
        return self._down[i]


class FlagCosheaf:
    """Coefficients on flags: the base cosheaf evaluated at the largest element."""

    def __init__(self, flag_poset: FlagPoset, base, composed: ComposedMaps):
        self.fp = flag_poset
        self.base = base
        self.composed = composed

    def space_dim(self, i):
        return self.base.space_dim(self.fp.flags[i][-1])

    def cover_map(self, j, i):
        fi, fj = self.fp.flags[i], self.fp.flags[j]
        if fj == fi[:-1]:
            return self.composed.map(fj[-1], fi[-1])
        return GF2Matrix.identity(self.space_dim(i))


def enumerate_flags(xi: XiPoset, last_in, elements_in=None):
    """All flags with largest element in last_in, drawn from elements_in."""
    pool = sorted(elements_in) if elements_in is not None else list(range(len(xi)))
    last_set = set(last_in)
    above = {
        i: [j for j in pool if j != i and xi.leq(i, j)] for i in pool
    }
    flags = []

    def rec(chain):
        if chain[-1] in last_set:
            flags.append(tuple(chain))
        for j in above[chain[-1]]:
            rec(chain + [j])

    for i in pool:
        rec([i])
    return flags


class FlagComplex:
    """A flag family with its cosheaf chain complex and coordinate offsets."""

    def __init__(self, xi: XiPoset, flags, base_cosheaf, check_functorial=False):
        self.poset = FlagPoset(xi, flags)
        self.base = base_cosheaf
        self.composed = ComposedMaps(xi, base_cosheaf)
        self.sheaf = FlagCosheaf(self.poset, base_cosheaf, self.composed)
        self.cc = chain_complex(self.poset, self.sheaf,
                                check_functorial=check_functorial)

    def vector_from_chain(self, chain: dict) -> int:
        """Pack {flag: coefficient coords} into one degree's coordinate vector."""
        acc = 0
        for flag, coords in chain.items():
            acc |= coords << self.cc.offsets[self.poset.index[flag]]
        return acc

    def chain_from_vector(self, vec: int, degree: int) -> dict:
        out = {}
        for i, flag in enumerate(self.poset.flags):
            if len(flag) - 1 != degree:
                continue
            d = self.sheaf.space_dim(i)
            coords = (vec >> self.cc.offsets[i]) & ((1 << d) - 1)
            if coords:
                out[flag] = coords
        return out


def open_complexes(xi: XiPoset, U, cosheaf_O, cosheaf_K):
    """The pair (flags inside U with cosheaf_O, flags ending in U with cosheaf_K)."""
    U = sorted(U)
    o_flags = enumerate_flags(xi, U, U)
    k_flags = enumerate_flags(xi, U)
    return FlagComplex(xi, o_flags, cosheaf_O), FlagComplex(xi, k_flags, cosheaf_K)


# ---------- the comparison (Bar) map ----------


def bar_matrix(xi: XiPoset, cellular_cc: ChainComplex, flag_complex: FlagComplex,
               degree: int, members) -> GF2Matrix:
    """Cellular q-chains to flag q-chains: coefficient copied to every full flag."""
    src_dim = cellular_cc.dims.get(degree, 0)
    dst_dim = flag_complex.cc.dims.get(degree, 0)
    rows = [0] * dst_dim
    for i, flag in enumerate(flag_complex.poset.flags):
        if len(flag) - 1 != degree:
            continue
        x = flag[-1]
        if xi.grade(x) != degree or x not in members:
            continue
        d = flag_complex.sheaf.space_dim(i)
        for r in range(d):
            rows[flag_complex.cc.offsets[i] + r] |= 1 << (cellular_cc.offsets[x] + r)
    return GF2Matrix(rows, src_dim)


def verify_bar(xi: XiPoset, cosheaf, U=None) -> bool:
    """Chain-map property and rank preservation of the comparison map on U."""
    U = sorted(U) if U is not None else list(range(len(xi)))
    if hasattr(xi, "is_open") and not xi.is_open(U):
        raise ValueError("U is not open")
    cellular = chain_complex(xi, cosheaf, restrict_to=U, check_functorial=False)
    flags = FlagComplex(xi, enumerate_flags(xi, U), cosheaf)
    if cellular.homology_ranks() != flags.cc.homology_ranks():
        return False
    members = set(U)
    top = max(cellular.dims)
    mats = {q: bar_matrix(xi, cellular, flags, q, members) for q in range(top + 1)}
    for q in range(1, top + 1):
        lhs = flags.cc.boundary.get(q)
        if lhs is None:
            continue
        left = lhs @ mats[q]
        right = mats[q - 1] @ cellular.boundary[q]
        if left.rows != right.rows:
            return False
    return True


# ---------- cap product ----------


def _lift_functional(space, coords: int) -> int:
    """Extend a functional on a subspace to the ambient wedge space.

    Works because the echelon basis is fully reduced: the dual vector
    supported on the pivots restricts to the given coordinates.
    """
    psi = 0
    for j, b in enumerate(space.basis):
        if (coords >> j) & 1:
            psi |= b & -b
    return psi


def cap_product(xi: XiPoset, U, phi: dict, alpha: dict, q: int, q_prime: int,
                fam_p: FpkCosheaf, fam_pp: FpkCosheaf, fam_diff: FpkCosheaf,
                composed_diff: ComposedMaps) -> dict:
    """The chain sum of transported contractions over flags of length q'.

    phi: cochain on flags inside U of length q, coords in fam_p spaces;
    alpha: chain on flags ending in U of length q', coords in fam_pp spaces.
    Result: chain on flags ending in U of length q'-q with fam_diff coords.
    """
    p, pp = fam_p.p, fam_pp.p
    if fam_diff.p != pp - p:
        raise ValueError("degree mismatch")
    if q > q_prime:
        return {}
    U = set(U)
    out: dict = {}
    for flag, a in alpha.items():
        if len(flag) - 1 != q_prime or not a:
            continue
        cut = q_prime - q
        if flag[cut] not in U:
            continue
        g = phi.get(flag[cut:], 0)
        if not g:
            continue
        x = flag[-1]
        fkey, _ = xi.elements[x]
        mF = xi.poly.faces[fkey].dim
        w = fam_pp.space(x).from_coords(a)
        psi = _lift_functional(fam_p.space(x), g)
        contr = contract(psi, w, mF, p, pp)
        c = fam_diff.space(x).coords(contr)  # membership asserted here
        c = composed_diff.map(flag[cut], x).mul_vec(c)
        if c:
            key = flag[: cut + 1]
            out[key] = out.get(key, 0) ^ c
            if not out[key]:
                del out[key]
    return out


def leibniz_residual(xi: XiPoset, U, k: int, p: int, pp: int, q: int, q_prime: int,
                     phi_vec: int, alpha_vec: int) -> int:
    """d(phi cap alpha) + phi cap d(alpha) + (delta phi) cap alpha, as a vector.

    Zero for every cochain phi and chain alpha; exercised on random inputs.
    """
    U = sorted(U)
    fam_p = FpkCosheaf(xi, p, k)
    fam_pp = FpkCosheaf(xi, pp, k)
    fam_diff = FpkCosheaf(xi, pp - p, k)
    composed_diff = ComposedMaps(xi, fam_diff)
    oc = FlagComplex(xi, enumerate_flags(xi, U, U), fam_p)
    k_flags = enumerate_flags(xi, U)
    kc_pp = FlagComplex(xi, k_flags, fam_pp)
    kc_diff = FlagComplex(xi, k_flags, fam_diff)

    phi = oc.chain_from_vector(phi_vec, q)
    alpha = kc_pp.chain_from_vector(alpha_vec, q_prime)

    res = kc_diff.vector_from_chain(cap_product(
        xi, U, phi, alpha, q, q_prime, fam_p, fam_pp, fam_diff, composed_diff))
    b = kc_diff.cc.boundary.get(q_prime - q)
    res = b.mul_vec(res) if b is not None else 0

    b = kc_pp.cc.boundary.get(q_prime)
    d_alpha = kc_pp.chain_from_vector(
        b.mul_vec(alpha_vec) if b is not None else 0, q_prime - 1)
    res ^= kc_diff.vector_from_chain(cap_product(
        xi, U, phi, d_alpha, q, q_prime - 1, fam_p, fam_pp, fam_diff, composed_diff))

    b = oc.cc.boundary.get(q + 1)
    delta_phi = oc.chain_from_vector(
        b.transpose().mul_vec(phi_vec) if b is not None else 0, q + 1)
    res ^= kc_diff.vector_from_chain(cap_product(
        xi, U, delta_phi, alpha, q + 1, q_prime, fam_p, fam_pp, fam_diff,
        composed_diff))
    return res


# ---------- fundamental class and duality ----------


def fundamental_class(xi: XiPoset, k: int, fam_m: FpkCosheaf | None = None) -> dict:
    """The top cycle: each (whole polytope, k-simplex) pair with its volume form."""
    m = xi.poly.n - k
    fam_m = fam_m or FpkCosheaf(xi, m, k)
    top_key = xi.poly.top.key
    omega = {}
    for s in xi.tri.by_dim.get(k, []):
        i = xi.index[(top_key, s.key)]
        space = fam_m.space(i)
        assert space.dim == 1, "volume space is not one-dimensional"
        omega[i] = 1
    return omega


def omega_boundary_is_zero(xi: XiPoset, k: int) -> bool:
    m = xi.poly.n - k
    fam = FpkCosheaf(xi, m, k)
    cc = chain_complex(xi, fam, check_functorial=False)
    omega = fundamental_class(xi, k, fam)
    vec = 0
    for i, coords in omega.items():
        vec |= coords << cc.offsets[i]
    bm = cc.boundary.get(m)
    return bm is None or bm.mul_vec(vec) == 0


def bar_omega_chain(xi: XiPoset, k: int, flag_complex: FlagComplex,
                    fam_m: FpkCosheaf) -> dict:
    """Omega pushed to flag chains of length m ending in the flag family."""
    m = xi.poly.n - k
    omega = fundamental_class(xi, k, fam_m)
    chain = {}
    for flag in flag_complex.poset.flags:
        if len(flag) - 1 == m and flag[-1] in omega:
            chain[flag] = omega[flag[-1]]
    return chain


def verify_pd(xi: XiPoset, k: int, p: int, q: int, U=None) -> bool:
    """Bijectivity of capping with the fundamental class on homology over U."""
    n = xi.poly.n
    m = n - k
    U = sorted(U) if U is not None else list(range(len(xi)))
    fam_p = FpkCosheaf(xi, p, k)
    fam_mp = FpkCosheaf(xi, m - p, k)
    fam_m = FpkCosheaf(xi, m, k)
    oc, kc = open_complexes(xi, U, fam_p, fam_mp)
    coh = cohomology_basis(oc.cc, q)
    hom = homology_basis(kc.cc, m - q)
    if coh.dim != hom.dim:
        return False
    if coh.dim == 0:
        return True
    kc_omega = FlagComplex(xi, kc.poset.flags, fam_m)
    omega_chain = bar_omega_chain(xi, k, kc_omega, fam_m)
    composed = ComposedMaps(xi, fam_mp)
    cols = []
    for rep in coh.reps:
        phi = oc.chain_from_vector(rep, q)
        capped = cap_product(xi, U, phi, omega_chain, q, m,
                             fam_p, fam_m, fam_mp, composed)
        vec = kc.vector_from_chain(capped)
        cols.append(hom.coords(vec))
    rank = GF2Matrix(cols, hom.dim).rank()
    return rank == coh.dim


def dual_cohomology(xi: XiPoset, p: int, k: int, U=None) -> list[int]:
    """Cohomology ranks of the dual sheaf on flags inside U."""
    U = sorted(U) if U is not None else list(range(len(xi)))
    fam = FpkCosheaf(xi, p, k)
    oc = FlagComplex(xi, enumerate_flags(xi, U, U), fam)
    top = max(oc.cc.dims)
    return [cohomology_basis(oc.cc, q).dim for q in range(top + 1)]
