"""The cell-pair poset, cosheaves and their chain complexes over F_2.

Elements of the poset are pairs (F, sigma): a face F of the polytope and a
simplex sigma of the triangulation contained in F.  The order is
(G, tau) <= (F, sigma)  iff  sigma <= tau <= G <= F  (reversed in the
simplex factor), graded by dim F - dim sigma.

A cosheaf assigns an F_2-space to each element and a linear map to each
order relation, functorially.  The associated chain complex sums the cover
maps; d^2 = 0 follows from the diamond property, which check_thin verifies
exhaustively.
"""

from __future__ import annotations

from itertools import combinations

from .gf2 import GF2Matrix, GF2Subspace, echelon, exterior_matrix, solve
from .polytope import LatticePolytope
from .triangulation import Triangulation


def check_thin(n_elements, grade, leq) -> bool:
    """Diamond property: every interval of length 2 has exactly 4 elements."""
    for i in range(n_elements):
        for j in range(n_elements):
            if grade(j) - grade(i) == 2 and i != j and leq(i, j):
                between = sum(
                    1 for z in range(n_elements)
                    if z != i and z != j and leq(i, z) and leq(z, j)
                )
                if between != 2:
                    return False
    return True


class XiPoset:
    """The poset of cell pairs (face of Delta, simplex of Gamma inside it)."""

    def __init__(self, poly: LatticePolytope, tri: Triangulation):
        self.poly = poly
        self.tri = tri
        self.elements: list[tuple[tuple, tuple]] = []  # (face key, simplex key)
        for d in range(poly.n + 1):
            for F in poly.faces_by_dim[d]:
                fset = set(F.key)
                for sd in sorted(tri.by_dim):
                    for s in tri.by_dim[sd]:
                        if set(s.min_face_key) <= fset:
                            self.elements.append((F.key, s.key))
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.grades = [
            poly.faces[f].dim - tri.simplices[s].dim for f, s in self.elements
        ]
        self._down: dict[int, list[int]] = {}
        self._up: dict[int, list[int]] | None = None
        self._coords_cache: dict = {}
        self._proj_cache: dict = {}
        self._rows_cache: dict = {}
        self._perp_cache: dict = {}

    def __len__(self):
        return len(self.elements)

    @property
    def n_elements(self):
        return len(self.elements)

    def grade(self, i):
        return self.grades[i]

    def leq(self, i, j) -> bool:
        gk, tk = self.elements[i]
        fk, sk = self.elements[j]
        return set(sk) <= set(tk) and set(gk) <= set(fk)

    def down_covers(self, i):
        if i not in self._down:
            fk, sk = self.elements[i]
            F = self.poly.faces[fk]
            s = self.tri.simplices[sk]
            out = []
            # same face, simplex grows by one vertex
            fset = set(fk)
            for t in self.tri.by_dim.get(s.dim + 1, []):
                if set(sk) < set(t.key) and (fk, t.key) in self.index:
                    out.append(self.index[(fk, t.key)])
            # face drops to a child containing the simplex
            for G in self.poly.children(F):
                if (G.key, sk) in self.index:
                    out.append(self.index[(G.key, sk)])
            self._down[i] = sorted(out)
        return self._down[i]

    def up_covers(self, i):
        if self._up is None:
            self._up = {j: [] for j in range(len(self.elements))}
            for x in range(len(self.elements)):
                for y in self.down_covers(x):
                    self._up[y].append(x)
        return self._up[i]

    def open_star(self, i):
        """The minimal open set containing element i: everything above it."""
        return [j for j in range(len(self.elements)) if self.leq(i, j)]

    def is_open(self, subset) -> bool:
        sub = set(subset)
        return all(
            j in sub
            for i in sub
            for j in range(len(self.elements))
            if self.leq(i, j)
        )

    # ---------- mod-2 geometry shared by the cosheaves ----------

    def face_coords(self, fkey, mask: int) -> int:
        """Coordinates of an n-bit tangent vector in the face's F_2 basis."""
        key = (fkey, mask)
        if key not in self._coords_cache:
            masks = [b for b in self._face_masks(fkey)]
            c = solve(masks, mask)
            if c is None:
                raise ValueError("vector not tangent to face")
            self._coords_cache[key] = c
        return self._coords_cache[key]

    def _face_masks(self, fkey):
        from .polytope import pack_mod2
        return [pack_mod2(b) for b in self.poly.faces[fkey].tangent_basis_Z]

    def _simplex_masks(self, skey):
        from .polytope import pack_mod2
        return [pack_mod2(b) for b in self.tri.simplices[skey].tangent_basis_Z]

    def face_projection(self, gkey, fkey) -> GF2Matrix:
        """V_F -> V_G on the functional side, G a face inside F.

        Row i is G's i-th tangent basis vector written in F's basis; the
        same matrix also maps F^v -> G^v.
        """
        key = (gkey, fkey)
        if key not in self._proj_cache:
            mF = self.poly.faces[fkey].dim
            rows = [self.face_coords(fkey, m) for m in self._face_masks(gkey)]
            self._proj_cache[key] = GF2Matrix(rows, mF)
        return self._proj_cache[key]

    def simplex_rows_in_face(self, skey, fkey) -> GF2Matrix:
        """The simplex's tangent basis written in the face's F_2 basis."""
        key = (skey, fkey)
        if key not in self._rows_cache:
            mF = self.poly.faces[fkey].dim
            rows = [self.face_coords(fkey, m) for m in self._simplex_masks(skey)]
            self._rows_cache[key] = GF2Matrix(rows, mF)
        return self._rows_cache[key]

    def perp_in_face(self, skey, fkey) -> GF2Subspace:
        """tau^perp / F^perp as a subspace of the dual of V_F."""
        key = (skey, fkey)
        if key not in self._perp_cache:
            mF = self.poly.faces[fkey].dim
            mat = self.simplex_rows_in_face(skey, fkey)
            self._perp_cache[key] = GF2Subspace.from_vectors(mF, mat.kernel_basis())
        return self._perp_cache[key]


class ConstantCosheaf:
    """The constant cosheaf F_2 with identity maps (for oracle tests)."""

    def __init__(self, poset):
        self.poset = poset

    def space_dim(self, i):
        return 1

    def cover_map(self, j, i):
        return GF2Matrix.identity(1)


class ChainComplex:
    """Graded F_2 spaces with boundary maps; d^2 = 0 asserted on build."""

    def __init__(self, dims: dict[int, int], boundary: dict[int, GF2Matrix], check=True):
        self.dims = dict(dims)
        self.boundary = dict(boundary)
        self.top = max(self.dims) if self.dims else -1
        self._ranks: dict[int, int] = {}
        if check:
            for q, d in self.boundary.items():
                if q - 1 in self.boundary and self.dims.get(q - 1, 0) and self.dims.get(q, 0):
                    prod = self.boundary[q - 1] @ d
                    if not prod.is_zero():
                        raise AssertionError(f"d^2 != 0 at degree {q}")

    def boundary_rank(self, q) -> int:
        if q not in self._ranks:
            m = self.boundary.get(q)
            self._ranks[q] = m.rank() if m is not None else 0
        return self._ranks[q]

    def homology_ranks(self) -> list[int]:
        out = []
        for q in range(self.top + 1):
            out.append(
                self.dims.get(q, 0) - self.boundary_rank(q) - self.boundary_rank(q + 1)
            )
        return out

    def euler(self) -> int:
        return sum((-1) ** q * d for q, d in self.dims.items())

    def homology_basis(self, q) -> "QuotientBasis":
        return homology_basis(self, q)


class QuotientBasis:
    """An echelon basis of (kernel vectors) / (image vectors) with coordinates."""

    def __init__(self, ambient_dim, kernel_vectors, image_vectors):
        self.image = GF2Subspace.from_vectors(ambient_dim, image_vectors)
        reduced = [self.image.reduce(v) for v in kernel_vectors]
        self.reps = echelon(reduced)
        self._space = GF2Subspace(ambient_dim, tuple(self.reps))

    @property
    def dim(self):
        return len(self.reps)

    def coords(self, vector: int) -> int:
        """Class coordinates of a vector in the chosen representative basis."""
        return self._space.coords(self.image.reduce(vector))


def homology_basis(cc: ChainComplex, q: int) -> QuotientBasis:
    """Cycle representatives of H_q plus coordinates of cycles in them."""
    dim_q = cc.dims.get(q, 0)
    bq = cc.boundary.get(q)
    if bq is not None and dim_q:
        kernel = bq.kernel_basis()
    else:
        kernel = [1 << i for i in range(dim_q)]
    bq1 = cc.boundary.get(q + 1)
    image = [bq1.mul_vec(1 << j) for j in range(bq1.ncols)] if bq1 is not None else []
    return QuotientBasis(dim_q, kernel, image)


def cohomology_basis(cc: ChainComplex, q: int) -> QuotientBasis:
    """Cocycle representatives of H^q of the dual (transposed) complex.

    Cochains live in the same coordinate space as C_q; the coboundary is
    the transpose of the boundary one degree up.
    """
    dim_q = cc.dims.get(q, 0)
    bq1 = cc.boundary.get(q + 1)
    if bq1 is not None and dim_q:
        kernel = bq1.transpose().kernel_basis()
    else:
        kernel = [1 << i for i in range(dim_q)]
    bq = cc.boundary.get(q)
    if bq is not None:
        bt = bq.transpose()
        image = [bt.mul_vec(1 << j) for j in range(bt.ncols)]
    else:
        image = []
    return QuotientBasis(dim_q, kernel, image)


class ComposedMaps:
    """Cosheaf maps between arbitrary comparable elements, composed on covers."""

    def __init__(self, poset, cosheaf):
        self.poset = poset
        self.cosheaf = cosheaf
        self._cache: dict[tuple[int, int], GF2Matrix] = {}

    def map(self, y, x) -> GF2Matrix:
        if y == x:
            return GF2Matrix.identity(self.cosheaf.space_dim(x))
        key = (y, x)
        if key not in self._cache:
            for z in self.poset.down_covers(x):
                if z == y or self.poset.leq(y, z):
                    step = self.cosheaf.cover_map(z, x)
                    self._cache[key] = self.map(y, z) @ step
                    break
            else:
                raise ValueError(f"elements {y} and {x} are not comparable")
        return self._cache[key]


def chain_complex(poset, cosheaf, restrict_to=None, check_functorial=True) -> ChainComplex:
    """Assemble the chain complex of a cosheaf on a graded poset.

    poset needs n_elements / grade(i) / down_covers(i); restrict_to is an
    upward-closed element set (an open set), default everything.
    """
    n = poset.n_elements
    if restrict_to is None:
        members = list(range(n))
    else:
        members = sorted(restrict_to)
        if hasattr(poset, "is_open") and not poset.is_open(members):
            raise ValueError("restriction set is not open (upward closed)")
    member_set = set(members)
    offsets = {}
    dims = {}
    for i in members:
        q = poset.grade(i)
        offsets[i] = dims.get(q, 0)
        dims[q] = dims.get(q, 0) + cosheaf.space_dim(i)
    if not dims:
        cc = ChainComplex({0: 0}, {})
        cc.offsets = {}
        return cc
    top = max(dims)
    for q in range(top + 1):
        dims.setdefault(q, 0)
    boundary = {}
    for q in range(1, top + 1):
        rows = [0] * dims.get(q - 1, 0)
        for x in members:
            if poset.grade(x) != q:
                continue
            for y in poset.down_covers(x):
                if y not in member_set:
                    continue
                blk = cosheaf.cover_map(y, x)
                for r in range(blk.nrows):
                    rows[offsets[y] + r] ^= blk.rows[r] << offsets[x]
        boundary[q] = GF2Matrix(rows, dims[q])
    if check_functorial:
        _check_functorial(poset, cosheaf, member_set)
    cc = ChainComplex(dims, boundary)
    cc.offsets = offsets  # element id -> start bit within its degree
    return cc


def _check_functorial(poset, cosheaf, member_set):
    """Both cover paths through every diamond must compose equally."""
    for x in member_set:
        paths = {}
        for y in poset.down_covers(x):
            if y not in member_set:
                continue
            top_map = cosheaf.cover_map(y, x)
            for z in poset.down_covers(y):
                if z not in member_set:
                    continue
                comp = cosheaf.cover_map(z, y) @ top_map
                if z in paths:
                    if paths[z].rows != comp.rows:
                        raise AssertionError(
                            f"cosheaf not functorial on diamond {z} < .. < {x}"
                        )
                else:
                    paths[z] = comp


# ---------- toric oracles ----------


class _FaceLatticePoset:
    """The face lattice of a polytope as a chain_complex-compatible poset."""

    def __init__(self, poly: LatticePolytope):
        self.poly = poly
        self.faces = [f for d in range(poly.n + 1) for f in poly.faces_by_dim[d]]
        self.index = {f.key: i for i, f in enumerate(self.faces)}

    @property
    def n_elements(self):
        return len(self.faces)

    def grade(self, i):
        return self.faces[i].dim

    def leq(self, i, j):
        return set(self.faces[i].key) <= set(self.faces[j].key)

    def down_covers(self, i):
        return sorted(
            self.index[g.key] for g in self.poly.children(self.faces[i])
        )


class _ToricCosheaf:
    """F -> Lambda^p of V_F with projection maps (full wedge spaces)."""

    def __init__(self, lattice: _FaceLatticePoset, xi: XiPoset, p: int):
        self.lattice = lattice
        self.xi = xi
        self.p = p

    def space_dim(self, i):
        from math import comb
        return comb(self.lattice.faces[i].dim, self.p)

    def cover_map(self, j, i):
        proj = self.xi.face_projection(
            self.lattice.faces[j].key, self.lattice.faces[i].key
        )
        return exterior_matrix(proj, self.p)


def toric_face_complex(poly: LatticePolytope, tri: Triangulation, p: int,
                       xi: XiPoset | None = None) -> ChainComplex:
    """Independent oracle: the complex of full wedge powers over the face lattice.

    Its homology is concentrated in degree p with rank the p-th entry of the
    toric h-vector.
    """
    lattice = _FaceLatticePoset(poly)
    xi = xi or XiPoset(poly, tri)
    return chain_complex(lattice, _ToricCosheaf(lattice, xi, p))


def toric_hpp(poly: LatticePolytope) -> list[int]:
    """h-vector oracle: coefficient of t^p in sum over faces of (t-1)^dim F."""
    n = poly.n
    coeffs = [0] * (n + 1)
    from math import comb
    for d in range(n + 1):
        for _ in poly.faces_by_dim[d]:
            for p in range(d + 1):
                coeffs[p] += comb(d, p) * (-1) ** (d - p)
    return coeffs
