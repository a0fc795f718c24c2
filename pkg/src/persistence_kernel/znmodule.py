"""Finitely determined modules over Z^n and the operations on them.

A module is stored on a box.  Its value at any point of Z^n is the value at
the nearest point of the box (coordinatewise clamping) and the structure maps
that leave the box are identities.  Every operation below returns a module in
the same representation, so results can be fed back in.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import (
    BoxNotDetermining,
    DimensionMismatch,
    NonCommuting,
    NotAHomomorphism,
    NotComparable,
)
from .lattice import (
    DownsetZn,
    LatticeBox,
    Point,
    UpsetZn,
    add_unit,
    all_faces,
    complement,
    embed,
    leq,
    require_determining,
)
from .linalg import (
    RatMatrix,
    block_diag,
    complement_basis,
    hstack,
    image_basis,
    intersect_spaces,
    inverse,
    kernel_basis,
    rank,
    solve,
    sum_spaces,
    to_fraction,
    vstack,
)

Spaces = dict  # point -> RatMatrix whose columns span a subspace of M at that point


class FdModule:
    """Finitely determined Z^n-module.

    ``dims`` maps box points to vector space dimensions (missing points are
    zero).  ``steps`` maps ``(point, axis)`` to the matrix of multiplication
    by the axis variable, from the point to its neighbour one unit up; missing
    steps are zero matrices.
    """

    def __init__(self, box: LatticeBox, dims: Mapping, steps: Mapping | None = None, check: bool = True):
        self.box = box
        self.n = box.n
        self.dims = {p: int(dims.get(p, 0)) for p in box.points()}
        extra = set(dims) - set(self.dims)
        if any(dims[p] for p in extra):
            raise DimensionMismatch(f"dimensions given outside the box: {sorted(extra)[:3]}")
        self.steps: dict = {}
        steps = steps or {}
        for (p, i), mat in steps.items():
            q = add_unit(p, i)
            if p not in box or q not in box:
                raise DimensionMismatch(f"step at {p} along axis {i} leaves the box")
            if mat.shape != (self.dims[q], self.dims[p]):
                raise DimensionMismatch(
                    f"step at {p} along axis {i} has shape {mat.shape}, expected {(self.dims[q], self.dims[p])}"
                )
            self.steps[(p, i)] = mat
        for p in box.points():
            for i in range(self.n):
                q = add_unit(p, i)
                if q in box and (p, i) not in self.steps:
                    self.steps[(p, i)] = RatMatrix.zeros(self.dims[q], self.dims[p])
        self._maps_cache: dict = {}
        if check:
            self.check_commutes()

    # basic data

    def check_commutes(self) -> None:
        for p in self.box.points():
            for i in range(self.n):
                for j in range(i + 1, self.n):
                    pij = add_unit(add_unit(p, i), j)
                    if pij not in self.box:
                        continue
                    a = self.steps[(add_unit(p, i), j)] @ self.steps[(p, i)]
                    b = self.steps[(add_unit(p, j), i)] @ self.steps[(p, j)]
                    if a != b:
                        raise NonCommuting(f"square at {p} on axes {i},{j} does not commute")

    def dim(self, x: Sequence[int]) -> int:
        if len(x) != self.n:
            raise DimensionMismatch(f"point {tuple(x)} is not in Z^{self.n}")
        return self.dims[self.box.clamp(x)]

    hilbert = dim

    def step(self, p: Sequence[int], axis: int) -> RatMatrix:
        """Multiplication by the axis variable out of degree p, anywhere in Z^n."""
        a = self.box.clamp(p)
        b = self.box.clamp(add_unit(tuple(p), axis))
        if a == b:
            return RatMatrix.identity(self.dims[a])
        return self.steps[(a, axis)]

    def _maps_from(self, p: Point) -> dict:
        cached = self._maps_cache.get(p)
        if cached is not None:
            return cached
        out = {p: RatMatrix.identity(self.dims[p])}
        for q in self.box.points():
            if q == p or not leq(p, q):
                continue
            axis = next(i for i in range(self.n) if q[i] > p[i])
            prev = add_unit(q, axis, -1)
            out[q] = self.steps[(prev, axis)] @ out[prev]
        self._maps_cache[p] = out
        return out

    def structure_map(self, a: Sequence[int], b: Sequence[int]) -> RatMatrix:
        a, b = tuple(a), tuple(b)
        if len(a) != self.n or len(b) != self.n:
            raise DimensionMismatch("points do not live in the module's lattice")
        if not leq(a, b):
            raise NotComparable(f"{a} is not below {b}")
        ca, cb = self.box.clamp(a), self.box.clamp(b)
        return self._maps_from(ca)[cb]

    def rank_function(self, a: Sequence[int], b: Sequence[int]) -> int:
        return rank(self.structure_map(a, b))

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def __repr__(self) -> str:
        return f"FdModule(n={self.n}, box={self.box.lo}..{self.box.hi}, total_dim={self.total_dim()})"

    # constructors

    @classmethod
    def zero(cls, box: LatticeBox) -> "FdModule":
        return cls(box, {}, {}, check=False)

    @classmethod
    def indicator(cls, points: Iterable[Point], box: LatticeBox) -> "FdModule":
        """k[S] for a set S of box points that is convex (an upset meet a downset)."""
        pts = frozenset(points)
        dims = {p: 1 for p in pts}
        steps = {}
        one = RatMatrix.identity(1)
        for p in pts:
            for i in range(box.n):
                q = add_unit(p, i)
                if q in pts:
                    steps[(p, i)] = one
        return cls(box, dims, steps)

    @classmethod
    def from_upset(cls, upset: UpsetZn, box: LatticeBox) -> "FdModule":
        require_determining(box, [upset])
        return cls.indicator(upset.points_in(box), box)

    @classmethod
    def from_downset(cls, downset: DownsetZn, box: LatticeBox) -> "FdModule":
        require_determining(box, [downset])
        return cls.indicator(downset.points_in(box), box)

    @classmethod
    def from_presentation(cls, box: LatticeBox, generators: Sequence[Sequence[int]], relations: Sequence = ()) -> "FdModule":
        """Cokernel of a map of free modules.

        ``generators`` lists the degrees of the free generators.  Each relation
        is ``(degree, coefficients)`` and stands for the element
        sum_j coefficients[j] * x^(degree - g_j) e_j; coefficients of
        generators not below the degree must vanish.
        """
        gens = [tuple(g) for g in generators]
        rels = [(tuple(d), [to_fraction(c) for c in coeffs]) for d, coeffs in relations]
        for g in gens:
            if not all(lo < x <= hi for lo, x, hi in zip(box.lo, g, box.hi)):
                raise BoxNotDetermining(f"generator degree {g} needs lo < g <= hi")
        for d, coeffs in rels:
            if len(coeffs) != len(gens):
                raise DimensionMismatch("relation has the wrong number of coefficients")
            if not leq(d, box.hi):
                raise BoxNotDetermining(f"relation degree {d} lies above the box")
            for g, c in zip(gens, coeffs):
                if c != 0 and not leq(g, d):
                    raise DimensionMismatch(f"relation at {d} uses generator at {g}")
        active = {p: [j for j, g in enumerate(gens) if leq(g, p)] for p in box.points()}
        dims = {p: len(a) for p, a in active.items()}
        steps = {}
        for p in box.points():
            for i in range(box.n):
                q = add_unit(p, i)
                if q in box:
                    rows = [[1 if a == b else 0 for b in active[p]] for a in active[q]]
                    steps[(p, i)] = RatMatrix(len(active[q]), len(active[p]), rows)
        free = cls(box, dims, steps, check=False)
        spaces = {}
        for p in box.points():
            cols = [[c for j, c in enumerate(coeffs) if j in active[p]] for d, coeffs in rels if leq(d, p)]
            spaces[p] = image_basis(RatMatrix.from_columns(cols, len(active[p]))) if cols else RatMatrix(dims[p], 0)
        return quotient(free, spaces)[0]

    def rebox(self, box: LatticeBox) -> "FdModule":
        """The same module stored on a larger box."""
        if not box.contains_box(self.box):
            raise BoxNotDetermining("rebox only enlarges the box")
        if box == self.box:
            return self
        dims = {p: self.dims[self.box.clamp(p)] for p in box.points()}
        steps = {}
        for p in box.points():
            for i in range(box.n):
                q = add_unit(p, i)
                if q in box:
                    steps[(p, i)] = self.step(p, i)
        return FdModule(box, dims, steps, check=False)

    def to_poset_data(self):
        """Box points with dimensions and the full table of structure maps."""
        return {p: self._maps_from(p) for p in self.box.points()}


def direct_sum(*mods: FdModule) -> FdModule:
    if not mods:
        raise DimensionMismatch("direct sum of nothing")
    box = mods[0].box
    for m in mods[1:]:
        box = box.union(m.box)
    mods = [m.rebox(box) for m in mods]
    dims = {p: sum(m.dims[p] for m in mods) for p in box.points()}
    steps = {k: block_diag([m.steps[k] for m in mods]) for k in mods[0].steps}
    return FdModule(box, dims, steps, check=False)


def change_basis(m: FdModule, mats: Mapping) -> FdModule:
    """Isomorphic copy of m where the new basis at p is mats[p]^-1 of the old."""
    inv = {p: inverse(mats[p]) for p in m.box.points()}
    steps = {(p, i): mats[add_unit(p, i)] @ s @ inv[p] for (p, i), s in m.steps.items()}
    return FdModule(m.box, m.dims, steps, check=False)


def same_box(*mods: FdModule) -> list[FdModule]:
    box = mods[0].box
    for m in mods[1:]:
        box = box.union(m.box)
    return [m.rebox(box) for m in mods]


# submodules, quotients and homomorphisms

def submodule(m: FdModule, spaces: Spaces) -> tuple[FdModule, "ModuleHom"]:
    """The submodule spanned by ``spaces`` and its inclusion into m."""
    sp = {p: spaces.get(p, RatMatrix(m.dims[p], 0)) for p in m.box.points()}
    dims = {p: s.cols for p, s in sp.items()}
    steps = {}
    for (p, i), st in m.steps.items():
        q = add_unit(p, i)
        x = solve(sp[q], st @ sp[p])
        if x is None:
            raise NotAHomomorphism(f"subspace at {p} is not carried into the subspace at {q}")
        steps[(p, i)] = x
    sub = FdModule(m.box, dims, steps, check=False)
    return sub, ModuleHom(sub, m, sp, check=False)


def quotient(m: FdModule, spaces: Spaces) -> tuple[FdModule, "ModuleHom"]:
    """m modulo the submodule spanned by ``spaces``, with the projection."""
    sp = {p: spaces.get(p, RatMatrix(m.dims[p], 0)) for p in m.box.points()}
    comp = {p: complement_basis(sp[p], m.dims[p]) for p in m.box.points()}
    proj = {}
    for p in m.box.points():
        full = hstack([sp[p], comp[p]], rows=m.dims[p])
        inv = inverse(full) if m.dims[p] else RatMatrix(0, 0)
        proj[p] = inv.select_rows(range(sp[p].cols, m.dims[p]))
    dims = {p: comp[p].cols for p in m.box.points()}
    steps = {}
    for (p, i), st in m.steps.items():
        q = add_unit(p, i)
        if solve(sp[q], st @ sp[p]) is None:
            raise NotAHomomorphism(f"subspace at {p} is not carried into the subspace at {q}")
        steps[(p, i)] = proj[q] @ st @ comp[p]
    quo = FdModule(m.box, dims, steps, check=False)
    return quo, ModuleHom(m, quo, proj, check=False)


def subquotient(m: FdModule, big: Spaces, small: Spaces) -> FdModule:
    sub, inc = submodule(m, big)
    small_in_sub = {p: solve(inc.mats[p], small[p]) for p in m.box.points() if p in small}
    return quotient(sub, small_in_sub)[0]


def generated_spaces(m: FdModule, elements: Iterable[tuple[Point, RatMatrix]]) -> Spaces:
    """Subspaces of the submodule generated by the given elements (columns at points)."""
    elements = list(elements)
    out = {}
    for p in m.box.points():
        cols = [m.structure_map(q, p) @ v for q, v in elements if leq(q, p)]
        out[p] = sum_spaces(*cols, dim=m.dims[p])
    return out


def spaces_equal(a: Spaces, b: Spaces) -> bool:
    for p in set(a) | set(b):
        x, y = a.get(p), b.get(p)
        if x is None or y is None:
            if (x is not None and x.cols) or (y is not None and y.cols):
                return False
            continue
        if x.cols != y.cols or rank(hstack([x, y])) != x.cols:
            return False
    return True


class ModuleHom:
    """Degreewise matrices of a homomorphism between modules on one box."""

    def __init__(self, source: FdModule, target: FdModule, mats: Mapping, check: bool = True):
        if source.box != target.box:
            raise DimensionMismatch("source and target must share a box; call same_box first")
        self.source = source
        self.target = target
        self.box = source.box
        self.mats = {}
        for p in self.box.points():
            mat = mats.get(p, RatMatrix.zeros(target.dims[p], source.dims[p]))
            if mat.shape != (target.dims[p], source.dims[p]):
                raise DimensionMismatch(f"map at {p} has shape {mat.shape}")
            self.mats[p] = mat
        if check:
            for (p, i), st in source.steps.items():
                q = add_unit(p, i)
                if target.steps[(p, i)] @ self.mats[p] != self.mats[q] @ st:
                    raise NotAHomomorphism(f"map does not commute with the step at {p} along axis {i}")

    def at(self, x: Sequence[int]) -> RatMatrix:
        return self.mats[self.box.clamp(x)]

    def compose(self, first: "ModuleHom") -> "ModuleHom":
        """self after first."""
        return ModuleHom(first.source, self.target, {p: self.mats[p] @ first.mats[p] for p in self.box.points()}, check=False)

    def image_spaces(self) -> Spaces:
        return {p: image_basis(mat) for p, mat in self.mats.items()}

    def kernel_spaces(self) -> Spaces:
        return {p: kernel_basis(mat) for p, mat in self.mats.items()}

    def image(self) -> FdModule:
        return submodule(self.target, self.image_spaces())[0]

    def is_injective(self) -> bool:
        return all(rank(m) == m.cols for m in self.mats.values())

    def is_surjective(self) -> bool:
        return all(rank(m) == m.rows for m in self.mats.values())


def hom_dual(h: ModuleHom) -> ModuleHom:
    src, tgt = matlis_dual(h.target), matlis_dual(h.source)
    mats = {p: h.mats[tuple(-x for x in p)].T for p in src.box.points()}
    return ModuleHom(src, tgt, mats, check=False)


def identity_hom(m: FdModule) -> ModuleHom:
    return ModuleHom(m, m, {p: RatMatrix.identity(d) for p, d in m.dims.items()}, check=False)


# duality, localization, socles and tops

def matlis_dual(m: FdModule) -> FdModule:
    """Degree q of the dual is the vector space dual of degree -q."""
    box = m.box.negate()
    dims = {p: m.dims[tuple(-x for x in p)] for p in box.points()}
    steps = {}
    for p in box.points():
        for i in range(m.n):
            q = add_unit(p, i)
            if q in box:
                steps[(p, i)] = m.steps[(tuple(-x for x in q), i)].T
    return FdModule(box, dims, steps, check=False)


def localize(m: FdModule, face: frozenset) -> FdModule:
    """Invert the variables along ``face``: degree p reads off p pushed to the top along the face."""
    dims, steps = {}, {}
    for p in m.box.points():
        dims[p] = m.dims[m.box.raise_to_top(p, face)]
    for p in m.box.points():
        r = m.box.raise_to_top(p, face)
        for i in range(m.n):
            if add_unit(p, i) not in m.box:
                continue
            steps[(p, i)] = RatMatrix.identity(dims[p]) if i in face else m.step(r, i)
    return FdModule(m.box, dims, steps, check=False)


def quotient_restriction(m: FdModule, face: frozenset) -> FdModule:
    """The module over Z^n / Z·face obtained from the slice where the face coordinates are large."""
    axes = complement(face, m.n)
    box = m.box.project(face)
    lift = lambda q: embed(q, face, m.n, m.box.hi)
    dims = {q: m.dims[lift(q)] for q in box.points()}
    steps = {}
    for q in box.points():
        for k, axis in enumerate(axes):
            if add_unit(q, k) in box:
                steps[(q, k)] = m.steps[(lift(q), axis)]
    return FdModule(box, dims, steps, check=False)


def socle_spaces(m: FdModule, face: frozenset) -> dict:
    """Closed socle along ``face``, degree by degree.

    Keys are degrees in Z^n / Z·face (tuples of the off-face coordinates).
    Values are ``(point, basis)`` where ``point`` is the slice point in the box
    and the columns of ``basis`` span the socle inside M at that point.  Only
    nonzero degrees appear.
    """
    out = {}
    axes = complement(face, m.n)
    for q in m.box.project(face).points():
        p = embed(q, face, m.n, m.box.hi)
        if not m.dims[p]:
            continue
        stacked = vstack([m.step(p, i) for i in axes], cols=m.dims[p])
        ker = kernel_basis(stacked)
        if ker.cols:
            out[q] = (p, ker)
    return out


def _graded_zero_module(box: LatticeBox, dims: Mapping) -> FdModule:
    return FdModule(box, dims, {}, check=False)


def closed_socle_along(m: FdModule, face: frozenset) -> FdModule:
    """soc along ``face`` as a module over Z^n / Z·face with all steps zero.

    The box is widened by one below so that the value at the bottom of the
    box does not spread to lower degrees.
    """
    box = m.box.project(face).widen(below=1)
    dims = {q: basis.cols for q, (p, basis) in socle_spaces(m, face).items()}
    return _graded_zero_module(box, dims)


def top_along(m: FdModule, face: frozenset) -> FdModule:
    """top along ``face``, computed as the dual of the socle of the dual."""
    return matlis_dual(closed_socle_along(matlis_dual(m), face))


def top_generators(m: FdModule, face: frozenset) -> dict:
    """Vectors lifting a basis of the top along ``face``, degree by degree.

    Keys are degrees in Z^n / Z·face.  Values are ``(point, vectors)`` where
    ``point`` has its face coordinates at the bottom of the box and the
    columns of ``vectors`` complement the images from one step lower.
    """
    out = {}
    axes = complement(face, m.n)
    for q in m.box.project(face).points():
        p = embed(q, face, m.n, m.box.lo)
        d = m.dims[p]
        if not d:
            continue
        images = [m.step(add_unit(p, i, -1), i) for i in axes]
        span = sum_spaces(*images, dim=d)
        extra = complement_basis(span, d)
        if extra.cols:
            out[q] = (p, extra)
    return out


def global_support_spaces(m: FdModule, face: frozenset) -> Spaces:
    """Elements killed by localizing along every single axis off the face."""
    out = {}
    axes = complement(face, m.n)
    for p in m.box.points():
        maps = [m.structure_map(p, m.box.raise_to_top(p, [i])) for i in axes]
        out[p] = kernel_basis(vstack(maps, cols=m.dims[p]))
    return out


def global_support(m: FdModule, face: frozenset) -> FdModule:
    return submodule(m, global_support_spaces(m, face))[0]


def associated_faces(m: FdModule) -> list[frozenset]:
    return [f for f in all_faces(m.n) if socle_spaces(m, f)]


def socle_map_injective(h: ModuleHom, face: frozenset) -> bool:
    for q, (p, basis) in socle_spaces(h.source, face).items():
        if rank(h.mats[p] @ basis) != basis.cols:
            return False
    return True


def top_map_surjective(h: ModuleHom, face: frozenset) -> bool:
    return socle_map_injective(hom_dual(h), face)


def injective_by_socles(h: ModuleHom) -> bool:
    return all(socle_map_injective(h, f) for f in all_faces(h.box.n))


def surjective_by_tops(h: ModuleHom) -> bool:
    return all(top_map_surjective(h, f) for f in all_faces(h.box.n))


def is_injective_hom(h: ModuleHom) -> bool:
    return h.is_injective()


def is_surjective_hom(h: ModuleHom) -> bool:
    return h.is_surjective()


def modules_isomorphic_data(a: FdModule, b: FdModule) -> bool:
    """Same Hilbert function and same rank for every comparable pair in the joint box."""
    a, b = same_box(a, b)
    if a.dims != b.dims:
        return False
    for p in a.box.points():
        ma, mb = a._maps_from(p), b._maps_from(p)
        for q, mat in ma.items():
            if rank(mat) != rank(mb[q]):
                return False
    return True


def intersection_spaces(a: Spaces, b: Spaces) -> Spaces:
    return {p: intersect_spaces(a[p], b[p]) for p in a}
