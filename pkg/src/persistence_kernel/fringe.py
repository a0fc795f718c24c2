"""Indicator modules and fringe presentations.

A fringe presentation writes a module as the image of a map from a direct
sum of upset modules to a direct sum of downset modules.  The map is a
monomial matrix: entry (p, q) is a scalar that may be nonzero only when
upset p meets downset q.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    BoxNotDetermining,
    DimensionMismatch,
    HullConstructionFailed,
    IllegalNonzeroEntry,
    InvalidFringe,
    NotAnUpset,
    ShapeMismatch,
    TargetMismatch,
)
from .lattice import (
    DownsetZn,
    LatticeBox,
    UpsetZn,
    add_unit,
    all_faces,
    box_determines,
    determining_box,
    embed,
    leq,
)
from .linalg import RatMatrix, image_basis, rank, rref, solve, to_fraction
from .posets import FinitePoset, PosetModule, PosetMorphism
from .znmodule import FdModule, ModuleHom, socle_spaces, submodule, top_generators


def meets(upset: UpsetZn, downset: DownsetZn) -> bool:
    """Whether the two sets share a point.

    A piece b + Z·rho + N^n meets a + Z·tau - N^n exactly when b <= a on
    every axis outside rho and tau.
    """
    if upset.n != downset.n:
        raise DimensionMismatch("upset and downset live in different dimensions")
    for b, rho in upset.pieces:
        for a, tau in downset.pieces:
            if all(b[i] <= a[i] for i in range(upset.n) if i not in rho and i not in tau):
                return True
    return False


def hom_dim(upset: UpsetZn, downset: DownsetZn, box: LatticeBox | None = None) -> int:
    """dim Hom(k[U], k[D]): the number of connected components of U ∩ D."""
    box = box or determining_box(upset.n, upset, downset)
    if not box_determines(box, [upset, downset]):
        box = box.union(determining_box(upset.n, upset, downset))
    pts = [p for p in box.points() if p in upset and p in downset]
    live = set(pts)
    parent = {p: p for p in pts}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for p in pts:
        for i in range(box.n):
            q = add_unit(p, i)
            if q in live:
                parent[find(p)] = find(q)
    return len({find(p) for p in pts})


@dataclass
class MonomialMatrix:
    """Rows are upsets (sources), columns are downsets (targets)."""

    rows: list
    cols: list
    phi: RatMatrix

    def __post_init__(self):
        if not isinstance(self.phi, RatMatrix):
            data = [[to_fraction(x) for x in r] for r in self.phi]
            self.phi = RatMatrix(len(self.rows), len(self.cols), data) if data else RatMatrix(len(self.rows), len(self.cols))

    @property
    def n(self) -> int:
        labels = list(self.rows) + list(self.cols)
        return labels[0].n if labels else 0

    def determining_box(self) -> LatticeBox:
        return determining_box(self.n, *self.rows, *self.cols)


def validate_fringe(mm: MonomialMatrix) -> None:
    if mm.phi.shape != (len(mm.rows), len(mm.cols)):
        raise ShapeMismatch(f"phi has shape {mm.phi.shape}, expected {(len(mm.rows), len(mm.cols))}")
    if not all(isinstance(u, UpsetZn) for u in mm.rows):
        raise InvalidFringe("row labels must be upsets")
    if not all(isinstance(d, DownsetZn) for d in mm.cols):
        raise InvalidFringe("column labels must be downsets")
    if len({x.n for x in list(mm.rows) + list(mm.cols)}) > 1:
        raise DimensionMismatch("labels live in different dimensions")
    for p, u in enumerate(mm.rows):
        for q, d in enumerate(mm.cols):
            if mm.phi[p, q] != 0 and not meets(u, d):
                raise IllegalNonzeroEntry(f"entry ({p}, {q}) is nonzero but its upset misses its downset")


def _label_module(mm: MonomialMatrix, box: LatticeBox):
    """The injective side E with the degreewise matrices of F -> E."""
    row_pts = [u.points_in(box) for u in mm.rows]
    col_pts = [d.points_in(box) for d in mm.cols]
    active_rows = {x: [p for p, s in enumerate(row_pts) if x in s] for x in box.points()}
    active_cols = {x: [q for q, s in enumerate(col_pts) if x in s] for x in box.points()}
    dims = {x: len(active_cols[x]) for x in box.points()}
    steps = {}
    for x in box.points():
        for i in range(box.n):
            y = add_unit(x, i)
            if y in box:
                data = [[1 if a == b else 0 for b in active_cols[x]] for a in active_cols[y]]
                steps[(x, i)] = RatMatrix(len(active_cols[y]), len(active_cols[x]), data)
    injective = FdModule(box, dims, steps, check=False)
    maps = {}
    for x in box.points():
        data = [[mm.phi[p, q] for p in active_rows[x]] for q in active_cols[x]]
        maps[x] = RatMatrix(len(active_cols[x]), len(active_rows[x]), data)
    return injective, maps


def fringe_to_module(mm: MonomialMatrix, box: LatticeBox | None = None) -> FdModule:
    """The image of F -> E, degree by degree on a determining box."""
    validate_fringe(mm)
    box = box or mm.determining_box()
    if not box_determines(box, list(mm.rows) + list(mm.cols)):
        raise BoxNotDetermining("box does not determine every label of the fringe presentation")
    injective, maps = _label_module(mm, box)
    return submodule(injective, {x: image_basis(m) for x, m in maps.items()})[0]


@dataclass
class FringeData:
    """A fringe presentation of a module together with the maps that realize it.

    ``cover`` lists, per row, the point and vector whose multiples give the
    map from the row's upset module onto M.  ``hull`` lists, per column,
    the point and functional giving the map from M to the column's downset
    module.
    """

    matrix: MonomialMatrix
    cover: list = field(default_factory=list)
    hull: list = field(default_factory=list)


def _pivot_rows(basis: RatMatrix) -> list[int]:
    return rref(basis.T)[1]


def fringe_data(m: FdModule) -> FringeData:
    n = m.n
    rows, cover = [], []
    for rho in all_faces(n):
        for q, (point, vectors) in sorted(top_generators(m, rho).items()):
            corner = embed(q, rho, n, 0)
            for j in range(vectors.cols):
                rows.append(UpsetZn(n, [(corner, rho)]))
                cover.append((rho, point, vectors.select_columns([j])))
    cols, hull = [], []
    for tau in all_faces(n):
        for q, (point, basis) in sorted(socle_spaces(m, tau).items()):
            corner = embed(q, tau, n, 0)
            for k in _pivot_rows(basis):
                cols.append(DownsetZn(n, [(corner, tau)]))
                functional = RatMatrix(1, m.dims[point], [[1 if i == k else 0 for i in range(m.dims[point])]])
                hull.append((tau, point, functional))
    phi = [[0] * len(cols) for _ in rows]
    for p, (rho, b, y) in enumerate(cover):
        for q, (tau, a, f) in enumerate(hull):
            if meets(rows[p], cols[q]):
                phi[p][q] = (f @ m.structure_map(b, a) @ y)[0, 0]
    matrix = MonomialMatrix(rows, cols, RatMatrix(len(rows), len(cols), phi) if rows and cols else RatMatrix(len(rows), len(cols)))
    return FringeData(matrix, cover, hull)


def hull_hom(m: FdModule, data: FringeData) -> ModuleHom:
    """The map M -> E into the columns' downset modules."""
    injective, _ = _label_module(data.matrix, m.box)
    mats = {}
    for x in m.box.points():
        rows = []
        for q, (tau, a, f) in enumerate(data.hull):
            if x in data.matrix.cols[q]:
                rows.append((f @ m.structure_map(x, a)).row(0))
        mats[x] = RatMatrix(len(rows), m.dims[x], rows)
    return ModuleHom(m, injective, mats)


def cover_matrices(m: FdModule, data: FringeData) -> dict:
    """Degreewise matrices of F -> M out of the rows' upset modules."""
    mats = {}
    for x in m.box.points():
        cols = [m.structure_map(b, x) @ y for p, (rho, b, y) in enumerate(data.cover) if x in data.matrix.rows[p]]
        mats[x] = RatMatrix.from_columns([c.column(0) for c in cols], m.dims[x])
    return mats


def module_to_fringe(m: FdModule) -> MonomialMatrix:
    """A fringe presentation of m built from its tops and socles.

    Rows are one flat upset per top degree along each face and columns one
    coprincipal downset per socle degree along each face.  The cover is
    surjective because tops detect surjectivity, and the hull is injective
    because socles detect injectivity; the monomial matrix is the composite.
    """
    data = fringe_data(m)
    if not all(rank(mat) == m.dims[x] for x, mat in cover_matrices(m, data).items()):
        raise HullConstructionFailed("top generators do not span the module")
    if not hull_hom(m, data).is_injective():
        raise HullConstructionFailed("socle functionals do not detect every element")
    return data.matrix


# fringe presentations over finite posets

@dataclass
class PosetMonomialMatrix:
    """Fringe presentation over a finite poset or a box, with labels as element sets."""

    domain: FinitePoset | LatticeBox
    rows: list
    cols: list
    phi: RatMatrix

    def __post_init__(self):
        self.rows = [frozenset(r) for r in self.rows]
        self.cols = [frozenset(c) for c in self.cols]
        if not isinstance(self.phi, RatMatrix):
            data = [[to_fraction(x) for x in r] for r in self.phi]
            self.phi = RatMatrix(len(self.rows), len(self.cols), data) if data else RatMatrix(len(self.rows), len(self.cols))


def _elements_and_order(domain):
    if isinstance(domain, LatticeBox):
        return domain.points(), leq
    return list(range(domain.size)), (lambda a, b: domain.leq[a][b])


def validate_poset_fringe(pmm: PosetMonomialMatrix) -> None:
    elems, le = _elements_and_order(pmm.domain)
    if pmm.phi.shape != (len(pmm.rows), len(pmm.cols)):
        raise ShapeMismatch("phi does not match the labels")
    for u in pmm.rows:
        if any(le(a, b) and b not in u for a in u for b in elems):
            raise NotAnUpset("a row label is not an upset")
    for d in pmm.cols:
        if any(le(b, a) and b not in d for a in d for b in elems):
            raise InvalidFringe("a column label is not a downset")
    for p, u in enumerate(pmm.rows):
        for q, d in enumerate(pmm.cols):
            if pmm.phi[p, q] != 0 and not (u & d):
                raise IllegalNonzeroEntry(f"entry ({p}, {q}) is nonzero on disjoint labels")


def monomial_to_poset(mm: MonomialMatrix, box: LatticeBox) -> PosetMonomialMatrix:
    return PosetMonomialMatrix(box, [u.points_in(box) for u in mm.rows], [d.points_in(box) for d in mm.cols], mm.phi)


def pullback_fringe(pi: PosetMorphism, pmm: PosetMonomialMatrix) -> PosetMonomialMatrix:
    """Preimages of the labels under ``pi``, with the same scalars."""
    if pmm.domain != pi.target:
        raise TargetMismatch("fringe presentation is not over the morphism's target")
    elems = pi.source_elements()
    rows = [frozenset(a for a in elems if pi(a) in u) for u in pmm.rows]
    cols = [frozenset(a for a in elems if pi(a) in d) for d in pmm.cols]
    return PosetMonomialMatrix(pi.source, rows, cols, pmm.phi)


def poset_fringe_to_module(pmm: PosetMonomialMatrix):
    """Image of F -> E over the domain: a PosetModule, or an FdModule for a box."""
    validate_poset_fringe(pmm)
    elems, le = _elements_and_order(pmm.domain)
    act_r = {a: [p for p, u in enumerate(pmm.rows) if a in u] for a in elems}
    act_c = {a: [q for q, d in enumerate(pmm.cols) if a in d] for a in elems}
    images = {}
    for a in elems:
        data = [[pmm.phi[p, q] for p in act_r[a]] for q in act_c[a]]
        images[a] = image_basis(RatMatrix(len(act_c[a]), len(act_r[a]), data))

    def induced(a, b):
        proj = RatMatrix(len(act_c[b]), len(act_c[a]), [[1 if x == y else 0 for y in act_c[a]] for x in act_c[b]])
        return solve(images[b], proj @ images[a])

    if isinstance(pmm.domain, LatticeBox):
        box = pmm.domain
        dims = {a: images[a].cols for a in elems}
        steps = {}
        for a in elems:
            for i in range(box.n):
                b = add_unit(a, i)
                if b in box:
                    steps[(a, i)] = induced(a, b)
        return FdModule(box, dims, steps, check=False)
    poset = pmm.domain
    return PosetModule(poset, [images[a].cols for a in elems], {(i, j): induced(i, j) for (i, j) in poset.covers})
