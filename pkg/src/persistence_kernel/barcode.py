"""Functorial bar codes for constructible modules over the real line.

A module is described by critical values c_1 < ... < c_m and the 2m+1 cells
they cut the line into, listed left to right:

    (-inf, c_1), {c_1}, (c_1, c_2), ..., {c_m}, (c_m, inf)

with one vector space per cell and one matrix from each cell to the next.
Bars are read off from elder quotients: the bars born at a cell are the
socle elements of the module modulo everything born strictly earlier.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, EmptyInterval, NotIsomorphic
from .linalg import (
    RatMatrix,
    block_diag,
    complement_basis,
    hstack,
    image_basis,
    intersect_spaces,
    is_invertible,
    kernel_basis,
    rank,
    solve,
    to_fraction,
)


@dataclass(frozen=True)
class Endpoint:
    """A decorated endpoint.  ``kind`` is "closed", "open" or "inf"."""

    value: Fraction | None
    kind: str

    def __post_init__(self):
        if self.kind not in ("closed", "open", "inf"):
            raise ValueError(f"unknown endpoint kind {self.kind!r}")
        if (self.kind == "inf") != (self.value is None):
            raise ValueError("infinite endpoints carry no value")
        if self.value is not None:
            object.__setattr__(self, "value", to_fraction(self.value))

    def birth_key(self):
        # -inf < b closed < b open < b' closed for b < b'
        if self.kind == "inf":
            return (0,)
        return (1, self.value, 0 if self.kind == "closed" else 1)

    def death_key(self):
        # a' closed < a open < a closed < inf for a' < a
        if self.kind == "inf":
            return (1,)
        return (0, self.value, 0 if self.kind == "open" else 1)


NEG_INF = Endpoint(None, "inf")
POS_INF = Endpoint(None, "inf")


def _fmt(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class Bar:
    birth: Endpoint
    death: Endpoint
    mult: int = 1

    def __post_init__(self):
        b, d = self.birth, self.death
        if b.kind != "inf" and d.kind != "inf":
            if b.value > d.value or (b.value == d.value and (b.kind, d.kind) != ("closed", "closed")):
                raise EmptyInterval(f"bar {self.ascii()} is empty")

    def key(self):
        return (self.birth.birth_key(), self.death.death_key())

    def ascii(self) -> str:
        left = "(-inf" if self.birth.kind == "inf" else ("[" if self.birth.kind == "closed" else "(") + _fmt(self.birth.value)
        right = "inf)" if self.death.kind == "inf" else _fmt(self.death.value) + ("]" if self.death.kind == "closed" else ")")
        return f"{left}, {right}"


class RModule1D:
    """Constructible R-module: one vector space per cell, one matrix per adjacent pair."""

    def __init__(self, crit: Sequence, dims: Sequence[int], maps: Sequence[RatMatrix]):
        self.crit = [to_fraction(c) for c in crit]
        if any(a >= b for a, b in zip(self.crit, self.crit[1:])):
            raise DimensionMismatch("critical values must be strictly increasing")
        self.dims = [int(d) for d in dims]
        self.maps = list(maps)
        if len(self.dims) != 2 * len(self.crit) + 1:
            raise DimensionMismatch(f"{len(self.crit)} critical values need {2 * len(self.crit) + 1} cells")
        if len(self.maps) != len(self.dims) - 1:
            raise DimensionMismatch("need one map between each pair of adjacent cells")
        for k, mat in enumerate(self.maps):
            if mat.shape != (self.dims[k + 1], self.dims[k]):
                raise DimensionMismatch(f"map out of cell {k} has shape {mat.shape}")

    @property
    def cells(self) -> int:
        return len(self.dims)

    def cell_of(self, t) -> int:
        t = to_fraction(t)
        for k, c in enumerate(self.crit):
            if t < c:
                return 2 * k
            if t == c:
                return 2 * k + 1
        return 2 * len(self.crit)

    def dim(self, t) -> int:
        return self.dims[self.cell_of(t)]

    def cell_map(self, i: int, j: int) -> RatMatrix:
        if i > j:
            raise DimensionMismatch("cell maps only go rightwards")
        out = RatMatrix.identity(self.dims[i])
        for k in range(i, j):
            out = self.maps[k] @ out
        return out

    def structure_map(self, s, t) -> RatMatrix:
        return self.cell_map(self.cell_of(s), self.cell_of(t))

    # endpoints <-> cells

    def birth_of_cell(self, i: int) -> Endpoint:
        if i == 0:
            return NEG_INF
        if i % 2:
            return Endpoint(self.crit[(i - 1) // 2], "closed")
        return Endpoint(self.crit[i // 2 - 1], "open")

    def death_of_cell(self, j: int) -> Endpoint:
        if j == self.cells - 1:
            return POS_INF
        if j % 2:
            return Endpoint(self.crit[(j - 1) // 2], "closed")
        return Endpoint(self.crit[j // 2], "open")

    def cell_of_birth(self, e: Endpoint) -> int:
        if e.kind == "inf":
            return 0
        k = self.crit.index(e.value)
        return 2 * k + 1 if e.kind == "closed" else 2 * k + 2

    def cell_of_death(self, e: Endpoint) -> int:
        if e.kind == "inf":
            return self.cells - 1
        k = self.crit.index(e.value)
        return 2 * k + 1 if e.kind == "closed" else 2 * k

    def refine(self, crit: Sequence) -> "RModule1D":
        """The same module described with more critical values."""
        crit = sorted({to_fraction(c) for c in crit} | set(self.crit))
        reps = []
        for k in range(2 * len(crit) + 1):
            if k % 2:
                reps.append(self.cell_of(crit[(k - 1) // 2]))
            elif k == 0:
                reps.append(0)
            elif k == 2 * len(crit):
                reps.append(self.cells - 1)
            else:
                lo, hi = crit[k // 2 - 1], crit[k // 2]
                reps.append(self.cell_of((lo + hi) / 2))
        dims = [self.dims[r] for r in reps]
        maps = [self.cell_map(reps[k], reps[k + 1]) for k in range(len(reps) - 1)]
        return RModule1D(crit, dims, maps)

    def __repr__(self) -> str:
        return f"RModule1D(crit={[_fmt(c) for c in self.crit]}, dims={self.dims})"


def direct_sum_1d(*mods: RModule1D) -> RModule1D:
    crit = sorted({c for m in mods for c in m.crit})
    mods = [m.refine(crit) for m in mods]
    dims = [sum(m.dims[k] for m in mods) for k in range(2 * len(crit) + 1)]
    maps = [block_diag([m.maps[k] for m in mods]) for k in range(2 * len(crit))]
    return RModule1D(crit, dims, maps)


def interval_module(bar: Bar, crit: Sequence | None = None) -> RModule1D:
    """k on the bar's interval, zero elsewhere; one copy per multiplicity."""
    ends = {e.value for e in (bar.birth, bar.death) if e.kind != "inf"}
    crit = sorted(ends | {to_fraction(c) for c in (crit or [])})
    shell = RModule1D(crit, [0] * (2 * len(crit) + 1), [RatMatrix(0, 0)] * (2 * len(crit)))
    i, j = shell.cell_of_birth(bar.birth), shell.cell_of_death(bar.death)
    dims = [bar.mult if i <= k <= j else 0 for k in range(shell.cells)]
    maps = [
        RatMatrix.identity(bar.mult) if i <= k < j else RatMatrix.zeros(dims[k + 1], dims[k])
        for k in range(shell.cells - 1)
    ]
    return RModule1D(crit, dims, maps)


# tops, socles and elder objects

def top_dims(m: RModule1D) -> list[int]:
    """Dimension of the top at each cell's birth endpoint."""
    return [m.dims[0]] + [m.dims[i] - rank(m.maps[i - 1]) for i in range(1, m.cells)]


def socle_dims(m: RModule1D) -> list[int]:
    """Dimension of the socle at each cell's death endpoint."""
    return [m.dims[j] - rank(m.maps[j]) for j in range(m.cells - 1)] + [m.dims[-1]]


def _zero(d: int) -> RatMatrix:
    return RatMatrix(d, 0)


def extant_space(m: RModule1D, i: int, j: int) -> RatMatrix:
    """Cell j of the submodule generated by everything born at cells up to i."""
    if j <= i:
        return RatMatrix.identity(m.dims[j])
    return image_basis(m.cell_map(i, j))


def elder_space(m: RModule1D, i: int, j: int) -> RatMatrix:
    """Cell j of the submodule generated by everything born strictly before cell i."""
    if i == 0:
        return _zero(m.dims[j])
    return extant_space(m, i - 1, j)


def _socle_space(m: RModule1D, j: int) -> RatMatrix:
    if j == m.cells - 1:
        return RatMatrix.identity(m.dims[j])
    return kernel_basis(m.maps[j])


def _quotient_socle_lifts(m: RModule1D, i: int, j: int) -> RatMatrix:
    """Lifts to cell j of a basis of the socle of the elder quotient at birth cell i."""
    ext, eld = extant_space(m, i, j), elder_space(m, i, j)
    if j == m.cells - 1:
        inside = ext
    else:
        nxt = elder_space(m, i, j + 1)
        phi = m.maps[j]
        # v in ext with phi(v) in the elder space at j+1
        stacked = hstack([phi @ ext, nxt.scale(-1)], rows=m.dims[j + 1]) if ext.cols or nxt.cols else RatMatrix(m.dims[j + 1], 0)
        ker = kernel_basis(stacked)
        inside = image_basis(ext @ ker.select_rows(range(ext.cols))) if ker.cols else _zero(m.dims[j])
    span = image_basis(hstack([eld, inside], rows=m.dims[j])) if (eld.cols or inside.cols) else _zero(m.dims[j])
    # complement of the elder space inside the span
    coords = solve(span, eld) if eld.cols else RatMatrix(span.cols, 0)
    extra = complement_basis(coords, span.cols)
    return span @ extra


def elder_quotient_socle_dim(m: RModule1D, i: int, j: int) -> int:
    if j < i:
        return 0
    return _quotient_socle_lifts(m, i, j).cols


def graded_socle_dim(m: RModule1D, i: int, j: int) -> int:
    """dim of soc at cell j restricted to the extant part modulo the elder part."""
    soc = _socle_space(m, j)
    a = intersect_spaces(soc, extant_space(m, i, j)) if soc.cols else soc
    b = intersect_spaces(soc, elder_space(m, i, j)) if soc.cols and i > 0 else _zero(m.dims[j])
    return a.cols - b.cols


def elder_projection(m: RModule1D, i: int, j: int) -> RatMatrix:
    """Matrix of the isomorphism from the elder quotient's socle to the graded socle.

    A socle element s of the elder quotient lifts to s~ whose image one cell
    up is elder; subtracting an elder preimage of that image leaves a genuine
    socle element of the module.  The result is expressed modulo the elder
    socle, in a complement chosen by ``complement_basis``.
    """
    lifts = _quotient_socle_lifts(m, i, j)
    soc = _socle_space(m, j)
    ext_soc = intersect_spaces(soc, extant_space(m, i, j)) if soc.cols else soc
    eld = elder_space(m, i, j)
    eld_soc = intersect_spaces(soc, eld) if soc.cols and eld.cols else _zero(m.dims[j])
    coords = solve(ext_soc, eld_soc) if eld_soc.cols else RatMatrix(ext_soc.cols, 0)
    graded = ext_soc @ complement_basis(coords, ext_soc.cols)
    cols = []
    for k in range(lifts.cols):
        s = lifts.select_columns([k])
        if j < m.cells - 1 and eld.cols:
            phi = m.maps[j]
            c = solve(phi @ eld, phi @ s)
            s = s - eld @ c
        frame = hstack([eld_soc, graded], rows=m.dims[j])
        x = solve(frame, s)
        cols.append(x.select_rows(range(eld_soc.cols, frame.cols)).column(0))
    omega = RatMatrix.from_columns(cols, graded.cols)
    if not is_invertible(omega):
        raise NotIsomorphic(f"elder projection at cells {i}, {j} is not invertible")
    return omega


def elder_qr_block(m: RModule1D, i: int, j: int) -> RatMatrix:
    """The elder quotient's generator space at cell i mapped to its socle at cell j.

    Coordinates on the source are the standard ones of cell i modulo the
    elder space; on the target they are the lifts from the socle
    computation, read modulo the elder space through a fixed complement.
    """
    lifts = _quotient_socle_lifts(m, i, j)
    eld_i = elder_space(m, i, i)
    gens = complement_basis(eld_i, m.dims[i])
    eld_j = elder_space(m, i, j)
    frame = hstack([eld_j, lifts], rows=m.dims[j]) if (eld_j.cols or lifts.cols) else _zero(m.dims[j])
    pushed = m.cell_map(i, j) @ gens
    cols = []
    for k in range(pushed.cols):
        v = pushed.select_columns([k])
        total = hstack([frame, complement_basis(frame, m.dims[j])], rows=m.dims[j])
        x = solve(total, v)
        cols.append(x.select_rows(range(eld_j.cols, eld_j.cols + lifts.cols)).column(0))
    return RatMatrix.from_columns(cols, lifts.cols)


def functorial_barcode(m: RModule1D) -> list[Bar]:
    """Bars with multiplicities, read from the socles of the elder quotients."""
    bars = []
    tops = top_dims(m)
    for i in range(m.cells):
        if not tops[i]:
            continue
        for j in range(i, m.cells):
            mult = elder_quotient_socle_dim(m, i, j)
            if mult:
                bars.append(Bar(m.birth_of_cell(i), m.death_of_cell(j), mult))
    return sorted(bars, key=Bar.key)


def top_spaces(m: RModule1D) -> dict:
    """Nonzero top dimensions keyed by decorated birth endpoint."""
    return {m.birth_of_cell(i): d for i, d in enumerate(top_dims(m)) if d}


def gr_soc_spaces(m: RModule1D) -> dict:
    """Nonzero graded socle dimensions keyed by (death endpoint, birth endpoint)."""
    out = {}
    for j in range(m.cells):
        for i in range(j + 1):
            d = graded_socle_dim(m, i, j)
            if d:
                out[(m.death_of_cell(j), m.birth_of_cell(i))] = d
    return out


def barcode_with_map(m: RModule1D) -> tuple[dict, list[Bar]]:
    """The map Top M -> grSoc M block by block, together with the bars.

    Each block composes the elder quotient's map from its top to its socle
    with the elder projection onto the graded socle of M.
    """
    blocks = {key: omega @ block for key, (block, omega) in bar_maps(m).items()}
    return blocks, functorial_barcode(m)


def bar_maps(m: RModule1D) -> dict:
    """For each bar, the elder quotient's map to its socle and the elder projection."""
    out = {}
    for bar in functorial_barcode(m):
        i, j = m.cell_of_birth(bar.birth), m.cell_of_death(bar.death)
        out[(bar.birth, bar.death)] = (elder_qr_block(m, i, j), elder_projection(m, i, j))
    return out


def barcode_module(bars: Sequence[Bar], crit: Sequence | None = None) -> RModule1D:
    mods = [interval_module(b, crit) for b in bars]
    if not mods:
        return RModule1D(sorted(crit or []), [0] * (2 * len(crit or []) + 1), [RatMatrix(0, 0)] * (2 * len(crit or [])))
    return direct_sum_1d(*mods)
