"""Independent brute-force computations the library is checked against.

None of these call the library's own algorithms for the quantity they
check; they only share the exact matrix type.
"""

from __future__ import annotations

from fractions import Fraction

from persistence_kernel.barcode import Bar, RModule1D
from persistence_kernel.lattice import add_unit
from persistence_kernel.linalg import RatMatrix, rank


def sweep_barcode(m: RModule1D) -> list[Bar]:
    """Classical interval decomposition of a chain of vector spaces.

    Walk the cells left to right keeping a basis of the current cell in
    which every vector remembers the cell where it was born.  Push the basis
    forward oldest first; a vector whose image depends on the images of the
    vectors kept before it dies (the younger class dies).  New vectors fill
    out the next cell.
    """
    alive: list[tuple[int, tuple]] = []  # (birth cell, vector)
    counts: dict = {}
    d0 = m.dims[0]
    alive = [(0, tuple(Fraction(int(i == k)) for i in range(d0))) for k in range(d0)]
    for j in range(m.cells - 1):
        phi = m.maps[j]
        kept, images = [], []
        for birth, v in sorted(alive, key=lambda t: t[0]):
            w = (phi @ RatMatrix.from_columns([v], m.dims[j])).column(0)
            trial = RatMatrix.from_columns(images + [w], m.dims[j + 1])
            if rank(trial) == len(images) + 1:
                images.append(w)
                kept.append((birth, w))
            else:
                counts[(birth, j)] = counts.get((birth, j), 0) + 1
        dim = m.dims[j + 1]
        for i in range(dim):
            e = tuple(Fraction(int(i == k)) for k in range(dim))
            trial = RatMatrix.from_columns([w for _, w in kept] + [e], dim)
            if rank(trial) == len(kept) + 1:
                kept.append((j + 1, e))
        alive = kept
    for birth, _ in alive:
        counts[(birth, m.cells - 1)] = counts.get((birth, m.cells - 1), 0) + 1
    bars = [Bar(m.birth_of_cell(i), m.death_of_cell(j), c) for (i, j), c in counts.items()]
    return sorted(bars, key=Bar.key)


def rank_invariant_barcode(m: RModule1D) -> dict:
    """Multiplicity of the cell interval [i, j] by inclusion and exclusion of ranks."""
    def r(i, j):
        if i < 0 or j >= m.cells or i > j:
            return 0
        return rank(m.cell_map(i, j))

    out = {}
    for i in range(m.cells):
        for j in range(i, m.cells):
            mult = r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1)
            if mult:
                out[(i, j)] = mult
    return out


def hom_dim_linear_system(upset, downset, box) -> int:
    """dim Hom(k[U], k[D]) as the nullity of the commutativity equations on the box.

    One unknown per point of U ∩ D.  For neighbouring points x and x + e_i
    with x in U, commutativity reads lambda_x = lambda_{x+e_i} whenever
    x + e_i lies in D, and imposes nothing otherwise.
    """
    pts = [p for p in box.points() if p in upset and p in downset]
    index = {p: k for k, p in enumerate(pts)}
    rows = []
    for p in box.points():
        if p not in upset:
            continue
        for i in range(box.n):
            q = add_unit(p, i)
            if q in box and q in downset:
                row = [0] * len(pts)
                row[index[p]] += 1
                row[index[q]] -= 1
                rows.append(row)
    if not pts:
        return 0
    return len(pts) - (rank(RatMatrix(len(rows), len(pts), rows)) if rows else 0)


def brute_downset_localization(downset, face, box) -> frozenset:
    """Points q of the box with q + t*e_face in D for every t up to well past the box."""
    reach = max(h - l for l, h in zip(box.lo, box.hi)) + 2
    out = set()
    for q in box.points():
        ok = True
        for t in range(reach + 1):
            for mask in range(1 << len(face)):
                axes = [a for k, a in enumerate(sorted(face)) if mask >> k & 1]
                p = list(q)
                for a in axes:
                    p[a] += t
                if tuple(p) not in downset:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(q)
    return frozenset(out)
