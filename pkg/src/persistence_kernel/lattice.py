"""Points, faces, boxes, and finitely generated upsets and downsets of Z^n.

Faces of the positive cone are sets of coordinate axes.  In Python they are
frozensets of 0-based axis indices; the JSON and CLI layer shows them 1-based.

An upset is a finite union of pieces ``b + Z·face + N^n`` and a downset a
finite union of pieces ``a + Z·face - N^n``.  Coordinates of a corner along
the free axes of its face carry no information and are normalized to 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BoxNotDetermining, DimensionMismatch

Point = tuple[int, ...]
Face = frozenset


def face(*axes: int) -> frozenset:
    return frozenset(axes)


def all_faces(n: int) -> list[frozenset]:
    """Every face of N^n, ordered by bitmask."""
    return [frozenset(i for i in range(n) if mask >> i & 1) for mask in range(1 << n)]


def face_mask(f: Iterable[int]) -> int:
    return sum(1 << i for i in f)


def complement(f: frozenset, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if i not in f)


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def add_unit(p: Point, axis: int, amount: int = 1) -> Point:
    return p[:axis] + (p[axis] + amount,) + p[axis + 1:]


def normalize_corner(corner: Sequence[int], f: frozenset) -> Point:
    return tuple(0 if i in f else int(c) for i, c in enumerate(corner))


def project(p: Sequence[int], f: frozenset) -> Point:
    """Coordinates of p off the face: the degree of p in Z^n / Z·face."""
    return tuple(c for i, c in enumerate(p) if i not in f)


def embed(q: Sequence[int], f: frozenset, n: int, fill: Sequence[int] | int = 0) -> Point:
    """Inverse of ``project``: face coordinates come from ``fill``."""
    it = iter(q)
    out = []
    for i in range(n):
        if i in f:
            out.append(fill if isinstance(fill, int) else fill[i])
        else:
            out.append(next(it))
    return tuple(out)


@dataclass(frozen=True)
class LatticeBox:
    lo: Point
    hi: Point

    def __post_init__(self):
        object.__setattr__(self, "lo", tuple(int(x) for x in self.lo))
        object.__setattr__(self, "hi", tuple(int(x) for x in self.hi))
        if len(self.lo) != len(self.hi):
            raise DimensionMismatch("box corners have different lengths")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise DimensionMismatch(f"box lower corner {self.lo} is not below {self.hi}")

    @property
    def n(self) -> int:
        return len(self.lo)

    def points(self) -> list[Point]:
        """All lattice points, in lexicographic order."""
        return list(itertools.product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi))))

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points())

    def __len__(self) -> int:
        out = 1
        for a, b in zip(self.lo, self.hi):
            out *= b - a + 1
        return out

    def __contains__(self, p) -> bool:
        return len(p) == self.n and all(a <= x <= b for a, x, b in zip(self.lo, p, self.hi))

    def clamp(self, p: Sequence[int]) -> Point:
        return tuple(min(max(x, a), b) for x, a, b in zip(p, self.lo, self.hi))

    def negate(self) -> "LatticeBox":
        return LatticeBox(tuple(-x for x in self.hi), tuple(-x for x in self.lo))

    def union(self, other: "LatticeBox") -> "LatticeBox":
        return LatticeBox(tuple(map(min, self.lo, other.lo)), tuple(map(max, self.hi, other.hi)))

    def contains_box(self, other: "LatticeBox") -> bool:
        return leq(self.lo, other.lo) and leq(other.hi, self.hi)

    def project(self, f: frozenset) -> "LatticeBox":
        return LatticeBox(project(self.lo, f), project(self.hi, f))

    def widen(self, below: int = 0, above: int = 0) -> "LatticeBox":
        return LatticeBox(tuple(x - below for x in self.lo), tuple(x + above for x in self.hi))

    def raise_to_top(self, p: Sequence[int], f: Iterable[int]) -> Point:
        """p with its coordinates along ``f`` pushed up to the top of the box."""
        f = set(f)
        return tuple(self.hi[i] if i in f else x for i, x in enumerate(p))

    def lower_to_bottom(self, p: Sequence[int], f: Iterable[int]) -> Point:
        f = set(f)
        return tuple(self.lo[i] if i in f else x for i, x in enumerate(p))


def _check_piece(n: int, corner, f) -> tuple[Point, frozenset]:
    corner = tuple(int(c) for c in corner)
    f = frozenset(int(i) for i in f)
    if len(corner) != n:
        raise DimensionMismatch(f"corner {corner} does not live in Z^{n}")
    if any(i < 0 or i >= n for i in f):
        raise DimensionMismatch(f"face {sorted(f)} has axes outside 0..{n - 1}")
    return normalize_corner(corner, f), f


class _PieceSet:
    """Shared machinery for finite unions of face-translates."""

    sign = 0  # +1 for upsets, -1 for downsets

    def __init__(self, n: int, pieces: Iterable[tuple[Sequence[int], Iterable[int]]] = ()):
        self.n = int(n)
        raw = {_check_piece(self.n, c, f) for c, f in pieces}
        keep = [p for p in raw if not any(q != p and self._piece_within(p, q) for q in raw)]
        self.pieces = tuple(sorted(keep, key=lambda p: (face_mask(p[1]), p[0])))

    def _piece_within(self, small, big) -> bool:
        (c1, f1), (c2, f2) = small, big
        if not f1 <= f2:
            return False
        free = f2
        return all(self.sign * (c1[i] - c2[i]) >= 0 for i in range(self.n) if i not in free)

    def _in_piece(self, x, piece) -> bool:
        c, f = piece
        return all(self.sign * (x[i] - c[i]) >= 0 for i in range(self.n) if i not in f)

    def __contains__(self, x) -> bool:
        if len(x) != self.n:
            raise DimensionMismatch(f"point {tuple(x)} is not in Z^{self.n}")
        return any(self._in_piece(x, p) for p in self.pieces)

    def points_in(self, box: LatticeBox) -> frozenset:
        return frozenset(p for p in box.points() if p in self)

    def corner_values(self, axis: int) -> list[int]:
        return [c[axis] for c, f in self.pieces if axis not in f]

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.n == other.n and self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.n, self.pieces))

    def __repr__(self) -> str:
        body = ", ".join(f"({list(c)}, {sorted(f)})" for c, f in self.pieces)
        return f"{type(self).__name__}(n={self.n}, [{body}])"

    def __iter__(self):
        return iter(self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    def union(self, other):
        if other.n != self.n:
            raise DimensionMismatch("cannot union sets in different ambient dimensions")
        return type(self)(self.n, list(self.pieces) + list(other.pieces))


class UpsetZn(_PieceSet):
    """Finite union of pieces ``corner + Z·face + N^n``."""

    sign = 1

    def negate(self) -> "DownsetZn":
        return DownsetZn(self.n, [(tuple(-x for x in c), f) for c, f in self.pieces])


class DownsetZn(_PieceSet):
    """Finite union of pieces ``corner + Z·face - N^n``."""

    sign = -1

    def negate(self) -> UpsetZn:
        return UpsetZn(self.n, [(tuple(-x for x in c), f) for c, f in self.pieces])


def upset_contains(u: UpsetZn, x: Sequence[int]) -> bool:
    return tuple(x) in u


def downset_contains(d: DownsetZn, x: Sequence[int]) -> bool:
    return tuple(x) in d


def determining_box(n: int, *sets: _PieceSet) -> LatticeBox:
    """Smallest box with a one-cell margin around every finite corner coordinate."""
    lo, hi = [], []
    for axis in range(n):
        vals = [v for s in sets for v in s.corner_values(axis)]
        if vals:
            lo.append(min(vals) - 1)
            hi.append(max(vals) + 1)
        else:
            lo.append(0)
            hi.append(0)
    return LatticeBox(tuple(lo), tuple(hi))


def box_determines(box: LatticeBox, sets: Iterable[_PieceSet]) -> bool:
    """Whether restricting to ``box`` and clamping reproduces each set exactly.

    An upset corner needs lo < b <= hi on its constrained axes, a downset
    corner lo <= a < hi.
    """
    for s in sets:
        for c, f in s.pieces:
            for i in range(box.n):
                if i in f:
                    continue
                if isinstance(s, UpsetZn) and not box.lo[i] < c[i] <= box.hi[i]:
                    return False
                if isinstance(s, DownsetZn) and not box.lo[i] <= c[i] < box.hi[i]:
                    return False
    return True


def require_determining(box: LatticeBox, sets: Iterable[_PieceSet]) -> None:
    sets = list(sets)
    if any(s.n != box.n for s in sets):
        raise DimensionMismatch("box and sets live in different dimensions")
    if not box_determines(box, sets):
        raise BoxNotDetermining(f"box {box.lo}..{box.hi} does not determine the given sets")
