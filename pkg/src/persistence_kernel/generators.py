"""Seeded random objects for property tests, acceptance runs and demos."""

from __future__ import annotations

import random
from fractions import Fraction

from .barcode import RModule1D
from .fringe import MonomialMatrix, fringe_to_module, meets
from .lattice import DownsetZn, LatticeBox, UpsetZn
from .linalg import RatMatrix, rank
from .znmodule import FdModule, change_basis, direct_sum, matlis_dual


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -2, hi: int = 2) -> RatMatrix:
    return RatMatrix(rows, cols, [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def random_invertible(rng: random.Random, n: int) -> RatMatrix:
    while True:
        m = random_matrix(rng, n, n)
        if rank(m) == n:
            return m


def random_box(rng: random.Random, n: int, side: int) -> LatticeBox:
    """A box with ``side`` lattice points along every axis."""
    lo = tuple(rng.randint(-2, 0) for _ in range(n))
    return LatticeBox(lo, tuple(x + side - 1 for x in lo))


def _random_face(rng: random.Random, n: int, p_free: float = 0.25) -> frozenset:
    return frozenset(i for i in range(n) if rng.random() < p_free)


def random_fringe(rng: random.Random, box: LatticeBox, rows: int, cols: int) -> MonomialMatrix:
    """Random monomial matrix whose labels the box determines.

    Upset corners lean towards the bottom of the box and downset corners
    towards the top so that most entries are allowed to be nonzero.
    """
    n = box.n
    ups, downs = [], []
    for _ in range(rows):
        f = _random_face(rng, n)
        corner = tuple(min(rng.randint(box.lo[i] + 1, box.hi[i]) for _ in range(2)) for i in range(n))
        ups.append(UpsetZn(n, [(corner, f)]))
    for _ in range(cols):
        f = _random_face(rng, n)
        corner = tuple(max(rng.randint(box.lo[i], box.hi[i] - 1) for _ in range(2)) for i in range(n))
        downs.append(DownsetZn(n, [(corner, f)]))
    phi = [[rng.choice([0, 1, 1, 2, -1, 3]) if meets(u, d) else 0 for d in downs] for u in ups]
    return MonomialMatrix(ups, downs, RatMatrix(rows, cols, phi))


def random_presented_module(rng: random.Random, box: LatticeBox, gens: int) -> FdModule:
    """Cokernel of random relations among ``gens`` free generators inside the box."""
    n = box.n
    degrees = [tuple(min(rng.randint(box.lo[i] + 1, box.hi[i]) for _ in range(2)) for i in range(n)) for _ in range(gens)]
    relations = []
    for _ in range(rng.randint(0, gens + 1)):
        deg = tuple(rng.randint(box.lo[i] + 1, box.hi[i]) for i in range(n))
        below = [j for j, g in enumerate(degrees) if all(a <= b for a, b in zip(g, deg))]
        if not below:
            continue
        coeffs = [rng.choice([1, -1, 2]) if j in below and rng.random() < 0.7 else 0 for j in range(gens)]
        relations.append((deg, coeffs))
    return FdModule.from_presentation(box, degrees, relations)


def scramble(rng: random.Random, m: FdModule) -> FdModule:
    """Isomorphic copy with a random basis at every point."""
    return change_basis(m, {p: random_invertible(rng, d) for p, d in m.dims.items()})


def _random_piece(rng: random.Random, box: LatticeBox, max_dim: int) -> FdModule:
    kind = rng.random()
    if kind < 0.5:
        mm = random_fringe(rng, box, rng.randint(1, max_dim), rng.randint(1, max_dim + 1))
        return fringe_to_module(mm, box)
    if kind < 0.8:
        return random_presented_module(rng, box, rng.randint(1, max_dim))
    return matlis_dual(random_presented_module(rng, box.negate(), rng.randint(1, max_dim)))


def random_module(rng: random.Random, n: int, side: int, max_dim: int, allow_zero: bool = False) -> FdModule:
    """Random finitely determined module with every dimension at most ``max_dim``.

    The module is a direct sum of one to three random pieces (fringe images,
    finitely presented modules and duals of those), expressed in a random
    basis at every point so that nothing is accidentally diagonal.
    """
    box = random_box(rng, n, side)
    while True:
        pieces = [_random_piece(rng, box, max_dim) for _ in range(rng.randint(1, 3))]
        m = direct_sum(*pieces) if len(pieces) > 1 else pieces[0]
        if max(m.dims.values(), default=0) > max_dim:
            continue
        if m.is_zero() and not allow_zero:
            continue
        return scramble(rng, m)


def random_downset(rng: random.Random, n: int, max_pieces: int = 5, span: int = 3) -> DownsetZn:
    pieces = []
    for _ in range(rng.randint(1, max_pieces)):
        f = _random_face(rng, n, 0.3)
        pieces.append((tuple(rng.randint(-span, span) for _ in range(n)), f))
    return DownsetZn(n, pieces)


def random_upset(rng: random.Random, n: int, max_pieces: int = 3, span: int = 3) -> UpsetZn:
    pieces = []
    for _ in range(rng.randint(1, max_pieces)):
        f = _random_face(rng, n, 0.3)
        pieces.append((tuple(rng.randint(-span, span) for _ in range(n)), f))
    return UpsetZn(n, pieces)


def random_rmodule(rng: random.Random, max_crit: int = 5, max_dim: int = 3) -> RModule1D:
    m = rng.randint(0, max_crit)
    crit = sorted(rng.sample(range(-10, 11), m))
    crit = [Fraction(c, rng.choice([1, 2])) for c in crit]
    crit = sorted(set(crit))
    cells = 2 * len(crit) + 1
    dims = [rng.randint(0, max_dim) for _ in range(cells)]
    maps = []
    for k in range(cells - 1):
        mat = random_matrix(rng, dims[k + 1], dims[k], -1, 2)
        if rng.random() < 0.3:
            mat = RatMatrix.zeros(dims[k + 1], dims[k])
        maps.append(mat)
    return RModule1D(crit, dims, maps)


__all__ = [
    "random_matrix",
    "random_invertible",
    "random_box",
    "random_fringe",
    "random_presented_module",
    "random_module",
    "random_downset",
    "random_upset",
    "random_rmodule",
    "scramble",
]
