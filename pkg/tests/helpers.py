"""Comparisons shared by the test files."""

from __future__ import annotations

import random

from persistence_kernel.lattice import leq
from persistence_kernel.linalg import rank
from persistence_kernel.znmodule import FdModule, generated_spaces, quotient, submodule
from persistence_kernel.generators import random_matrix


def comparable_pairs(box):
    pts = box.points()
    return [(a, b) for a in pts for b in pts if leq(a, b)]


def same_hilbert_and_ranks(a: FdModule, b: FdModule, box=None) -> bool:
    """Equal dimensions and equal structure-map ranks on every comparable pair of the box."""
    box = box or a.box
    for p in box.points():
        if a.dim(p) != b.dim(p):
            return False
    for p, q in comparable_pairs(box):
        if rank(a.structure_map(p, q)) != rank(b.structure_map(p, q)):
            return False
    return True


def negate(p):
    return tuple(-x for x in p)


def random_elements(rng: random.Random, m: FdModule, count: int):
    pts = [p for p in m.box.points() if m.dims[p]]
    out = []
    for _ in range(count):
        if not pts:
            break
        p = rng.choice(pts)
        out.append((p, random_matrix(rng, m.dims[p], 1)))
    return out


def random_hom(rng: random.Random, m: FdModule):
    """A homomorphism S -> M/K with S and K generated by random elements of m.

    Depending on the draws it is an inclusion, a projection, both, or neither.
    """
    kind = rng.choice(["sub", "quo", "mixed", "mixed", "mixed"])
    inc = None
    if kind != "quo":
        _, inc = submodule(m, generated_spaces(m, random_elements(rng, m, rng.randint(1, 3))))
    if kind == "sub":
        return inc
    _, proj = quotient(m, generated_spaces(m, random_elements(rng, m, rng.randint(1, 3))))
    return proj if inc is None else proj.compose(inc)
