"""Finite posets, modules over them, and finite encodings of Z^n-modules.

An encoding of a module M on a box is a poset morphism from the box to a
finite poset P together with a P-module H whose pullback is M.  ``encode``
builds one from the isotypic regions of M: the uptight poset of the upsets
and downset complements those regions generate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    NonCommuting,
    NotAnUpset,
    NotComparable,
    TargetMismatch,
)
from .lattice import LatticeBox, UpsetZn, add_unit, leq
from .linalg import RatMatrix, inverse, is_invertible
from .znmodule import FdModule


class FinitePoset:
    """Elements 0..size-1 with an explicit order matrix ``leq[i][j]``."""

    def __init__(self, size: int, leq_matrix: Sequence[Sequence], check: bool = True):
        self.size = int(size)
        self.leq = tuple(tuple(bool(x) for x in row) for row in leq_matrix)
        if len(self.leq) != self.size or any(len(r) != self.size for r in self.leq):
            raise DimensionMismatch("order matrix has the wrong shape")
        if check:
            self._validate()
        self.covers = self._covers()

    def _validate(self):
        r = range(self.size)
        if not all(self.leq[i][i] for i in r):
            raise NotComparable("order relation is not reflexive")
        for i in r:
            for j in r:
                if i != j and self.leq[i][j] and self.leq[j][i]:
                    raise NotComparable(f"elements {i} and {j} violate antisymmetry")
                if self.leq[i][j]:
                    for k in r:
                        if self.leq[j][k] and not self.leq[i][k]:
                            raise NotComparable(f"order is not transitive at {i} <= {j} <= {k}")

    def _covers(self) -> tuple[tuple[int, int], ...]:
        out = []
        r = range(self.size)
        for i in r:
            for j in r:
                if i != j and self.leq[i][j]:
                    if not any(k not in (i, j) and self.leq[i][k] and self.leq[k][j] for k in r):
                        out.append((i, j))
        return tuple(out)

    def topological_order(self) -> list[int]:
        return sorted(range(self.size), key=lambda i: sum(self.leq[j][i] for j in range(self.size)))

    def is_upset(self, elements: Iterable[int]) -> bool:
        s = set(elements)
        return all(j in s for i in s for j in range(self.size) if self.leq[i][j])

    def is_downset(self, elements: Iterable[int]) -> bool:
        s = set(elements)
        return all(j in s for i in s for j in range(self.size) if self.leq[j][i])

    def __eq__(self, other) -> bool:
        return isinstance(other, FinitePoset) and self.leq == other.leq

    def __hash__(self):
        return hash(self.leq)

    def __repr__(self) -> str:
        return f"FinitePoset(size={self.size}, covers={list(self.covers)})"


def box_poset(box: LatticeBox) -> tuple[FinitePoset, list]:
    """The box as a finite poset; element i is the i-th point in lexicographic order."""
    pts = box.points()
    return FinitePoset(len(pts), [[leq(a, b) for b in pts] for a in pts], check=False), pts


class PosetModule:
    """Vector spaces on a finite poset with a matrix on every cover relation."""

    def __init__(self, poset: FinitePoset, dims: Sequence[int], maps: Mapping, check: bool = True):
        self.poset = poset
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != poset.size:
            raise DimensionMismatch("need one dimension per poset element")
        self.maps = {}
        for (i, j) in poset.covers:
            mat = maps.get((i, j), RatMatrix.zeros(self.dims[j], self.dims[i]))
            if mat.shape != (self.dims[j], self.dims[i]):
                raise DimensionMismatch(f"map on cover {i}<{j} has shape {mat.shape}")
            self.maps[(i, j)] = mat
        extra = set(maps) - set(self.maps)
        if extra:
            raise NotComparable(f"maps given on non-cover pairs {sorted(extra)[:3]}")
        self._all = self._compose_all(check)

    def _compose_all(self, check: bool) -> dict:
        """Structure maps for every comparable pair, checking path independence."""
        out = {(i, i): RatMatrix.identity(self.dims[i]) for i in range(self.poset.size)}
        order = self.poset.topological_order()
        incoming = {j: [i for (i, k) in self.poset.covers if k == j] for j in range(self.poset.size)}
        for j in order:
            for i in range(self.poset.size):
                if i == j or not self.poset.leq[i][j]:
                    continue
                candidates = [self.maps[(c, j)] @ out[(i, c)] for c in incoming[j] if self.poset.leq[i][c]]
                if check and any(c != candidates[0] for c in candidates[1:]):
                    raise NonCommuting(f"paths from {i} to {j} disagree")
                out[(i, j)] = candidates[0]
        return out

    def structure_map(self, i: int, j: int) -> RatMatrix:
        if not self.poset.leq[i][j]:
            raise NotComparable(f"{i} is not below {j}")
        return self._all[(i, j)]


@dataclass
class PosetMorphism:
    """Order preserving map from a finite poset or a box to a finite poset.

    For a box source, ``mapping[k]`` is the image of the k-th box point in
    lexicographic order.
    """

    source: FinitePoset | LatticeBox
    target: FinitePoset
    mapping: tuple
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.mapping = tuple(int(x) for x in self.mapping)
        elems = self.source_elements()
        if len(self.mapping) != len(elems):
            raise DimensionMismatch("mapping needs one value per source element")
        if any(not 0 <= t < self.target.size for t in self.mapping):
            raise TargetMismatch("mapping leaves the target poset")
        self._index = {e: k for k, e in enumerate(elems)}
        for a in elems:
            for b in self._successors(a):
                if not self.target.leq[self(a)][self(b)]:
                    raise NotComparable(f"morphism does not preserve {a} <= {b}")

    def source_elements(self) -> list:
        if isinstance(self.source, LatticeBox):
            return self.source.points()
        return list(range(self.source.size))

    def _successors(self, a):
        if isinstance(self.source, LatticeBox):
            return [q for q in (add_unit(a, i) for i in range(self.source.n)) if q in self.source]
        return [j for (i, j) in self.source.covers if i == a]

    def __call__(self, a):
        return self.mapping[self._index[a]]

    def fiber(self, t: int) -> list:
        return [e for e, v in zip(self.source_elements(), self.mapping) if v == t]


def _domain_elements(domain):
    if isinstance(domain, LatticeBox):
        return domain.points(), (lambda a, b: leq(a, b))
    return list(range(domain.size)), (lambda a, b: domain.leq[a][b])


def _as_element_set(domain, upset) -> frozenset:
    if isinstance(upset, UpsetZn):
        if not isinstance(domain, LatticeBox):
            raise TargetMismatch("a Z^n upset needs a box domain")
        return upset.points_in(domain)
    return frozenset(tuple(x) if isinstance(x, (list, tuple)) else x for x in upset)


def uptight_poset(domain, upsets: Sequence) -> tuple[FinitePoset, PosetMorphism]:
    """Partition ``domain`` by membership in each upset and order the classes.

    Class A precedes class B when some a in A lies below some b in B; the
    transitive closure of that relation is the order.  The classes are
    numbered by first appearance in the domain's element order.
    """
    elems, le = _domain_elements(domain)
    sets = [_as_element_set(domain, u) for u in upsets]
    for s in sets:
        for a in s:
            for b in elems:
                if le(a, b) and b not in s:
                    raise NotAnUpset(f"{b} lies above {a} but is missing from the upset")
    fingerprints: dict = {}
    label = []
    for a in elems:
        fp = tuple(a in s for s in sets)
        label.append(fingerprints.setdefault(fp, len(fingerprints)))
    size = len(fingerprints)
    rel = [[i == j for j in range(size)] for i in range(size)]
    for ia, a in enumerate(elems):
        for ib, b in enumerate(elems):
            if le(a, b):
                rel[label[ia]][label[ib]] = True
    for k in range(size):
        for i in range(size):
            if rel[i][k]:
                for j in range(size):
                    if rel[k][j]:
                        rel[i][j] = True
    poset = FinitePoset(size, rel)
    return poset, PosetMorphism(domain, poset, label)


def pullback_module(pi: PosetMorphism, h: PosetModule):
    """The module a -> H_{pi(a)} on the source of ``pi``."""
    if h.poset != pi.target:
        raise TargetMismatch("module lives on a different poset than the morphism's target")
    if isinstance(pi.source, LatticeBox):
        box = pi.source
        dims = {a: h.dims[pi(a)] for a in box.points()}
        steps = {}
        for a in box.points():
            for i in range(box.n):
                b = add_unit(a, i)
                if b in box:
                    steps[(a, i)] = h.structure_map(pi(a), pi(b))
        return FdModule(box, dims, steps, check=False)
    src = pi.source
    dims = [h.dims[pi(a)] for a in range(src.size)]
    maps = {(i, j): h.structure_map(pi(i), pi(j)) for (i, j) in src.covers}
    return PosetModule(src, dims, maps, check=False)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def isotypic_regions(m: FdModule) -> list[frozenset]:
    """Classes of box points joined by comparable pairs with invertible structure maps."""
    uf = _UnionFind(m.box.points())
    for a in m.box.points():
        for b, mat in m._maps_from(a).items():
            if a != b and is_invertible(mat):
                uf.union(a, b)
    groups: dict = {}
    for p in m.box.points():
        groups.setdefault(uf.find(p), []).append(p)
    return [frozenset(g) for g in groups.values()]


def isotypic_upsets(box: LatticeBox, regions: Sequence[frozenset]) -> list[frozenset]:
    """For each region: the upset it generates and the complement of the downset it cogenerates."""
    pts = box.points()
    out = []
    for reg in regions:
        out.append(frozenset(p for p in pts if any(leq(r, p) for r in reg)))
        out.append(frozenset(p for p in pts if not any(leq(p, r) for r in reg)))
    return out


def region_transport(m: FdModule, region: Sequence, root) -> dict:
    """Isomorphisms M_a -> M_root for the points a of one uptight region.

    Two points are linked through the nearest common upper bound whose maps
    from both are invertible, or failing that the nearest such common lower
    bound.  The isomorphisms compose these links along a breadth first tree.
    """
    pts = m.box.points()

    def link(a, b):
        join = tuple(map(max, a, b))
        meet = tuple(map(min, a, b))
        ups = sorted((z for z in pts if leq(join, z)), key=lambda z: (sum(z), z))
        for z in ups:
            fa, fb = m.structure_map(a, z), m.structure_map(b, z)
            if is_invertible(fa) and is_invertible(fb):
                return inverse(fa) @ fb  # M_b -> M_a
        downs = sorted((z for z in pts if leq(z, meet)), key=lambda z: (-sum(z), z))
        for z in downs:
            ga, gb = m.structure_map(z, a), m.structure_map(z, b)
            if is_invertible(ga) and is_invertible(gb):
                return ga @ inverse(gb)
        return None

    transport = {root: RatMatrix.identity(m.dims[root])}
    queue = [root]
    while queue:
        a = queue.pop(0)
        for b in region:
            if b in transport:
                continue
            mat = link(a, b)
            if mat is not None:
                transport[b] = transport[a] @ mat
                queue.append(b)
    if len(transport) != len(region):
        raise NotComparable("an uptight region is not linked by invertible structure maps")
    return transport
