"""Finite encodings of finitely determined modules.

``encode`` first tries the uptight poset of the isotypic upsets and checks
that an explicit isomorphism to the pullback exists.  Isotypic regions alone
do not always suffice: two points can share an uptight region while their
images in a common later region differ.  In that case the family of upsets
is refined by the labels of a fringe presentation of the module, on whose
uptight regions the presentation, and hence the module, is constant.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import KernelError
from .fringe import fringe_data, hull_hom
from .lattice import leq
from .linalg import RatMatrix, image_basis, inverse, is_invertible, solve
from .posets import (
    FinitePoset,
    PosetModule,
    PosetMorphism,
    isotypic_regions,
    isotypic_upsets,
    pullback_module,
    region_transport,
    uptight_poset,
)
from .znmodule import FdModule


@dataclass
class Encoding:
    poset: FinitePoset
    morphism: PosetMorphism
    module: PosetModule
    transport: dict  # box point -> isomorphism from M there to H at its image
    refined: bool  # whether fringe labels had to be added to the isotypic upsets

    def pullback(self) -> FdModule:
        return pullback_module(self.morphism, self.module)


def _isotypic_encoding(m: FdModule) -> Encoding:
    regions = isotypic_regions(m)
    poset, pi = uptight_poset(m.box, isotypic_upsets(m.box, regions))
    reps = [pi.fiber(t)[0] for t in range(poset.size)]
    transport = {}
    for t in range(poset.size):
        transport.update(region_transport(m, pi.fiber(t), reps[t]))
    maps = {}
    for (s, t) in poset.covers:
        # a cover of the uptight poset is always witnessed by a comparable pair
        a, b = next((a, b) for a in pi.fiber(s) for b in pi.fiber(t) if leq(a, b))
        maps[(s, t)] = transport[b] @ m.structure_map(a, b) @ inverse(transport[a])
    h = PosetModule(poset, [m.dims[r] for r in reps], maps)
    return Encoding(poset, pi, h, transport, refined=False)


def _fringe_encoding(m: FdModule) -> Encoding:
    data = fringe_data(m)
    mm = data.matrix
    box = m.box
    row_sets = [u.points_in(box) for u in mm.rows]
    col_sets = [d.points_in(box) for d in mm.cols]
    everything = frozenset(box.points())
    family = isotypic_upsets(box, isotypic_regions(m)) + row_sets + [everything - d for d in col_sets]
    poset, pi = uptight_poset(box, family)
    act_r = {x: [p for p, s in enumerate(row_sets) if x in s] for x in box.points()}
    act_c = {x: [q for q, s in enumerate(col_sets) if x in s] for x in box.points()}
    images = {}
    for x in box.points():
        data_x = [[mm.phi[p, q] for p in act_r[x]] for q in act_c[x]]
        images[x] = image_basis(RatMatrix(len(act_c[x]), len(act_r[x]), data_x))
    reps = [pi.fiber(t)[0] for t in range(poset.size)]
    maps = {}
    for (s, t) in poset.covers:
        a, b = reps[s], reps[t]
        proj = RatMatrix(len(act_c[b]), len(act_c[a]), [[1 if x == y else 0 for y in act_c[a]] for x in act_c[b]])
        maps[(s, t)] = solve(images[b], proj @ images[a])
    h = PosetModule(poset, [images[r].cols for r in reps], maps)
    hull = hull_hom(m, data)
    transport = {x: solve(images[x], hull.mats[x]) for x in box.points()}
    return Encoding(poset, pi, h, transport, refined=True)


def encoding_is_isomorphism(m: FdModule, enc: Encoding) -> bool:
    """Whether the transport maps are isomorphisms intertwining M with the pullback."""
    pi, h = enc.morphism, enc.module
    for a in m.box.points():
        if h.dims[pi(a)] != m.dims[a] or not is_invertible(enc.transport[a]):
            return False
        for b, mat in m._maps_from(a).items():
            if enc.transport[b] @ mat != h.structure_map(pi(a), pi(b)) @ enc.transport[a]:
                return False
    return True


def encode(m: FdModule) -> Encoding:
    try:
        enc = _isotypic_encoding(m)
        if encoding_is_isomorphism(m, enc):
            return enc
    except KernelError:
        pass
    enc = _fringe_encoding(m)
    if not encoding_is_isomorphism(m, enc):
        raise KernelError("fringe refined encoding failed its isomorphism check")
    return enc
