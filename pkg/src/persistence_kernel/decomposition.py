"""Primary decomposition of downsets and of finitely determined modules.

Every symbolic answer is checked pointwise on a determining box before it
is returned, so a wrong simplification surfaces as an exception instead of
a silently wrong decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import HullConstructionFailed
from .fringe import fringe_data
from .lattice import (
    DownsetZn,
    LatticeBox,
    add_unit,
    all_faces,
    complement,
    determining_box,
    embed,
    leq,
    project,
    require_determining,
)
from .linalg import RatMatrix, kernel_basis, rank, vstack
from .znmodule import FdModule, ModuleHom, direct_sum, quotient, socle_spaces
from .znmodule import associated_faces as module_associated_faces


@dataclass(frozen=True)
class PrimaryComponent:
    """A downset that is coprimary along ``face``."""

    face: frozenset
    downset: DownsetZn


def _box_for(d: DownsetZn, box: LatticeBox | None) -> LatticeBox:
    if box is None:
        return determining_box(d.n, d)
    require_determining(box, [d])
    return box


def localize_downset(d: DownsetZn, tau) -> DownsetZn:
    """Points q of d whose whole ray q + Z·tau stays inside d.

    A ray along tau leaving every piece would have to meet some piece in
    infinitely many points, which forces that piece to be free along tau.
    So the localization is the union of the pieces whose face contains tau.
    """
    tau = frozenset(tau)
    return DownsetZn(d.n, [(c, f) for c, f in d.pieces if tau <= f])


def global_support_downset(d: DownsetZn, tau, box: LatticeBox | None = None) -> frozenset:
    """Points of d inside the box that die under localization along every axis off tau."""
    tau = frozenset(tau)
    box = _box_for(d, box)
    killers = [localize_downset(d, {i}) for i in complement(tau, d.n)]
    return frozenset(q for q in d.points_in(box) if not any(q in k for k in killers))


def _maximal(points) -> list:
    pts = sorted(set(points))
    return [p for p in pts if not any(p != r and leq(p, r) for r in pts)]


def primary_component(d: DownsetZn, tau, box: LatticeBox | None = None) -> DownsetZn:
    """Downset cogenerated by the local support of the localization along tau."""
    tau = frozenset(tau)
    box = _box_for(d, box)
    support = global_support_downset(localize_downset(d, tau), tau, box)
    tops = _maximal(project(q, tau) for q in support)
    return DownsetZn(d.n, [(embed(q, tau, d.n, 0), tau) for q in tops])


def _check_union(d: DownsetZn, parts, box: LatticeBox, what: str) -> None:
    for q in box.points():
        if (q in d) != any(q in p for p in parts):
            raise HullConstructionFailed(f"{what} disagrees with the downset at {q}")


def canonical_decomposition(d: DownsetZn, box: LatticeBox | None = None) -> list[PrimaryComponent]:
    """One component per face with nonempty local support; their union is d."""
    box = _box_for(d, box)
    out = []
    for tau in all_faces(d.n):
        comp = primary_component(d, tau, box)
        if comp.pieces:
            out.append(PrimaryComponent(tau, comp))
    _check_union(d, [c.downset for c in out], box, "canonical decomposition")
    return out


def socle_degrees(d: DownsetZn, tau, box: LatticeBox | None = None) -> list[tuple]:
    """Degrees (modulo Z·tau) where the indicator module of d has socle along tau.

    These are the maximal points of the slice of d whose tau coordinates sit
    at the top of the box.
    """
    tau = frozenset(tau)
    box = _box_for(d, box)
    axes = complement(tau, d.n)
    out = []
    for q in box.project(tau).points():
        p = embed(q, tau, d.n, box.hi)
        if p in d and all(add_unit(p, i) not in d for i in axes):
            out.append(q)
    return out


def associated_faces(d: DownsetZn, box: LatticeBox | None = None) -> list[frozenset]:
    box = _box_for(d, box)
    return [tau for tau in all_faces(d.n) if socle_degrees(d, tau, box)]


def minimal_decomposition(d: DownsetZn, box: LatticeBox | None = None) -> list[PrimaryComponent]:
    """Per associated face, the union of coprincipal pieces at its socle degrees.

    Verifies that the union is d and that socle dimensions add up degree by
    degree, which is the minimality condition.
    """
    box = _box_for(d, box)
    out = []
    for tau in all_faces(d.n):
        degs = socle_degrees(d, tau, box)
        if degs:
            out.append(PrimaryComponent(tau, DownsetZn(d.n, [(embed(q, tau, d.n, 0), tau) for q in degs])))
    _check_union(d, [c.downset for c in out], box, "minimal decomposition")
    for tau in all_faces(d.n):
        mine = socle_degrees(d, tau, box)
        theirs = [q for c in out for q in socle_degrees(c.downset, tau, box)]
        if sorted(mine) != sorted(theirs):
            raise HullConstructionFailed(f"socle along {sorted(tau)} does not split over the components")
    return out


def irreducible_decomposition(d: DownsetZn, box: LatticeBox | None = None) -> list[DownsetZn]:
    """The irredundant coprincipal pieces of d, one per socle degree."""
    box = _box_for(d, box)
    pieces = [DownsetZn(d.n, [p]) for c in minimal_decomposition(d, box) for p in c.downset.pieces]
    for k in range(len(pieces)):
        rest = pieces[:k] + pieces[k + 1:]
        if all(any(q in r for r in rest) for q in pieces[k].points_in(box)):
            raise HullConstructionFailed(f"piece {pieces[k]} is redundant")
    return pieces


class ModuleComponent(NamedTuple):
    face: frozenset
    quotient: FdModule
    projection: ModuleHom


def primary_decomposition_module(m: FdModule) -> list[ModuleComponent]:
    """Quotients M/M^tau, where M^tau is the kernel of M into its tau-coprimary hull summands.

    The hull comes from the socle functionals of the fringe presentation, one
    coprincipal downset per socle basis vector, grouped by face.
    """
    data = fringe_data(m)
    out = []
    for tau in all_faces(m.n):
        cols = [(q, a, f) for q, (face_, a, f) in enumerate(data.hull) if face_ == tau]
        if not cols:
            continue
        kernels = {}
        for x in m.box.points():
            rows = [f @ m.structure_map(x, a) for q, a, f in cols if x in data.matrix.cols[q]]
            kernels[x] = kernel_basis(vstack(rows, cols=m.dims[x])) if rows else RatMatrix.identity(m.dims[x])
        quo, proj = quotient(m, kernels)
        out.append(ModuleComponent(tau, quo, proj))
    if out:
        total = direct_sum(*[c.quotient for c in out])
        mats = {x: vstack([c.projection.at(x) for c in out], cols=m.dims[x]) for x in m.box.points()}
        diagonal = ModuleHom(m, total, mats)
        if not diagonal.is_injective():
            raise HullConstructionFailed("module does not embed in its primary quotients")
    elif not m.is_zero():
        raise HullConstructionFailed("nonzero module with no socle")
    for c in out:
        if module_associated_faces(c.quotient) != [c.face]:
            raise HullConstructionFailed(f"component along {sorted(c.face)} is not coprimary")
        if not _socle_rank_preserved(m, c):
            raise HullConstructionFailed(f"component along {sorted(c.face)} loses socle")
    return out


def _socle_rank_preserved(m: FdModule, comp: ModuleComponent) -> bool:
    """The projection is injective on the socle along the component's face."""
    for q, (p, basis) in socle_spaces(m, comp.face).items():
        if rank(comp.projection.at(p) @ basis) != basis.cols:
            return False
    return True
