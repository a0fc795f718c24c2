"""Birth and death posets, QR codes, recovery, and elder morphisms.

A birth degree is a flat upset ``b + Z·rho + N^n`` where the module has top
along ``rho``; a death degree is a coprincipal downset ``a + Z·tau - N^n``
where it has socle along ``tau``.  The generator space of a birth is the
whole graded piece of M at its corner (face coordinates at the bottom of the
box), and the socle space of a death is the closed socle at its corner
(face coordinates at the top).

The QR block for a birth beta and a death alpha sends a generator y to the
coordinates of M(b -> a)·y in the chosen socle basis, using the orthogonal
retraction onto that basis.  The element-wise death functor, which returns
the socle vector only when the image of y actually dies at alpha, is not
additive; ``death_functor`` exposes it and agrees with the block whenever
it is nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import KernelError, NotInGenSpace
from .fringe import MonomialMatrix, fringe_to_module
from .lattice import (
    DownsetZn,
    LatticeBox,
    UpsetZn,
    add_unit,
    all_faces,
    complement,
    embed,
    face_mask,
    normalize_corner,
    project,
)
from .linalg import RatMatrix, hstack, inverse, orthogonal_retraction, solve, sum_spaces, vstack
from .znmodule import (
    FdModule,
    generated_spaces,
    quotient,
    socle_spaces,
    submodule,
    top_generators,
)


@dataclass(frozen=True)
class BirthDegree:
    """The flat upset ``coset + Z·face + N^n``."""

    face: frozenset
    coset: tuple

    def __post_init__(self):
        object.__setattr__(self, "face", frozenset(self.face))
        object.__setattr__(self, "coset", normalize_corner(self.coset, self.face))

    def precedes(self, other: "BirthDegree") -> bool:
        """self ≼ other: the upset of self contains the upset of other."""
        return self.face >= other.face and all(
            self.coset[i] <= other.coset[i] for i in range(len(self.coset)) if i not in self.face
        )

    def upset(self) -> UpsetZn:
        return UpsetZn(len(self.coset), [(self.coset, self.face)])

    def point(self, box: LatticeBox) -> tuple:
        return box.lower_to_bottom(self.coset, self.face)

    def sort_key(self):
        return (face_mask(self.face), self.coset)


@dataclass(frozen=True)
class DeathDegree:
    """The coprincipal downset ``coset + Z·face - N^n``."""

    face: frozenset
    coset: tuple

    def __post_init__(self):
        object.__setattr__(self, "face", frozenset(self.face))
        object.__setattr__(self, "coset", normalize_corner(self.coset, self.face))

    def precedes(self, other: "DeathDegree") -> bool:
        """self ≼ other: the downset of self sits inside the downset of other."""
        return self.face <= other.face and all(
            self.coset[i] <= other.coset[i] for i in range(len(self.coset)) if i not in other.face
        )

    def downset(self) -> DownsetZn:
        return DownsetZn(len(self.coset), [(self.coset, self.face)])

    def point(self, box: LatticeBox) -> tuple:
        return box.raise_to_top(self.coset, self.face)

    def sort_key(self):
        return (face_mask(self.face), self.coset)


def birth_precedes_death(beta: BirthDegree, alpha: DeathDegree) -> bool:
    """Whether the upset of beta meets the downset of alpha."""
    free = beta.face | alpha.face
    return all(beta.coset[i] <= alpha.coset[i] for i in range(len(beta.coset)) if i not in free)


def birth_poset(m: FdModule) -> list[BirthDegree]:
    out = []
    for rho in all_faces(m.n):
        for q in top_generators(m, rho):
            out.append(BirthDegree(rho, embed(q, rho, m.n, 0)))
    return sorted(out, key=BirthDegree.sort_key)


def death_poset(m: FdModule) -> list[DeathDegree]:
    out = []
    for tau in all_faces(m.n):
        for q in socle_spaces(m, tau):
            out.append(DeathDegree(tau, embed(q, tau, m.n, 0)))
    return sorted(out, key=DeathDegree.sort_key)


def gen_space(m: FdModule, beta: BirthDegree) -> tuple[tuple, RatMatrix]:
    """Point carrying Gen_beta and the basis (identity) of M there."""
    p = beta.point(m.box)
    return p, RatMatrix.identity(m.dims[p])


def gen_to_top(m: FdModule, beta: BirthDegree) -> RatMatrix:
    """The natural surjection Gen_beta -> top along beta's face, in the top_generators basis.

    Gen_beta is written in the basis of M at beta's point; the top is the
    quotient by the images from one step lower off the face, with the
    complement vectors of ``top_generators`` as its basis.
    """
    p = beta.point(m.box)
    d = m.dims[p]
    tops = top_generators(m, beta.face).get(project(beta.coset, beta.face))
    if tops is None:
        return RatMatrix(0, d)
    _, extra = tops
    images = [m.step(add_unit(p, i, -1), i) for i in complement(beta.face, m.n)]
    span = sum_spaces(*images, dim=d)
    full = hstack([span, extra], rows=d)
    return inverse(full).select_rows(range(span.cols, d))


def soc_space(m: FdModule, alpha: DeathDegree) -> tuple[tuple, RatMatrix]:
    """Point carrying Soc_alpha and a basis of the socle inside M there."""
    spaces = socle_spaces(m, alpha.face)
    q = project(alpha.coset, alpha.face)
    p = alpha.point(m.box)
    if q not in spaces:
        return p, RatMatrix(m.dims[p], 0)
    return spaces[q]


def _check_gen_element(m: FdModule, beta: BirthDegree, y) -> RatMatrix:
    p = beta.point(m.box)
    if not isinstance(y, RatMatrix):
        y = list(y)
        if len(y) != m.dims[p]:
            raise NotInGenSpace(f"element with {len(y)} entries does not lie in Gen at {p} of dimension {m.dims[p]}")
        y = RatMatrix.from_columns([y], m.dims[p])
    if y.shape != (m.dims[p], 1):
        raise NotInGenSpace(f"element of shape {y.shape} does not lie in Gen at {p} of dimension {m.dims[p]}")
    return y


def death_functor(m: FdModule, beta: BirthDegree, y, alpha: DeathDegree) -> RatMatrix:
    """Socle coordinates at alpha of the cyclic submodule generated by y, or zero.

    The submodule generated by y is spanned at alpha's point by the single
    vector v = M(b -> a)·y.  It has socle there exactly when v is nonzero
    and dies under every step off alpha's face, in which case v lies in the
    socle of M and its coordinates in the socle basis are returned.
    """
    y = _check_gen_element(m, beta, y)
    a, basis = soc_space(m, alpha)
    zero = RatMatrix(basis.cols, 1)
    if not birth_precedes_death(beta, alpha) or not basis.cols:
        return zero
    v = m.structure_map(beta.point(m.box), a) @ y
    if v.is_zero():
        return zero
    if any(not (m.step(a, i) @ v).is_zero() for i in complement(alpha.face, m.n)):
        return zero
    coords = solve(basis, v)
    if coords is None:
        raise KernelError("socle vector outside the socle basis span")
    return coords


@dataclass
class QRCode:
    """Generator spaces on births, socle spaces on deaths, and the blocks between them.

    ``blocks[(beta, alpha)]`` has shape (soc dim, gen dim) and is present
    for every comparable pair.
    """

    n: int
    births: list
    deaths: list
    gen_dims: dict
    soc_dims: dict
    blocks: dict = field(default_factory=dict)

    def block(self, beta: BirthDegree, alpha: DeathDegree) -> RatMatrix:
        return self.blocks.get((beta, alpha), RatMatrix(self.soc_dims[alpha], self.gen_dims[beta]))

    def to_monomial_matrix(self) -> MonomialMatrix:
        """The QR code read as a fringe presentation with one row per generator vector."""
        rows, row_keys = [], []
        for beta in self.births:
            for j in range(self.gen_dims[beta]):
                rows.append(beta.upset())
                row_keys.append((beta, j))
        cols, col_keys = [], []
        for alpha in self.deaths:
            for k in range(self.soc_dims[alpha]):
                cols.append(alpha.downset())
                col_keys.append((alpha, k))
        phi = [[self.block(b, a)[k, j] for (a, k) in col_keys] for (b, j) in row_keys]
        return MonomialMatrix(rows, cols, RatMatrix(len(rows), len(cols), phi))


def qr_code(m: FdModule) -> QRCode:
    births, deaths = birth_poset(m), death_poset(m)
    gen_dims = {b: m.dims[b.point(m.box)] for b in births}
    socs = {a: soc_space(m, a) for a in deaths}
    retractions = {a: orthogonal_retraction(basis) for a, (_, basis) in socs.items()}
    blocks = {}
    for beta in births:
        b = beta.point(m.box)
        for alpha in deaths:
            if birth_precedes_death(beta, alpha):
                a = socs[alpha][0]
                blocks[(beta, alpha)] = retractions[alpha] @ m.structure_map(b, a)
    return QRCode(m.n, births, deaths, gen_dims, {a: s[1].cols for a, s in socs.items()}, blocks)


def recover(qr: QRCode, box: LatticeBox) -> FdModule:
    """Image of the map from the free flat modules on Gen to the product of coprincipal modules on Soc."""
    return fringe_to_module(qr.to_monomial_matrix(), box)


def qr_naturality_holds(m: FdModule, qr: QRCode) -> bool:
    """For beta ≼ beta' ≼ alpha, the beta' block after Gen(beta -> beta') equals the beta block."""
    for beta in qr.births:
        for beta2 in qr.births:
            if beta == beta2 or not beta.precedes(beta2):
                continue
            g = m.structure_map(beta.point(m.box), beta2.point(m.box))
            for alpha in qr.deaths:
                if birth_precedes_death(beta2, alpha) and qr.block(beta2, alpha) @ g != qr.block(beta, alpha):
                    return False
    return True


# elder submodules and morphisms

def _gen_elements(m: FdModule, births: Sequence[BirthDegree]):
    return [(b.point(m.box), RatMatrix.identity(m.dims[b.point(m.box)])) for b in births]


def elder_spaces(m: FdModule, beta: BirthDegree, strict: bool = True) -> dict:
    """Subspaces of the submodule generated by Gen of the births before beta."""
    chosen = [b for b in birth_poset(m) if b.precedes(beta) and not (strict and b == beta)]
    if not strict and beta not in chosen:
        chosen.append(beta)
    return generated_spaces(m, _gen_elements(m, chosen))


def elder_submodule(m: FdModule, beta: BirthDegree) -> FdModule:
    return submodule(m, elder_spaces(m, beta, strict=True))[0]


def extant_submodule(m: FdModule, beta: BirthDegree) -> FdModule:
    return submodule(m, elder_spaces(m, beta, strict=False))[0]


def _elder_quotient_maps(m: FdModule, beta: BirthDegree):
    """Elder quotient together with a function sending vectors of M in the extant part to it."""
    big = elder_spaces(m, beta, strict=False)
    small = elder_spaces(m, beta, strict=True)
    sub, inc = submodule(m, big)
    small_in_sub = {p: solve(inc.mats[p], small[p]) for p in m.box.points()}
    quo, proj = quotient(sub, small_in_sub)

    def push(p, v: RatMatrix) -> RatMatrix:
        x = solve(inc.mats[p], v)
        if x is None:
            raise NotInGenSpace(f"vector at {p} is not in the extant submodule")
        return proj.mats[p] @ x

    return quo, push


def elder_quotient(m: FdModule, beta: BirthDegree) -> FdModule:
    return _elder_quotient_maps(m, beta)[0]


@dataclass
class ElderMorphism:
    """Map from top_beta M to the socle of the elder quotient, one block per death."""

    beta: BirthDegree
    top_point: tuple
    top_basis: RatMatrix
    blocks: dict

    def matrix(self) -> RatMatrix:
        return vstack([self.blocks[a] for a in sorted(self.blocks, key=DeathDegree.sort_key)], cols=self.top_basis.cols)


def elder_morphism(m: FdModule, beta: BirthDegree) -> ElderMorphism:
    """The QR code of the elder quotient restricted to beta, read on top_beta M.

    Checks that the elder quotient has top only at beta and that its top
    there has the same dimension as the top of M.
    """
    quo, push = _elder_quotient_maps(m, beta)
    for b in birth_poset(quo):
        if b != beta:
            raise KernelError(f"elder quotient has top away from the birth, at {b}")
    q = project(beta.coset, beta.face)
    tops = top_generators(m, beta.face).get(q)
    if tops is None:
        raise KernelError("birth degree carries no top")
    p, vectors = tops
    quo_top = top_generators(quo, beta.face).get(q)
    if quo_top is None or quo_top[1].cols != vectors.cols:
        raise KernelError("elder quotient top differs from the top of the module")
    images = push(p, vectors)
    blocks = {}
    for alpha in death_poset(quo):
        if not birth_precedes_death(beta, alpha):
            continue
        a, basis = soc_space(quo, alpha)
        blocks[alpha] = orthogonal_retraction(basis) @ quo.structure_map(p, a) @ images
    return ElderMorphism(beta, p, vectors, blocks)
