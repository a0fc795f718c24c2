import random

import pytest

from helpers import negate, random_elements, same_hilbert_and_ranks
from persistence_kernel import catalog
from persistence_kernel.errors import BoxNotDetermining, NonCommuting, NotAHomomorphism, NotComparable
from persistence_kernel.generators import random_module
from persistence_kernel.lattice import DownsetZn, LatticeBox, UpsetZn, all_faces, face
from persistence_kernel.linalg import RatMatrix, rank
from persistence_kernel.znmodule import (
    FdModule,
    ModuleHom,
    closed_socle_along,
    generated_spaces,
    global_support,
    identity_hom,
    injective_by_socles,
    is_injective_hom,
    is_surjective_hom,
    localize,
    matlis_dual,
    quotient,
    quotient_restriction,
    socle_spaces,
    submodule,
    surjective_by_tops,
    top_along,
)

BOX = LatticeBox((-1, -1), (2, 2))
ORTHANT = FdModule.from_upset(UpsetZn(2, [((0, 0), [])]), BOX)
EMPTY, X_AXIS, Y_AXIS, BOTH = face(), face(0), face(1), face(0, 1)


def nonzero(m):
    return {p: d for p, d in m.dims.items() if d}


def test_validate_examples():
    line = LatticeBox((0,), (3,))
    FdModule(line, {(0,): 1, (1,): 1}, {((0,), 0): RatMatrix(1, 1, [[5]])})
    assert ORTHANT.box == BOX
    square = LatticeBox((0, 0), (1, 1))
    one, zero = RatMatrix(1, 1, [[1]]), RatMatrix(1, 1, [[0]])
    dims = {p: 1 for p in square.points()}
    with pytest.raises(NonCommuting):
        FdModule(square, dims, {((0, 0), 0): one, ((0, 0), 1): one, ((1, 0), 1): one, ((0, 1), 0): zero})


def test_structure_map_examples():
    assert ORTHANT.structure_map((1, 1), (1, 1)) == RatMatrix.identity(1)
    assert ORTHANT.structure_map((0, 0), (1, 1)) == RatMatrix.identity(1)
    assert ORTHANT.structure_map((5, 5), (9, 9)) == RatMatrix.identity(1)
    d = FdModule.from_downset(DownsetZn(2, [((1, 1), [])]), BOX)
    assert d.structure_map((1, 1), (2, 1)).shape == (0, 1)
    with pytest.raises(NotComparable):
        ORTHANT.structure_map((1, 0), (0, 1))


def test_hilbert_and_rank_examples():
    assert ORTHANT.dim((5, 5)) == 1 and ORTHANT.dim((-1, 0)) == 0
    elder = catalog.elder_module()
    assert elder.dim((1, 1)) == 3
    assert elder.rank_function((1, 1), (2, 2)) == 1
    const = FdModule.from_upset(UpsetZn(2, [((0, 0), [0, 1])]), BOX)
    assert const.rank_function((-7, -7), (7, 7)) == 1
    assert FdModule.zero(BOX).rank_function((0, 0), (1, 1)) == 0


def test_box_must_determine_the_set():
    with pytest.raises(BoxNotDetermining):
        FdModule.from_upset(UpsetZn(2, [((5, 5), [])]), BOX)


def test_matlis_dual_examples():
    dual = matlis_dual(ORTHANT)
    assert dual.box == BOX.negate()
    corner = FdModule.from_downset(DownsetZn(2, [((0, 0), [])]), dual.box)
    assert same_hilbert_and_ranks(dual, corner)
    sky = catalog.skyscraper((0, 0))
    assert nonzero(matlis_dual(sky)) == {(0, 0): 1}
    elder = catalog.elder_module()
    assert same_hilbert_and_ranks(matlis_dual(matlis_dual(elder)), elder)


def test_localize_examples():
    loc = localize(ORTHANT, X_AXIS)
    assert all(loc.dims[p] == (1 if p[1] >= 0 else 0) for p in BOX.points())
    assert localize(catalog.skyscraper((0, 0)), X_AXIS).is_zero()
    strip = FdModule.from_downset(DownsetZn(2, [((0, 0), [0])]), BOX)
    assert localize(strip, Y_AXIS).is_zero()


def test_quotient_restriction_examples():
    q = quotient_restriction(ORTHANT, X_AXIS)
    assert q.n == 1 and nonzero(q) == {(0,): 1, (1,): 1, (2,): 1}
    full = quotient_restriction(catalog.elder_module(), BOTH)
    assert full.n == 0 and full.dims[()] == 1
    elder = quotient_restriction(catalog.elder_module(), X_AXIS)
    assert [elder.dims[(y,)] for y in range(-1, 4)] == [0, 1, 2, 1, 1]


def test_socle_examples():
    corner = FdModule.from_downset(DownsetZn(2, [((0, 0), [])]), BOX)
    assert nonzero(closed_socle_along(corner, EMPTY)) == {(0, 0): 1}
    assert closed_socle_along(catalog.elder_module(), EMPTY).total_dim() == 0
    strip = FdModule.from_downset(DownsetZn(2, [((0, 0), [0])]), BOX)
    assert nonzero(closed_socle_along(strip, X_AXIS)) == {(0,): 1}


def test_top_examples():
    assert nonzero(top_along(ORTHANT, EMPTY)) == {(0, 0): 1}
    band = FdModule.from_upset(UpsetZn(2, [((0, 0), [0])]), BOX)
    assert nonzero(top_along(band, X_AXIS)) == {(0,): 1}
    tops = nonzero(top_along(catalog.elder_module(), EMPTY))
    assert tops == {(1, 0): 1, (0, 1): 1, (1, 1): 1}


def test_global_support_examples():
    elder = catalog.elder_module()
    assert same_hilbert_and_ranks(global_support(elder, BOTH), elder)
    const = FdModule.from_upset(UpsetZn(2, [((0, 0), [0, 1])]), BOX)
    assert global_support(const, EMPTY).is_zero()
    corner = FdModule.from_downset(DownsetZn(2, [((0, 0), [])]), BOX)
    assert same_hilbert_and_ranks(global_support(corner, EMPTY), corner)


def test_hom_criteria_examples():
    elder = catalog.elder_module()
    ident = identity_hom(elder)
    assert is_injective_hom(ident) and is_surjective_hom(ident)
    zero = ModuleHom(elder, elder, {})
    assert not is_injective_hom(zero) and not is_surjective_hom(zero)
    assert not injective_by_socles(zero) and not surjective_by_tops(zero)

    corner = FdModule.from_downset(DownsetZn(2, [((1, 1), [])]), BOX)
    _, inc = submodule(corner, generated_spaces(corner, [((1, 1), RatMatrix.identity(1))]))
    assert is_injective_hom(inc) and injective_by_socles(inc)
    assert not is_surjective_hom(inc) and not surjective_by_tops(inc)


def test_hom_must_commute():
    sky = catalog.skyscraper((0, 0), BOX)
    with pytest.raises(NotAHomomorphism):
        ModuleHom(ORTHANT, ORTHANT, {(0, 0): RatMatrix.identity(1)})
    ModuleHom(sky, ORTHANT, {})


def _corpus(seed, count=40):
    rng = random.Random(seed)
    return [random_module(rng, rng.choice([1, 2, 2, 3]), rng.choice([2, 3]), 2) for _ in range(count)]


def test_support_commutes_with_localization():
    for m in _corpus(21):
        for tau in all_faces(m.n):
            for tau2 in all_faces(m.n):
                a = global_support(localize(m, tau), tau2)
                b = localize(global_support(m, tau2), tau)
                assert a.dims == b.dims
                if not tau <= tau2:
                    assert a.is_zero()


def test_socle_is_left_exact():
    rng = random.Random(22)
    for m in _corpus(23):
        sub_spaces = generated_spaces(m, random_elements(rng, m, 2))
        sub, _ = submodule(m, sub_spaces)
        _, proj = quotient(m, sub_spaces)
        for tau in all_faces(m.n):
            small = socle_spaces(sub, tau)
            for q, (p, basis) in socle_spaces(m, tau).items():
                killed = basis.cols - rank(proj.mats[p] @ basis)
                assert killed == (small[q][1].cols if q in small else 0)
            for q in small:
                assert q in socle_spaces(m, tau)


def test_top_is_dual_socle():
    for m in _corpus(24, 20):
        dual = matlis_dual(m)
        for tau in all_faces(m.n):
            tops, socs = top_along(m, tau), closed_socle_along(dual, tau)
            assert all(tops.dim(negate(q)) == socs.dim(q) for q in socs.box.points())
