import random

import pytest

from helpers import same_hilbert_and_ranks
from persistence_kernel import catalog
from persistence_kernel.errors import NotInGenSpace
from persistence_kernel.fringe import meets
from persistence_kernel.generators import random_module
from persistence_kernel.lattice import DownsetZn, LatticeBox, UpsetZn, face
from persistence_kernel.linalg import RatMatrix, rank
from persistence_kernel.qr import (
    BirthDegree,
    DeathDegree,
    birth_poset,
    death_functor,
    death_poset,
    elder_morphism,
    elder_quotient,
    elder_spaces,
    elder_submodule,
    extant_submodule,
    gen_space,
    qr_code,
    qr_naturality_holds,
    recover,
)
from persistence_kernel.znmodule import FdModule, generated_spaces, spaces_equal, top_along

BOX = LatticeBox((-1, -1), (2, 2))
X, FULL = face(0), face(0, 1)
ELDER_BETA = BirthDegree([], (1, 1))


def _random_corpus(seed, count):
    rng = random.Random(seed)
    return [random_module(rng, rng.choice([1, 2, 2]), rng.choice([2, 3]), 2) for _ in range(count)]


def test_degree_orders():
    assert BirthDegree(X, (5, 0)) == BirthDegree(X, (0, 0))
    assert BirthDegree(X, (0, 0)).precedes(BirthDegree([], (3, 1)))
    assert not BirthDegree([], (3, 1)).precedes(BirthDegree(X, (0, 0)))
    assert DeathDegree([], (0, 0)).precedes(DeathDegree(X, (0, 1)))
    assert not DeathDegree(X, (0, 1)).precedes(DeathDegree([], (0, 0)))


def test_birth_poset_examples():
    assert birth_poset(FdModule.from_upset(UpsetZn(2, [((1, 0), [])]), BOX)) == [BirthDegree([], (1, 0))]
    band = FdModule.from_upset(UpsetZn(2, [((0, 0), [0])]), BOX)
    assert birth_poset(band) == [BirthDegree(X, (0, 0))]
    assert set(birth_poset(catalog.elder_module())) == {
        BirthDegree([], (1, 0)), BirthDegree([], (0, 1)), BirthDegree([], (1, 1)),
    }


def test_death_poset_examples():
    corner = FdModule.from_downset(DownsetZn(2, [((1, 0), [])]), BOX)
    assert death_poset(corner) == [DeathDegree([], (1, 0))]
    whole = FdModule.from_upset(UpsetZn(2, [((0, 0), [0, 1])]), BOX)
    assert death_poset(whole) == [DeathDegree(FULL, (0, 0))]
    assert {d.face for d in death_poset(catalog.cross_module())} == {face(0), face(1)}


def test_gen_space_examples():
    assert gen_space(catalog.skyscraper((0, 0)), BirthDegree([], (0, 0)))[1].cols == 1
    band = FdModule.from_upset(UpsetZn(2, [((0, 0), [0])]), BOX)
    assert gen_space(band, BirthDegree(X, (0, 0)))[1].cols == 1
    point, basis = gen_space(catalog.elder_module(), ELDER_BETA)
    assert point == (1, 1) and basis.cols == 3


def test_death_functor_examples():
    sky = catalog.skyscraper((0, 0))
    beta, alpha = BirthDegree([], (0, 0)), DeathDegree([], (0, 0))
    assert death_functor(sky, beta, [1], alpha) == RatMatrix(1, 1, [[1]])
    late = BirthDegree([], (1, 1))
    assert death_functor(sky, late, [], alpha).is_zero()
    with pytest.raises(NotInGenSpace):
        death_functor(sky, beta, [1, 2], alpha)


def test_death_functor_on_elder_matches_submodule_generation():
    m = catalog.elder_module()
    qr = qr_code(m)
    exy = RatMatrix(3, 1, [[0], [0], [1]])
    point = ELDER_BETA.point(m.box)
    generated = generated_spaces(m, [(point, exy)])
    for alpha in death_poset(m):
        value = death_functor(m, ELDER_BETA, exy, alpha)
        a = alpha.point(m.box)
        in_sub = generated[a].cols > 0
        if not value.is_zero():
            assert in_sub
            assert value == qr.block(ELDER_BETA, alpha) @ exy


def test_qr_code_examples():
    sky = catalog.skyscraper((0, 0))
    qr = qr_code(sky)
    assert len(qr.births) == len(qr.deaths) == 1
    assert qr.block(qr.births[0], qr.deaths[0]) == RatMatrix(1, 1, [[1]])

    orthant = FdModule.from_upset(UpsetZn(2, [((0, 0), [])]), BOX)
    qr = qr_code(orthant)
    assert qr.births == [BirthDegree([], (0, 0))]
    assert qr.deaths == [DeathDegree(FULL, (0, 0))]
    assert not qr.block(qr.births[0], qr.deaths[0]).is_zero()


def test_recover_examples():
    for m in [catalog.skyscraper((0, 0)), FdModule.from_downset(DownsetZn(2, [((1, 0), [])]), BOX), catalog.elder_module()]:
        assert same_hilbert_and_ranks(recover(qr_code(m), m.box), m)


def test_qr_invariants_random():
    for m in _random_corpus(51, 60):
        qr = qr_code(m)
        assert qr_naturality_holds(m, qr)
        for (beta, alpha), block in qr.blocks.items():
            if not block.is_zero():
                assert meets(beta.upset(), alpha.downset())
        for beta in qr.births:
            point, basis = gen_space(m, beta)
            for alpha in qr.deaths:
                for j in range(basis.cols):
                    y = basis.select_columns([j])
                    value = death_functor(m, beta, y, alpha)
                    if not value.is_zero():
                        assert value == qr.block(beta, alpha) @ y


def test_elder_examples():
    m = catalog.elder_module()
    first = BirthDegree([], (1, 0))
    assert elder_submodule(m, first).is_zero()
    top = BirthDegree([], (3, 3))
    assert same_hilbert_and_ranks(extant_submodule(m, top), m)

    expected = generated_spaces(m, [((1, 0), RatMatrix(1, 1, [[1]])), ((0, 1), RatMatrix(1, 1, [[1]]))])
    assert spaces_equal(elder_spaces(m, ELDER_BETA), expected)
    quo = elder_quotient(m, ELDER_BETA)
    assert {p: d for p, d in quo.dims.items() if d} == {(1, 1): 1}
    morph = elder_morphism(m, ELDER_BETA)
    assert morph.matrix().shape == (1, 1) and not morph.matrix().is_zero()

    sky = catalog.skyscraper((0, 0))
    assert elder_morphism(sky, BirthDegree([], (0, 0))).matrix() == RatMatrix(1, 1, [[1]])


def test_elder_quotient_tops_random():
    for m in _random_corpus(52, 40):
        for beta in birth_poset(m):
            quo = elder_quotient(m, beta)
            assert birth_poset(quo) == [beta]
            got = top_along(quo, beta.face)
            want = top_along(m, beta.face)
            degree = tuple(c for i, c in enumerate(beta.coset) if i not in beta.face)
            assert got.dim(degree) == want.dim(degree)
            morph = elder_morphism(m, beta)
            assert rank(morph.matrix()) == morph.matrix().cols
