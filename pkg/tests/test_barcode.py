import random
from collections import Counter

import pytest

from oracles import rank_invariant_barcode, sweep_barcode
from persistence_kernel import catalog
from persistence_kernel.barcode import (
    NEG_INF,
    POS_INF,
    Bar,
    Endpoint,
    RModule1D,
    barcode_module,
    barcode_with_map,
    elder_projection,
    functorial_barcode,
    gr_soc_spaces,
    interval_module,
    top_spaces,
)
from persistence_kernel.errors import DimensionMismatch, EmptyInterval
from persistence_kernel.generators import random_rmodule
from persistence_kernel.linalg import RatMatrix, rank, vstack


def closed(v):
    return Endpoint(v, "closed")


def opened(v):
    return Endpoint(v, "open")


def test_endpoint_orders():
    births = [NEG_INF, closed(0), opened(0), closed(1)]
    assert sorted(reversed(births), key=Endpoint.birth_key) == births
    deaths = [closed(0), opened(1), closed(1), POS_INF]
    assert sorted(reversed(deaths), key=Endpoint.death_key) == deaths
    with pytest.raises(ValueError):
        Endpoint(None, "closed")


def test_interval_module_examples():
    assert interval_module(Bar(closed(0), opened(1))).dims == [0, 1, 1, 0, 0]
    assert interval_module(Bar(NEG_INF, POS_INF)).dims == [1]
    assert interval_module(Bar(closed(0), closed(0))).dims == [0, 1, 0]
    with pytest.raises(EmptyInterval):
        Bar(opened(0), closed(0))
    with pytest.raises(EmptyInterval):
        Bar(closed(2), opened(1))


def test_module_shape_checks():
    with pytest.raises(DimensionMismatch):
        RModule1D([1, 0], [0, 0, 0, 0, 0], [RatMatrix(0, 0)] * 4)
    with pytest.raises(DimensionMismatch):
        RModule1D([0], [1, 1, 1], [RatMatrix.identity(1), RatMatrix(2, 1)])


def test_top_space_examples():
    assert top_spaces(interval_module(Bar(closed(0), opened(1)))) == {closed(0): 1}
    assert top_spaces(interval_module(Bar(opened(0), closed(1)))) == {opened(0): 1}
    assert top_spaces(interval_module(Bar(NEG_INF, closed(1)))) == {NEG_INF: 1}


def test_graded_socle_examples():
    assert gr_soc_spaces(interval_module(Bar(closed(0), opened(1)))) == {(opened(1), closed(0)): 1}
    two = catalog.two_bar_module()
    assert gr_soc_spaces(two) == {(opened(2), closed(0)): 1, (opened(2), closed(1)): 1}
    assert gr_soc_spaces(interval_module(Bar(closed(0), POS_INF))) == {(POS_INF, closed(0)): 1}


def test_elder_projection_examples():
    single = interval_module(Bar(closed(0), opened(1)))
    i, j = single.cell_of_birth(closed(0)), single.cell_of_death(opened(1))
    assert (i, j) == (1, 2)
    assert elder_projection(single, i, j) == RatMatrix.identity(1)
    two = catalog.two_bar_module()
    omega = elder_projection(two, two.cell_of_birth(closed(1)), two.cell_of_death(opened(2)))
    assert omega.shape == (1, 1) and not omega.is_zero()


def test_functorial_barcode_examples():
    bars = [Bar(closed(0), opened(1)), Bar(opened(1), closed(2)), Bar(NEG_INF, closed(0))]
    assert functorial_barcode(barcode_module(bars)) == sorted(bars, key=Bar.key)
    zero = RModule1D([0], [0, 0, 0], [RatMatrix(0, 0)] * 2)
    assert functorial_barcode(zero) == []
    assert functorial_barcode(catalog.two_bar_module()) == [Bar(closed(0), opened(2)), Bar(closed(1), opened(2))]


def _random_bar(rng, crit):
    while True:
        ends = sorted(rng.sample(crit, 2)) if rng.random() < 0.8 else [rng.choice(crit)] * 2
        birth = NEG_INF if rng.random() < 0.15 else Endpoint(ends[0], rng.choice(["closed", "open"]))
        death = POS_INF if rng.random() < 0.15 else Endpoint(ends[1], rng.choice(["closed", "open"]))
        try:
            return Bar(birth, death)
        except EmptyInterval:
            continue


def test_endpoint_bases_on_direct_sums():
    rng = random.Random(61)
    crit = [0, 1, 2, 3]
    for _ in range(60):
        bars = [_random_bar(rng, crit) for _ in range(rng.randint(1, 4))]
        m = barcode_module(bars, crit)
        tops = Counter(b.birth for b in bars)
        assert top_spaces(m) == dict(tops)
        assert gr_soc_spaces(m) == dict(Counter((b.death, b.birth) for b in bars))
        merged = Counter()
        for b in bars:
            merged[(b.birth, b.death)] += 1
        assert {(b.birth, b.death): b.mult for b in functorial_barcode(m)} == dict(merged)


def test_oracles_agree_with_each_other_and_the_library():
    rng = random.Random(62)
    for _ in range(100):
        m = random_rmodule(rng, 4, 3)
        bars = functorial_barcode(m)
        assert bars == sweep_barcode(m)
        cells = {(m.cell_of_birth(b.birth), m.cell_of_death(b.death)): b.mult for b in bars}
        assert cells == rank_invariant_barcode(m)


def test_barcode_map_is_injective_per_birth():
    rng = random.Random(63)
    for _ in range(60):
        m = random_rmodule(rng, 4, 3)
        blocks, bars = barcode_with_map(m)
        assert set(blocks) == {(b.birth, b.death) for b in bars}
        tops = top_spaces(m)
        for birth, dim in tops.items():
            rows = [blocks[key] for key in sorted(blocks, key=lambda k: k[1].death_key()) if key[0] == birth]
            assert rank(vstack(rows, cols=dim)) == dim
        for (birth, death), block in blocks.items():
            mult = next(b.mult for b in bars if (b.birth, b.death) == (birth, death))
            assert block.shape == (mult, tops[birth])


def test_refine_preserves_the_barcode():
    rng = random.Random(64)
    for _ in range(30):
        m = random_rmodule(rng, 3, 2)
        assert functorial_barcode(m.refine([rng.randint(-12, 12) for _ in range(2)])) == functorial_barcode(m)


def test_ascii_rendering():
    assert Bar(NEG_INF, closed(0)).ascii() == "(-inf, 0]"
    assert Bar(opened("1/2"), POS_INF).ascii() == "(1/2, inf)"
