import itertools
import random

import pytest

from persistence_kernel.errors import BoxNotDetermining, DimensionMismatch
from persistence_kernel.generators import random_downset, random_upset
from persistence_kernel.lattice import (
    DownsetZn,
    LatticeBox,
    UpsetZn,
    all_faces,
    box_determines,
    determining_box,
    downset_contains,
    embed,
    project,
    require_determining,
    upset_contains,
)


def test_upset_membership_examples():
    orthant = UpsetZn(2, [((0, 0), [])])
    assert upset_contains(orthant, (1, 1))
    assert not upset_contains(orthant, (-1, 0))
    strip = UpsetZn(2, [((0, 0), [0])])
    box = LatticeBox((-6, -6), (2, 2))
    assert upset_contains(strip, (-5, 0))
    assert strip.points_in(box) == {p for p in box.points() if p[1] >= 0}


def test_downset_membership_examples():
    corner = DownsetZn(2, [((0, 0), [])])
    assert downset_contains(corner, (-3, -3))
    assert not downset_contains(corner, (1, 0))
    assert downset_contains(DownsetZn(2, [((0, 0), [1])]), (0, 7))


def test_membership_dimension_checked():
    with pytest.raises(DimensionMismatch):
        (1, 2, 3) in UpsetZn(2, [((0, 0), [])])
    with pytest.raises(DimensionMismatch):
        UpsetZn(2, [((0, 0, 0), [])])
    with pytest.raises(DimensionMismatch):
        DownsetZn(2, [((0, 0), [4])])


def test_canonical_form_drops_contained_pieces_and_normalizes():
    u = UpsetZn(2, [((0, 0), []), ((1, 1), []), ((5, 0), [0])])
    assert u.pieces == (((0, 0), frozenset({0})),)
    d = DownsetZn(2, [((3, 4), [1]), ((3, 9), [1])])
    assert d.pieces == (((3, 0), frozenset({1})),)


def test_piece_containment_matches_brute_force():
    rng = random.Random(3)
    box = LatticeBox((-6, -6), (6, 6))
    for _ in range(200):
        cls = rng.choice([UpsetZn, DownsetZn])
        make = random_upset if cls is UpsetZn else random_downset
        s = make(rng, 2)
        raw = [(tuple(rng.randint(-3, 3) for _ in range(2)), f) for _, f in s.pieces]
        built = cls(2, raw)
        for p in box.points():
            assert (p in built) == any(p in cls(2, [r]) for r in raw)


def test_negation_swaps_upsets_and_downsets():
    rng = random.Random(5)
    box = LatticeBox((-5, -5), (5, 5))
    for _ in range(50):
        u = random_upset(rng, 2)
        d = u.negate()
        assert all((p in u) == (tuple(-x for x in p) in d) for p in box.points())
        assert d.negate() == u


def test_determining_box():
    d = DownsetZn(2, [((1, 1), []), ((0, -1), [0])])
    box = determining_box(2, d)
    assert box == LatticeBox((0, -2), (2, 2))
    assert box_determines(box, [d])
    with pytest.raises(BoxNotDetermining):
        require_determining(LatticeBox((0, 0), (1, 1)), [d])


def test_faces_and_projection():
    assert len(all_faces(3)) == 8
    for f in all_faces(3):
        p = (4, 5, 6)
        assert embed(project(p, f), f, 3, p) == p


def test_box_basics():
    box = LatticeBox((-1, 0), (1, 2))
    assert len(box) == 9 == len(box.points())
    assert box.clamp((5, -5)) == (1, 0)
    assert box.negate() == LatticeBox((-1, -2), (1, 0))
    assert list(itertools.islice(box, 2)) == [(-1, 0), (-1, 1)]
    with pytest.raises(DimensionMismatch):
        LatticeBox((1,), (0,))
