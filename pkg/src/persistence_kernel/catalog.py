"""Small named modules used by tests, demos and the CLI fixtures."""

from __future__ import annotations

from .barcode import RModule1D
from .lattice import DownsetZn, LatticeBox, UpsetZn
from .linalg import RatMatrix
from .posets import FinitePoset
from .znmodule import FdModule, direct_sum


def elder_module(box: LatticeBox | None = None) -> FdModule:
    """Generators e_x, e_y, e_xy in degrees (1,0), (0,1), (1,1).

    Relations xy·e_x = x·e_xy and xy·e_y = y·e_xy, so pushing e_xy up along
    x lands on the image of e_x and along y on the image of e_y.
    """
    box = box or LatticeBox((-1, -1), (3, 3))
    return FdModule.from_presentation(
        box,
        [(1, 0), (0, 1), (1, 1)],
        [((2, 1), [1, 0, -1]), ((1, 2), [0, 1, -1])],
    )


def skyscraper(point, box: LatticeBox | None = None) -> FdModule:
    point = tuple(point)
    box = box or LatticeBox(tuple(x - 1 for x in point), tuple(x + 1 for x in point))
    return FdModule.indicator([point], box)


def positive_orthant(box: LatticeBox | None = None) -> FdModule:
    """k[N^2] on a box around the origin."""
    box = box or LatticeBox((-1, -1), (2, 2))
    return FdModule.from_upset(UpsetZn(2, [((0, 0), [])]), box)


def two_component_downset() -> DownsetZn:
    """A closed corner at (1,1) together with the horizontal strip below height -1."""
    return DownsetZn(2, [((1, 1), []), ((0, -1), [0])])


def staircase_downset() -> DownsetZn:
    """The corner at (1,0) together with the vertical strip left of x = 0."""
    return DownsetZn(2, [((1, 0), []), ((0, 0), [1])])


def three_corner_downset() -> DownsetZn:
    return DownsetZn(2, [((0, 2), []), ((1, 1), []), ((2, 0), [])])


def cross_module(box: LatticeBox | None = None) -> FdModule:
    """Indicator of the two coordinate rays of N^2, the support of k[x,y]/<xy>."""
    box = box or LatticeBox((-1, -1), (2, 2))
    pts = [p for p in box.points() if min(p) == 0]
    return FdModule.indicator(pts, box)


def isotypic_fixture(box: LatticeBox | None = None) -> FdModule:
    """Skyscraper at the origin plus the constant module on the whole box."""
    box = box or LatticeBox((-2, -2), (2, 2))
    return direct_sum(FdModule.indicator([(0, 0)], box), FdModule.from_upset(UpsetZn(2, [((0, 0), [0, 1])]), box))


def disconnected_hom_pair() -> tuple[UpsetZn, DownsetZn]:
    """The maximal ideal of k[x,y] as an upset and k[x,y]/m^2 as a downset.

    Their intersection is the two isolated points (1,0) and (0,1).
    """
    upset = UpsetZn(2, [((1, 0), []), ((0, 1), [])])
    downset = DownsetZn(2, [((1, 0), []), ((0, 1), [])])
    return upset, downset


def two_bar_module() -> RModule1D:
    """The bars [0,2) and [1,2), written in a basis that mixes them at 1."""
    return RModule1D(
        [0, 1, 2],
        [0, 1, 1, 2, 2, 0, 0],
        [
            RatMatrix(1, 0),
            RatMatrix(1, 1, [[1]]),
            RatMatrix(2, 1, [[1], [1]]),
            RatMatrix(2, 2, [[1, 1], [0, 1]]),
            RatMatrix(0, 2),
            RatMatrix(0, 0),
        ],
    )


def chain_poset(length: int) -> FinitePoset:
    return FinitePoset(length, [[i <= j for j in range(length)] for i in range(length)])
