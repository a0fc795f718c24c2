import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from helpers import same_hilbert_and_ranks
from persistence_kernel import catalog
from persistence_kernel.barcode import functorial_barcode
from persistence_kernel.errors import NonCommuting
from persistence_kernel.fringe import module_to_fringe
from persistence_kernel.generators import random_module, random_rmodule
from persistence_kernel.lattice import face
from persistence_kernel.linalg import RatMatrix
from persistence_kernel.qr import qr_code
from persistence_kernel.serialization import (
    SchemaError,
    bars_to_json,
    detect_kind,
    dumps,
    face_from_json,
    face_to_json,
    fringe_to_json,
    load,
    matrix_from_json,
    matrix_to_json,
    module_to_json,
    pieces_to_json,
    poset_to_json,
    qr_to_json,
    rmodule_to_json,
)


def through_text(data):
    return load(json.loads(dumps(data)))


def test_rationals_and_matrices():
    m = RatMatrix(2, 2, [[Fraction(1, 3), -2], [0, Fraction(-7, 2)]])
    assert matrix_to_json(m) == [["1/3", "-2"], ["0", "-7/2"]]
    assert matrix_from_json(matrix_to_json(m)) == m
    assert matrix_from_json([], (0, 3)).shape == (0, 3)


def test_faces_are_one_based_in_json():
    assert face_to_json(face(0, 2)) == [1, 3]
    assert face_from_json([1, 3], 3) == face(0, 2)
    with pytest.raises(SchemaError):
        face_from_json([4], 3)


def test_module_round_trip():
    rng = random.Random(81)
    for _ in range(30):
        m = random_module(rng, rng.choice([1, 2, 3]), rng.choice([2, 3]), 2)
        kind, back = through_text(module_to_json(m))
        assert kind == "module"
        assert back.box == m.box and back.dims == m.dims and back.steps == m.steps


def test_other_round_trips():
    d = catalog.two_component_downset()
    assert through_text(pieces_to_json(d)) == ("downset", d)
    upset, _ = catalog.disconnected_hom_pair()
    assert through_text(pieces_to_json(upset)) == ("upset", upset)

    elder = catalog.elder_module()
    mm = module_to_fringe(elder)
    kind, back = through_text(fringe_to_json(mm))
    assert kind == "fringe" and back.rows == mm.rows and back.cols == mm.cols and back.phi == mm.phi

    qr = qr_code(elder)
    kind, back = through_text(qr_to_json(qr, elder.box))
    assert kind == "qr" and back.births == qr.births and back.deaths == qr.deaths
    assert all(back.block(b, a) == qr.block(b, a) for b in qr.births for a in qr.deaths)

    chain = catalog.chain_poset(3)
    kind, back = through_text(poset_to_json(chain))
    assert kind == "poset" and back == chain

    rng = random.Random(82)
    for _ in range(20):
        r = random_rmodule(rng)
        kind, back = through_text(rmodule_to_json(r))
        assert kind == "rmodule" and back.crit == r.crit and back.dims == r.dims and back.maps == r.maps
        bars = functorial_barcode(r)
        assert through_text(bars_to_json(bars)) == ("bars", bars)


def test_fixture_files_load():
    for path in sorted((Path(__file__).parent / "fixtures").glob("*.json")):
        if path.name in ("not_json.json", "noncommuting.json"):
            continue
        kind, obj = load(json.loads(path.read_text()))
        assert kind == detect_kind(json.loads(path.read_text()))
    elder = json.loads((Path(__file__).parent / "fixtures" / "elder.json").read_text())
    assert same_hilbert_and_ranks(load(elder)[1], catalog.elder_module())


def test_schema_errors():
    good = module_to_json(catalog.skyscraper((0, 0)))
    bad_dim = json.loads(json.dumps(good))
    bad_dim["dims"]["0,0"] = 1.5
    bad_rational = json.loads(json.dumps(good))
    bad_rational["steps"] = {"0,0": {"1": [["one"]]}}
    for broken in (bad_dim, bad_rational, {"what": 1}, 7):
        with pytest.raises(SchemaError):
            load(broken)
    with pytest.raises(SchemaError):
        load(good, kind="fringe")
    with pytest.raises(SchemaError):
        load({"n": 2, "pieces": [{"corner": [0, 0], "face": [0]}]})


def test_semantic_errors_are_not_schema_errors():
    noncommuting = {
        "n": 2,
        "box": {"lo": [0, 0], "hi": [1, 1]},
        "dims": {"0,0": 1, "0,1": 1, "1,0": 1, "1,1": 1},
        "steps": {"0,0": {"1": [["1"]], "2": [["1"]]}, "0,1": {"1": [["1"]]}, "1,0": {"2": [["2"]]}},
    }
    with pytest.raises(NonCommuting):
        load(noncommuting)


def test_dumps_is_canonical():
    data = module_to_json(catalog.elder_module())
    shuffled = dict(reversed(list(data.items())))
    assert dumps(data) == dumps(shuffled)
