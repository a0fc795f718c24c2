"""JSON encoding of every data type, with schemas checked by jsonschema.

Rationals are written as strings: "3", "-1/2".  Integers are accepted on
input; floats are not.  Faces are lists of 1-based axis numbers.  Points
used as object keys are comma separated integers, e.g. "-1,0".
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import jsonschema

from .barcode import Bar, Endpoint, RModule1D
from .fringe import MonomialMatrix, PosetMonomialMatrix
from .lattice import DownsetZn, LatticeBox, UpsetZn, add_unit
from .linalg import RatMatrix, to_fraction
from .posets import FinitePoset, PosetModule, PosetMorphism
from .qr import BirthDegree, DeathDegree, QRCode
from .znmodule import FdModule, ModuleHom


class SchemaError(ValueError):
    """Input JSON that does not have the expected shape."""


# schemas

_RATIONAL = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}]}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _RATIONAL}}
_INTS = {"type": "array", "items": {"type": "integer"}}
_FACE = {"type": "array", "items": {"type": "integer", "minimum": 1}, "uniqueItems": True}
_BOX = {
    "type": "object",
    "required": ["lo", "hi"],
    "properties": {"lo": _INTS, "hi": _INTS},
    "additionalProperties": False,
}
_PIECES = {
    "type": "object",
    "required": ["n", "pieces"],
    "properties": {
        "kind": {"enum": ["upset", "downset"]},
        "n": {"type": "integer", "minimum": 1},
        "pieces": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["corner", "face"],
                "properties": {"corner": _INTS, "face": _FACE},
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}
_POSET = {
    "type": "object",
    "required": ["size", "leq"],
    "properties": {
        "size": {"type": "integer", "minimum": 0},
        "leq": {"type": "array", "items": {"type": "array", "items": {"type": ["boolean", "integer"]}}},
    },
    "additionalProperties": False,
}
_MODULE = {
    "type": "object",
    "required": ["n", "box", "dims"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "box": _BOX,
        "dims": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}},
        "steps": {"type": "object", "additionalProperties": {"type": "object", "additionalProperties": _MATRIX}},
    },
    "additionalProperties": False,
}
_DEGREE = {
    "type": "object",
    "required": ["face", "coset"],
    "properties": {"face": _FACE, "coset": _INTS, "dim": {"type": "integer"}},
    "additionalProperties": False,
}
_ENDPOINT = {
    "type": "object",
    "required": ["k"],
    "properties": {"v": _RATIONAL, "k": {"enum": ["closed", "open", "inf"]}},
    "additionalProperties": False,
}

SCHEMAS: dict[str, dict] = {
    "rational": _RATIONAL,
    "matrix": _MATRIX,
    "box": _BOX,
    "upset": _PIECES,
    "downset": _PIECES,
    "poset": _POSET,
    "module": _MODULE,
    "fringe": {
        "type": "object",
        "required": ["rows", "cols", "phi"],
        "properties": {"rows": {"type": "array", "items": _PIECES}, "cols": {"type": "array", "items": _PIECES}, "phi": _MATRIX},
        "additionalProperties": False,
    },
    "morphism": {
        "type": "object",
        "required": ["source", "target", "mapping"],
        "properties": {"source": {"oneOf": [_POSET, {"type": "object", "required": ["box"], "properties": {"box": _BOX}, "additionalProperties": False}]}, "target": _POSET, "mapping": _INTS},
        "additionalProperties": False,
    },
    "poset_module": {
        "type": "object",
        "required": ["poset", "dims", "maps"],
        "properties": {
            "poset": _POSET,
            "dims": _INTS,
            "maps": {"type": "object", "additionalProperties": _MATRIX},
        },
        "additionalProperties": False,
    },
    "poset_fringe": {
        "type": "object",
        "required": ["poset", "rows", "cols", "phi"],
        "properties": {
            "poset": _POSET,
            "rows": {"type": "array", "items": _INTS},
            "cols": {"type": "array", "items": _INTS},
            "phi": _MATRIX,
        },
        "additionalProperties": False,
    },
    "homomorphism": {
        "type": "object",
        "required": ["source", "target", "maps"],
        "properties": {"source": _MODULE, "target": _MODULE, "maps": {"type": "object", "additionalProperties": _MATRIX}},
        "additionalProperties": False,
    },
    "hom_pair": {
        "type": "object",
        "required": ["upset", "downset"],
        "properties": {"upset": _PIECES, "downset": _PIECES, "box": _BOX},
        "additionalProperties": False,
    },
    "rmodule": {
        "type": "object",
        "required": ["crit", "dims", "maps"],
        "properties": {"crit": {"type": "array", "items": _RATIONAL}, "dims": _INTS, "maps": {"type": "array", "items": _MATRIX}},
        "additionalProperties": False,
    },
    "bars": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["birth", "death", "mult"],
            "properties": {"birth": _ENDPOINT, "death": _ENDPOINT, "mult": {"type": "integer", "minimum": 1}},
            "additionalProperties": False,
        },
    },
    "qr": {
        "type": "object",
        "required": ["n", "births", "deaths", "blocks"],
        "properties": {
            "n": {"type": "integer", "minimum": 1},
            "box": _BOX,
            "births": {"type": "array", "items": _DEGREE},
            "deaths": {"type": "array", "items": _DEGREE},
            "blocks": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["birth", "death", "matrix"],
                    "properties": {"birth": {"type": "integer"}, "death": {"type": "integer"}, "matrix": _MATRIX},
                    "additionalProperties": False,
                },
            },
            "literal": {"type": "array"},
        },
        "additionalProperties": False,
    },
    "pullback": {
        "type": "object",
        "required": ["morphism"],
        "properties": {"morphism": {"type": "object"}, "module": {"type": "object"}, "fringe": {"type": "object"}},
        "additionalProperties": False,
    },
}


def validate_schema(data: Any, kind: str) -> None:
    try:
        jsonschema.validate(data, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "top level"
        raise SchemaError(f"{kind} input invalid at {where}: {exc.message}") from None


def detect_kind(data: Any) -> str:
    """Guess the type of a parsed JSON document from its keys."""
    if isinstance(data, list):
        return "bars"
    if not isinstance(data, dict):
        raise SchemaError("expected a JSON object")
    keys = set(data)
    if "crit" in keys:
        return "rmodule"
    if "births" in keys:
        return "qr"
    if "morphism" in keys:
        return "pullback"
    if {"upset", "downset"} <= keys:
        return "hom_pair"
    if {"source", "target", "maps"} <= keys:
        return "homomorphism"
    if {"source", "target", "mapping"} <= keys:
        return "morphism"
    if {"rows", "cols", "phi"} <= keys:
        return "poset_fringe" if "poset" in keys else "fringe"
    if "pieces" in keys:
        return data.get("kind", "downset")
    if {"poset", "dims", "maps"} <= keys:
        return "poset_module"
    if {"size", "leq"} <= keys:
        return "poset"
    if "dims" in keys and "box" in keys:
        return "module"
    raise SchemaError("cannot tell what kind of object this JSON describes")


# scalars, points, faces

def rat_to_json(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def matrix_to_json(m: RatMatrix) -> list:
    return [[rat_to_json(x) for x in row] for row in m.to_lists()]


def matrix_from_json(rows: list, shape: tuple[int, int] | None = None) -> RatMatrix:
    data = [[to_fraction(x) for x in r] for r in rows]
    if shape is None:
        return RatMatrix.from_rows(data)
    r, c = shape
    if r and len(data) != r or any(len(row) != c for row in data):
        raise SchemaError(f"matrix should have shape {r}x{c}")
    return RatMatrix(r, c, data) if r and c else RatMatrix(r, c)


def point_key(p) -> str:
    return ",".join(str(int(x)) for x in p)


def parse_point(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise SchemaError(f"bad point {text!r}") from None


def face_to_json(f) -> list:
    return sorted(i + 1 for i in f)


def face_from_json(axes, n: int) -> frozenset:
    f = frozenset(int(a) - 1 for a in axes)
    if any(not 0 <= i < n for i in f):
        raise SchemaError(f"face {sorted(axes)} has axes outside 1..{n}")
    return f


# boxes, upsets, downsets

def box_to_json(box: LatticeBox) -> dict:
    return {"lo": list(box.lo), "hi": list(box.hi)}


def box_from_json(d: dict) -> LatticeBox:
    return LatticeBox(tuple(d["lo"]), tuple(d["hi"]))


def pieces_to_json(s) -> dict:
    kind = "upset" if isinstance(s, UpsetZn) else "downset"
    return {"kind": kind, "n": s.n, "pieces": [{"corner": list(c), "face": face_to_json(f)} for c, f in s.pieces]}


def pieces_from_json(d: dict, kind: str | None = None):
    kind = kind or d.get("kind", "downset")
    cls = UpsetZn if kind == "upset" else DownsetZn
    n = d["n"]
    for p in d["pieces"]:
        if len(p["corner"]) != n:
            raise SchemaError(f"corner {p['corner']} does not have {n} coordinates")
    return cls(n, [(tuple(p["corner"]), face_from_json(p["face"], n)) for p in d["pieces"]])


# modules over Z^n

def module_to_json(m: FdModule) -> dict:
    dims = {point_key(p): d for p, d in sorted(m.dims.items()) if d}
    steps: dict = {}
    for (p, i), mat in sorted(m.steps.items()):
        if mat.rows and mat.cols and not mat.is_zero():
            steps.setdefault(point_key(p), {})[str(i + 1)] = matrix_to_json(mat)
    return {"n": m.n, "box": box_to_json(m.box), "dims": dims, "steps": steps}


def module_from_json(d: dict, check: bool = True) -> FdModule:
    n = d["n"]
    box = box_from_json(d["box"])
    if box.n != n:
        raise SchemaError("box does not live in the stated dimension")
    dims = {p: 0 for p in box.points()}
    for key, v in d["dims"].items():
        p = parse_point(key)
        if p not in box:
            raise SchemaError(f"dimension given at {key}, outside the box")
        dims[p] = v
    steps = {}
    for key, per_axis in d.get("steps", {}).items():
        p = parse_point(key)
        if p not in box:
            raise SchemaError(f"step given at {key}, outside the box")
        for axis_text, rows in per_axis.items():
            axis = int(axis_text) - 1
            if not 0 <= axis < n:
                raise SchemaError(f"step axis {axis_text} outside 1..{n}")
            q = add_unit(p, axis)
            if q not in box:
                raise SchemaError(f"step from {key} along axis {axis_text} leaves the box")
            steps[(p, axis)] = matrix_from_json(rows, (dims[q], dims[p]))
    return FdModule(box, dims, steps, check=check)


def hom_to_json(h: ModuleHom) -> dict:
    maps = {point_key(p): matrix_to_json(mat) for p, mat in sorted(h.mats.items()) if mat.rows and mat.cols}
    return {"maps": maps, "source": module_to_json(h.source), "target": module_to_json(h.target)}


def hom_from_json(d: dict) -> ModuleHom:
    src, tgt = module_from_json(d["source"]), module_from_json(d["target"])
    mats = {p: RatMatrix(tgt.dims[p], src.dims[p]) for p in src.box.points()}
    for key, rows in d["maps"].items():
        p = parse_point(key)
        if p not in src.box:
            raise SchemaError(f"map given at {key}, outside the box")
        mats[p] = matrix_from_json(rows, (tgt.dims[p], src.dims[p]))
    return ModuleHom(src, tgt, mats)


# fringe presentations

def fringe_to_json(mm: MonomialMatrix) -> dict:
    return {
        "rows": [pieces_to_json(u) for u in mm.rows],
        "cols": [pieces_to_json(d) for d in mm.cols],
        "phi": matrix_to_json(mm.phi),
    }


def fringe_from_json(d: dict) -> MonomialMatrix:
    rows = [pieces_from_json(u, "upset") for u in d["rows"]]
    cols = [pieces_from_json(c, "downset") for c in d["cols"]]
    phi = matrix_from_json(d["phi"], (len(rows), len(cols)))
    return MonomialMatrix(rows, cols, phi)


# finite posets

def poset_to_json(p: FinitePoset) -> dict:
    return {"size": p.size, "leq": [[int(x) for x in row] for row in p.leq]}


def poset_from_json(d: dict) -> FinitePoset:
    return FinitePoset(d["size"], d["leq"])


def poset_module_to_json(h: PosetModule) -> dict:
    return {
        "poset": poset_to_json(h.poset),
        "dims": list(h.dims),
        "maps": {f"{i},{j}": matrix_to_json(mat) for (i, j), mat in sorted(h.maps.items())},
    }


def poset_module_from_json(d: dict) -> PosetModule:
    poset = poset_from_json(d["poset"])
    dims = d["dims"]
    maps = {}
    for key, rows in d["maps"].items():
        i, j = parse_point(key)
        maps[(i, j)] = matrix_from_json(rows, (dims[j], dims[i]))
    return PosetModule(poset, dims, maps)


def morphism_to_json(pi: PosetMorphism) -> dict:
    src = {"box": box_to_json(pi.source)} if isinstance(pi.source, LatticeBox) else poset_to_json(pi.source)
    return {"source": src, "target": poset_to_json(pi.target), "mapping": list(pi.mapping)}


def morphism_from_json(d: dict) -> PosetMorphism:
    src = box_from_json(d["source"]["box"]) if "box" in d["source"] else poset_from_json(d["source"])
    return PosetMorphism(src, poset_from_json(d["target"]), d["mapping"])


def poset_fringe_to_json(pmm: PosetMonomialMatrix) -> dict:
    if isinstance(pmm.domain, LatticeBox):
        return {
            "box": box_to_json(pmm.domain),
            "rows": [sorted(point_key(p) for p in u) for u in pmm.rows],
            "cols": [sorted(point_key(p) for p in c) for c in pmm.cols],
            "phi": matrix_to_json(pmm.phi),
        }
    return {
        "poset": poset_to_json(pmm.domain),
        "rows": [sorted(u) for u in pmm.rows],
        "cols": [sorted(c) for c in pmm.cols],
        "phi": matrix_to_json(pmm.phi),
    }


def poset_fringe_from_json(d: dict) -> PosetMonomialMatrix:
    poset = poset_from_json(d["poset"])
    phi = matrix_from_json(d["phi"], (len(d["rows"]), len(d["cols"])))
    return PosetMonomialMatrix(poset, d["rows"], d["cols"], phi)


# one-parameter modules and bars

def rmodule_to_json(m: RModule1D) -> dict:
    return {"crit": [rat_to_json(c) for c in m.crit], "dims": list(m.dims), "maps": [matrix_to_json(x) for x in m.maps]}


def rmodule_from_json(d: dict) -> RModule1D:
    dims = d["dims"]
    if len(dims) != 2 * len(d["crit"]) + 1 or len(d["maps"]) != len(dims) - 1:
        raise SchemaError("need 2m+1 dims and 2m maps for m critical values")
    maps = [matrix_from_json(rows, (dims[k + 1], dims[k])) for k, rows in enumerate(d["maps"])]
    return RModule1D([to_fraction(c) for c in d["crit"]], dims, maps)


def endpoint_to_json(e: Endpoint) -> dict:
    return {"k": "inf"} if e.kind == "inf" else {"v": rat_to_json(e.value), "k": e.kind}


def endpoint_from_json(d: dict) -> Endpoint:
    return Endpoint(None if d["k"] == "inf" else to_fraction(d["v"]), d["k"])


def bars_to_json(bars) -> list:
    return [{"birth": endpoint_to_json(b.birth), "death": endpoint_to_json(b.death), "mult": b.mult} for b in bars]


def bars_from_json(items) -> list[Bar]:
    return [Bar(endpoint_from_json(b["birth"]), endpoint_from_json(b["death"]), b["mult"]) for b in items]


# QR codes

def qr_to_json(qr: QRCode, box: LatticeBox | None = None) -> dict:
    births = [{"face": face_to_json(b.face), "coset": list(b.coset), "dim": qr.gen_dims[b]} for b in qr.births]
    deaths = [{"face": face_to_json(a.face), "coset": list(a.coset), "dim": qr.soc_dims[a]} for a in qr.deaths]
    blocks = []
    for i, b in enumerate(qr.births):
        for j, a in enumerate(qr.deaths):
            if (b, a) in qr.blocks:
                blocks.append({"birth": i, "death": j, "matrix": matrix_to_json(qr.blocks[(b, a)])})
    out = {"n": qr.n, "births": births, "deaths": deaths, "blocks": blocks}
    if box is not None:
        out["box"] = box_to_json(box)
    return out


def qr_from_json(d: dict) -> QRCode:
    n = d["n"]
    births = [BirthDegree(face_from_json(b["face"], n), tuple(b["coset"])) for b in d["births"]]
    deaths = [DeathDegree(face_from_json(a["face"], n), tuple(a["coset"])) for a in d["deaths"]]
    gen_dims = {b: raw.get("dim", 0) for b, raw in zip(births, d["births"])}
    soc_dims = {a: raw.get("dim", 0) for a, raw in zip(deaths, d["deaths"])}
    blocks = {}
    for blk in d["blocks"]:
        try:
            b, a = births[blk["birth"]], deaths[blk["death"]]
        except IndexError:
            raise SchemaError("block refers to a missing birth or death") from None
        blocks[(b, a)] = matrix_from_json(blk["matrix"], (soc_dims[a], gen_dims[b]))
    return QRCode(n, births, deaths, gen_dims, soc_dims, blocks)


# generic entry points

_READERS = {
    "module": module_from_json,
    "upset": lambda d: pieces_from_json(d, "upset"),
    "downset": lambda d: pieces_from_json(d, "downset"),
    "fringe": fringe_from_json,
    "poset": poset_from_json,
    "poset_module": poset_module_from_json,
    "poset_fringe": poset_fringe_from_json,
    "morphism": morphism_from_json,
    "homomorphism": hom_from_json,
    "rmodule": rmodule_from_json,
    "bars": bars_from_json,
    "qr": qr_from_json,
}


def load(data: Any, kind: str | None = None):
    """Validate and decode a parsed JSON document; returns (kind, object)."""
    kind = kind or detect_kind(data)
    validate_schema(data, kind)
    if kind not in _READERS:
        return kind, data
    try:
        return kind, _READERS[kind](data)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{kind} input malformed: {exc}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
