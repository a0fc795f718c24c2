"""persistence-kernel: JSON in, JSON out.

Exit status is 0 on success, 2 when the input cannot be parsed or does not
match its schema, and 1 when the input parses but a mathematical check
fails (the message names the failing invariant).

Values starting with a minus sign must be attached with "=", for example
``--at=-1,0`` or ``--box=-1,-1:2,2``.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import metadata

from . import __version__
from .barcode import barcode_with_map, functorial_barcode
from .decomposition import (
    canonical_decomposition,
    global_support_downset,
    irreducible_decomposition,
    localize_downset,
    minimal_decomposition,
    primary_component,
    primary_decomposition_module,
    socle_degrees,
)
from .encoding import encode
from .errors import KernelError
from .fringe import (
    fringe_to_module,
    hom_dim,
    meets,
    module_to_fringe,
    poset_fringe_to_module,
    pullback_fringe,
    validate_fringe,
)
from .lattice import LatticeBox, all_faces, determining_box, embed
from .linalg import RatMatrix
from .posets import isotypic_regions, pullback_module
from .qr import BirthDegree, death_functor, elder_morphism, elder_quotient, elder_spaces, qr_code, recover
from .serialization import (
    SCHEMAS,
    SchemaError,
    bars_to_json,
    box_from_json,
    box_to_json,
    dumps,
    endpoint_to_json,
    face_from_json,
    face_to_json,
    fringe_to_json,
    load,
    matrix_to_json,
    module_to_json,
    parse_point,
    pieces_from_json,
    pieces_to_json,
    point_key,
    poset_fringe_to_json,
    poset_module_to_json,
    poset_to_json,
    qr_to_json,
)
from .znmodule import (
    FdModule,
    associated_faces,
    global_support,
    injective_by_socles,
    localize,
    matlis_dual,
    quotient_restriction,
    socle_spaces,
    surjective_by_tops,
    top_generators,
)


class UsageError(SchemaError):
    """A command got an input or flag it cannot use."""


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return __version__


# flag parsing

def _parse_box(text: str | None) -> LatticeBox | None:
    if text is None:
        return None
    try:
        lo, hi = text.split(":")
        return LatticeBox(parse_point(lo), parse_point(hi))
    except (ValueError, KernelError) as exc:
        raise UsageError(f"bad --box {text!r}: expected l1,l2:h1,h2 ({exc})") from None


def _parse_face(text: str | None, n: int) -> frozenset | None:
    if text is None:
        return None
    try:
        axes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad --face {text!r}: expected 1-based axes such as 1,3") from None
    return face_from_json(axes, n)


def _require(value, flag: str):
    if value is None:
        raise UsageError(f"this command needs {flag}")
    return value


def _read(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from None


def _expect(kind: str, allowed: tuple, command: str) -> None:
    if kind not in allowed:
        raise UsageError(f"{command} takes {' or '.join(allowed)} input, got {kind}")


def _module_for(obj: FdModule, box: LatticeBox | None) -> FdModule:
    return obj.rebox(box) if box is not None else obj


# commands

def cmd_validate(kind, obj, args):
    if kind == "fringe":
        validate_fringe(obj)
    return {"kind": kind, "ok": True}


def cmd_encode(kind, obj, args):
    _expect(kind, ("module",), "encode")
    m = _module_for(obj, args.box)
    enc = encode(m)
    return {
        "elements": enc.poset.size,
        "mapping": {point_key(p): t for p, t in zip(m.box.points(), enc.morphism.mapping)},
        "module": poset_module_to_json(enc.module),
        "poset": poset_to_json(enc.poset),
        "refined": enc.refined,
        "regions": sorted(sorted(point_key(p) for p in r) for r in isotypic_regions(m)),
    }


def cmd_hilbert(kind, obj, args):
    _expect(kind, ("module",), "hilbert")
    if args.at is not None:
        return {"at": list(args.at), "dim": obj.dim(args.at)}
    box = args.box or obj.box
    return {"box": box_to_json(box), "dims": {point_key(p): obj.dim(p) for p in box.points() if obj.dim(p)}}


def cmd_rank(kind, obj, args):
    _expect(kind, ("module",), "rank")
    a, b = _require(args.from_, "--from"), _require(args.to, "--to")
    return {"from": list(a), "rank": obj.rank_function(a, b), "to": list(b)}


def cmd_dual(kind, obj, args):
    _expect(kind, ("module",), "dual")
    return module_to_json(matlis_dual(_module_for(obj, args.box)))


def cmd_localize(kind, obj, args):
    _expect(kind, ("module", "downset"), "localize")
    face = _require(_parse_face(args.face, obj.n), "--face")
    if kind == "downset":
        return pieces_to_json(localize_downset(obj, face))
    m = _module_for(obj, args.box)
    return module_to_json(quotient_restriction(m, face) if args.quotient else localize(m, face))


def _degree_list(entries):
    return [{"degree": list(q), "dim": d, "point": list(p)} for q, (p, d) in sorted(entries.items())]


def _per_face(n, face, compute):
    faces = [face] if face is not None else all_faces(n)
    out = []
    for f in faces:
        degs = compute(f)
        if degs or face is not None:
            out.append({"face": face_to_json(f), "degrees": degs})
    return out


def cmd_socle(kind, obj, args):
    _expect(kind, ("module", "downset"), "socle")
    face = _parse_face(args.face, obj.n)
    if kind == "downset":
        box = args.box or determining_box(obj.n, obj)

        def compute(f):
            return [
                {"degree": list(q), "dim": 1, "point": list(embed(q, f, obj.n, box.hi))}
                for q in socle_degrees(obj, f, box)
            ]

        return {"faces": _per_face(obj.n, face, compute)}
    m = _module_for(obj, args.box)

    def compute(f):
        return _degree_list({q: (p, b.cols) for q, (p, b) in socle_spaces(m, f).items()})

    return {"associated": [face_to_json(f) for f in associated_faces(m)], "faces": _per_face(m.n, face, compute)}


def cmd_top(kind, obj, args):
    _expect(kind, ("module",), "top")
    m = _module_for(obj, args.box)
    face = _parse_face(args.face, m.n)

    def compute(f):
        return _degree_list({q: (p, v.cols) for q, (p, v) in top_generators(m, f).items()})

    return {"faces": _per_face(m.n, face, compute)}


def cmd_hom(kind, obj, args):
    _expect(kind, ("hom_pair", "homomorphism"), "hom")
    if kind == "homomorphism":
        return {
            "injective": obj.is_injective(),
            "injective_by_socles": injective_by_socles(obj),
            "surjective": obj.is_surjective(),
            "surjective_by_tops": surjective_by_tops(obj),
        }
    u, d = pieces_from_json(obj["upset"], "upset"), pieces_from_json(obj["downset"], "downset")
    box = args.box or (box_from_json(obj["box"]) if "box" in obj else None)
    return {"dim": hom_dim(u, d, box), "meets": meets(u, d)}


def cmd_fringe_check(kind, obj, args):
    _expect(kind, ("fringe",), "fringe-check")
    validate_fringe(obj)
    return {"cols": len(obj.cols), "ok": True, "rows": len(obj.rows)}


def cmd_fringe_eval(kind, obj, args):
    _expect(kind, ("fringe",), "fringe-eval")
    return module_to_json(fringe_to_module(obj, args.box))


def cmd_fringe_of(kind, obj, args):
    _expect(kind, ("module",), "fringe-of")
    return fringe_to_json(module_to_fringe(_module_for(obj, args.box)))


def cmd_pullback(kind, obj, args):
    _expect(kind, ("pullback",), "pullback")
    _, pi = load(obj["morphism"], "morphism")
    if "module" in obj:
        _, h = load(obj["module"], "poset_module")
        out = pullback_module(pi, h)
        return module_to_json(out) if isinstance(out, FdModule) else poset_module_to_json(out)
    if "fringe" in obj:
        _, pmm = load(obj["fringe"], "poset_fringe")
        pulled = pullback_fringe(pi, pmm)
        result = poset_fringe_to_module(pulled)
        body = module_to_json(result) if isinstance(result, FdModule) else poset_module_to_json(result)
        return {"fringe": poset_fringe_to_json(pulled), "module": body}
    raise UsageError("pullback input needs a module or a fringe next to the morphism")


def _components_json(comps):
    return [{"face": face_to_json(c.face), "pieces": pieces_to_json(c.downset)["pieces"]} for c in comps]


def cmd_decompose(kind, obj, args):
    _expect(kind, ("downset", "module"), "decompose")
    face = _parse_face(args.face, obj.n)
    if kind == "downset":
        box = args.box or determining_box(obj.n, obj)
        if face is not None:
            comp = primary_component(obj, face, box)
            support = global_support_downset(obj, face, box)
            return {"face": face_to_json(face), "pieces": pieces_to_json(comp)["pieces"], "support": sorted(list(p) for p in support)}
        return {"components": _components_json(canonical_decomposition(obj, box))}
    m = _module_for(obj, args.box)
    if face is not None:
        return {"face": face_to_json(face), "support": module_to_json(global_support(m, face))}
    comps = primary_decomposition_module(m)
    return {"components": [{"face": face_to_json(c.face), "module": module_to_json(c.quotient)} for c in comps]}


def cmd_decompose_min(kind, obj, args):
    _expect(kind, ("downset",), "decompose-min")
    box = args.box or determining_box(obj.n, obj)
    return {"components": _components_json(minimal_decomposition(obj, box))}


def cmd_irreducible(kind, obj, args):
    _expect(kind, ("downset",), "irreducible")
    box = args.box or determining_box(obj.n, obj)
    return {"pieces": [pieces_to_json(p)["pieces"][0] for p in irreducible_decomposition(obj, box)]}


def cmd_qr(kind, obj, args):
    _expect(kind, ("module",), "qr")
    m = _module_for(obj, args.box)
    qr = qr_code(m)
    out = qr_to_json(qr, m.box)
    if args.literal:
        literal = []
        for i, b in enumerate(qr.births):
            for j, a in enumerate(qr.deaths):
                if (b, a) not in qr.blocks:
                    continue
                cols = []
                for k in range(qr.gen_dims[b]):
                    y = RatMatrix.identity(qr.gen_dims[b]).select_columns([k])
                    cols.append(death_functor(m, b, y, a).column(0))
                mat = RatMatrix.from_columns(cols, qr.soc_dims[a])
                literal.append({"birth": i, "death": j, "matrix": matrix_to_json(mat)})
        out["literal"] = literal
    return out


def cmd_recover(kind, obj, args):
    _expect(kind, ("qr",), "recover")
    box = args.box
    if box is None:
        box = args.raw_box
    if box is None:
        raise UsageError("recover needs a box, either in the QR JSON or via --box")
    return module_to_json(recover(obj, box))


def cmd_elder(kind, obj, args):
    _expect(kind, ("module",), "elder")
    m = _module_for(obj, args.box)
    face = _parse_face(args.face, m.n) or frozenset()
    at = _require(args.at, "--at")
    if len(at) != m.n:
        raise UsageError(f"--at needs {m.n} coordinates")
    beta = BirthDegree(face, at)
    em = elder_morphism(m, beta)
    elder = elder_spaces(m, beta, strict=True)
    return {
        "birth": {"coset": list(beta.coset), "face": face_to_json(beta.face)},
        "elder": {point_key(p): s.cols for p, s in sorted(elder.items()) if s.cols},
        "gen_dim": m.dims[beta.point(m.box)],
        "morphism": [
            {"death": {"coset": list(a.coset), "face": face_to_json(a.face)}, "matrix": matrix_to_json(mat)}
            for a, mat in sorted(em.blocks.items(), key=lambda kv: kv[0].sort_key())
        ],
        "quotient": module_to_json(elder_quotient(m, beta)),
        "top_dim": em.top_basis.cols,
    }


def cmd_barcode(kind, obj, args):
    _expect(kind, ("rmodule",), "barcode")
    if args.map:
        blocks, bars = barcode_with_map(obj)
        maps = [
            {"birth": endpoint_to_json(b), "death": endpoint_to_json(d), "matrix": matrix_to_json(mat)}
            for (b, d), mat in sorted(blocks.items(), key=lambda kv: (kv[0][0].birth_key(), kv[0][1].death_key()))
        ]
        return {"bars": bars_to_json(bars), "maps": maps}
    bars = functorial_barcode(obj)
    if args.ascii:
        return "\n".join(f"{b.ascii()}" + (f" x{b.mult}" if b.mult > 1 else "") for b in bars)
    return bars_to_json(bars)


COMMANDS = {
    "validate": (cmd_validate, "check an input file against its schema and invariants"),
    "encode": (cmd_encode, "finite encoding of a module by an uptight poset"),
    "hilbert": (cmd_hilbert, "dimensions of a module"),
    "rank": (cmd_rank, "rank of a structure map"),
    "dual": (cmd_dual, "Matlis dual of a module"),
    "localize": (cmd_localize, "localization along a face (or quotient restriction with --quotient)"),
    "socle": (cmd_socle, "closed socle degrees along faces"),
    "top": (cmd_top, "top degrees along faces"),
    "hom": (cmd_hom, "Hom dimension between indicator modules, or injectivity tests for a homomorphism"),
    "fringe-check": (cmd_fringe_check, "validate a monomial matrix"),
    "fringe-eval": (cmd_fringe_eval, "module presented by a monomial matrix"),
    "fringe-of": (cmd_fringe_of, "monomial matrix presenting a module"),
    "pullback": (cmd_pullback, "pull a poset module or poset fringe back along a morphism"),
    "decompose": (cmd_decompose, "canonical primary decomposition of a downset or a module"),
    "decompose-min": (cmd_decompose_min, "minimal primary decomposition of a downset"),
    "irreducible": (cmd_irreducible, "irreducible decomposition of a downset"),
    "qr": (cmd_qr, "QR code of a module"),
    "recover": (cmd_recover, "module recovered from its QR code"),
    "elder": (cmd_elder, "elder submodule, quotient and morphism at a birth"),
    "barcode": (cmd_barcode, "functorial bar code of a one-parameter module"),
}


def _point_arg(text: str) -> tuple:
    try:
        return parse_point(text)
    except SchemaError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="persistence-kernel", description="Exact computations with multiparameter persistence modules.")
    parser.add_argument("--version", action="version", version=f"persistence-kernel {_version()}")
    parser.add_argument("--schema", metavar="TYPE", choices=sorted(SCHEMAS), help="print the JSON schema of TYPE and exit")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("file", help="input JSON file, or - for stdin")
        p.add_argument("--box", help="box as l1,l2:h1,h2")
        if name in ("localize", "socle", "top", "decompose", "elder"):
            p.add_argument("--face", help="face as 1-based axes, e.g. 1,3 (empty string for the zero face)")
        if name in ("hilbert", "elder"):
            p.add_argument("--at", type=_point_arg, help="point, e.g. 1,1")
        if name == "rank":
            p.add_argument("--from", dest="from_", type=_point_arg, help="source point")
            p.add_argument("--to", type=_point_arg, help="target point")
        if name == "localize":
            p.add_argument("--quotient", action="store_true", help="quotient restriction instead of localization")
        if name == "qr":
            p.add_argument("--literal", action="store_true", help="also report the element-wise death functor on basis vectors")
        if name == "barcode":
            p.add_argument("--ascii", action="store_true", help="print bars as interval strings")
            p.add_argument("--map", action="store_true", help="include the map from tops to graded socles")
    return parser


def _fail(code: int, message: str) -> int:
    print(f"persistence-kernel: {message}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.schema:
        print(dumps(SCHEMAS[args.schema]))
        return 0
    if not args.command:
        parser.print_usage(sys.stderr)
        return 2
    handler = COMMANDS[args.command][0]
    try:
        args.box = _parse_box(args.box)
        data = _read(args.file)
        kind, obj = load(data)
        args.raw_box = None
        if kind == "qr" and "box" in data:
            args.raw_box = box_from_json(data["box"])
        result = handler(kind, obj, args)
    except SchemaError as exc:
        return _fail(2, str(exc))
    except KernelError as exc:
        return _fail(1, f"{type(exc).__name__}: {exc}")
    print(result if isinstance(result, str) else dumps(result))
    return 0


if __name__ == "__main__":
    sys.exit(main())
