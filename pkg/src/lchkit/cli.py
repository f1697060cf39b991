"""Command-line front end. Every command prints one JSON object (or CSV).

Exit codes: 0 success, 1 negative verdict, 2 input error, 3 search budget
exhausted. Fronts are file paths or ``fixture:<name>`` for shipped data.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import cthulhu, obstruct
from .augment import budget_from_env, enumerate_augmentations, enumerate_matrix_reps
from .data import fixture_text
from .diagram import classical_invariants, maslov_modulus, maslov_potential, parse_front, reeb_chords
from .discs import differential, sweep_disks
from .errors import LCHError, SchemaError
from .linhom import duality_report, homology, lch_table, linearise

VERSION = 1


class InputError(LCHError):
    """Missing or unreadable input file."""


def _read(arg: str) -> str:
    if arg.startswith("fixture:"):
        name = arg.split(":", 1)[1]
        try:
            return fixture_text(name if "." in name else f"{name}.front")
        except (FileNotFoundError, OSError):
            raise InputError(f"no shipped fixture {name!r}") from None
    p = Path(arg)
    if not p.is_file():
        raise InputError(f"no such file: {arg}")
    return p.read_text()


def _front(arg: str):
    return parse_front(_read(arg))


def _emit(obj, out) -> None:
    obj = dict(obj)
    obj.setdefault("version", VERSION)
    out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _graded(args) -> bool:
    return not getattr(args, "ungraded", False)


def _chords_json(f):
    return [{"id": c.id, "degree": c.degree, "kind": c.kind, "position": c.position} for c in reeb_chords(f)]


def _write_disks(f, path: Optional[str]) -> None:
    if not path:
        return
    lines = [json.dumps(d.to_json(), sort_keys=True) for d in sweep_disks(f)]
    Path(path).write_text("".join(line + "\n" for line in lines))


# -- commands ---------------------------------------------------------------------

def cmd_invariants(args, out) -> int:
    f = _front(args.front)
    _write_disks(f, args.emit_disks)
    ci = classical_invariants(f)
    _emit({
        "front": str(f),
        "tb": ci.tb,
        "rot": ci.rot,
        "maslov_modulus": maslov_modulus(f),
        "maslov_potential": {str(k): v for k, v in maslov_potential(f).items()},
        "chords": _chords_json(f),
    }, out)
    return 0


def cmd_dga(args, out) -> int:
    f = _front(args.front)
    _write_disks(f, args.emit_disks)
    _emit({"front": str(f), "dga": differential(f).to_json()}, out)
    return 0


def cmd_augs(args, out) -> int:
    d = differential(_front(args.front))
    augs = enumerate_augmentations(d, _graded(args))
    _emit({"graded": _graded(args), "count": len(augs), "augmentations": [a.to_json() for a in augs]}, out)
    return 0


def cmd_reps(args, out) -> int:
    d = differential(_front(args.front))
    budget = args.budget if args.budget is not None else budget_from_env()
    reps, complete = enumerate_matrix_reps(d, args.k, budget=budget, graded=_graded(args))
    _emit({
        "k": args.k,
        "graded": _graded(args),
        "budget": budget,
        "complete": complete,
        "count": len(reps),
        "reps": [r.to_json() for r in reps],
    }, out)
    return 0 if complete else 3


def cmd_lch(args, out) -> int:
    f = _front(args.front)
    d = differential(f)
    table = lch_table(d, _graded(args))
    if args.format == "csv":
        out.write(table.to_csv())
        return 0
    lin = [str(homology(linearise(d, e, _graded(args)))) for e in table.augmentations]
    _emit({
        "front": str(f),
        "generators": len(d.generators),
        "augmentations": len(table.augmentations),
        "linearised": lin,
        "table": table.to_json()["rows"],
        "classes": [str(p) for p in table.classes],
    }, out)
    return 0


def cmd_lch_set(args, out) -> int:
    d = differential(_front(args.front))
    table = lch_table(d, _graded(args))
    if args.format == "csv":
        out.write("class\n" + "".join(f"{p.to_sparse()}\n" for p in table.classes))
        return 0
    _emit({"classes": [str(p) for p in table.classes], "sparse": [p.to_sparse() for p in table.classes]}, out)
    return 0


def cmd_duality(args, out) -> int:
    d = differential(_front(args.front))
    rows = duality_report(d, _graded(args))
    ok = all(r["duality"] and r["fundamental_class"] for r in rows)
    _emit({"rows": rows, "holds": ok}, out)
    return 0 if ok else 1


def cmd_concordance(args, out) -> int:
    da, db = differential(_front(args.a)), differential(_front(args.b))
    ab, ba = obstruct.concordance_obstruction(da, db, _graded(args), names=(args.a, args.b))
    _emit({"verdicts": [ab.to_json(), ba.to_json()]}, out)
    return 0


def cmd_endo(args, out) -> int:
    d = differential(_front(args.front))
    betti = [int(x) for x in args.betti.split(",")] if args.betti else obstruct.CIRCLE
    _emit(obstruct.endocobordism_constraints(d, betti, _graded(args)), out)
    return 0


def _poly(text: str):
    try:
        return obstruct.BettiVector.of(text)
    except ValueError as exc:
        raise SchemaError(f"bad polynomial {text!r}: {exc}") from None


def cmd_les_check(args, out) -> int:
    res = obstruct.les_feasibility(
        _poly(args.minus), _poly(args.plus), _poly(args.candidate), args.mode, args.n, _poly(args.boundary)
    )
    obj = res.to_json()
    obj["mode"] = args.mode
    _emit(obj, out)
    return 0 if res.feasible else 1


def cmd_cthulhu(args, out) -> int:
    text = _read(args.file)
    if args.action == "concat":
        cd = cthulhu.ConcatenationData.from_json(text)
        rep = cthulhu.verify_concatenation(cd, strict=False)
        _emit(rep, out)
        checks = [v for k, v in rep.items() if k != "version" and v is not None]
        return 0 if all(checks) else 1
    c = cthulhu.load(text)
    if args.action == "verify":
        rep = cthulhu.verify(c)
        _emit(rep, out)
        return 0 if rep["d_squared"] and rep["acyclic"] else 1
    if args.action == "ss":
        rep = cthulhu.spectral_sequence(c)
        _emit(rep.to_json(), out)
        return 0 if rep.collapse else 1
    rep = cthulhu.extract_les(c, args.mode)
    _emit(rep.to_json(), out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lchkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def front_cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("front", help="front file or fixture:<name>")
        s.add_argument("--ungraded", action="store_true", help="drop the degree-0 restriction on augmentations")
        s.set_defaults(fn=fn)
        return s

    for name, fn, h in (("invariants", cmd_invariants, "tb, rot and graded chords"), ("dga", cmd_dga, "Chekanov-Eliashberg DGA")):
        s = front_cmd(name, fn, h)
        s.add_argument("--emit-disks", metavar="PATH", help="write every disk as a JSON line to PATH")
    front_cmd("augs", cmd_augs, "augmentations into F2")
    s = front_cmd("reps", cmd_reps, "representations into k x k matrices")
    s.add_argument("-k", type=int, default=2)
    s.add_argument("--budget", type=int, default=None, help="search node limit (default: LCH_BUDGET or 200000)")
    for name, fn, h in (("lch", cmd_lch, "bilinearised homology table"), ("lch-set", cmd_lch_set, "set of homology classes")):
        s = front_cmd(name, fn, h)
        s.add_argument("--format", choices=("json", "csv"), default="json")
    front_cmd("duality", cmd_duality, "duality and fundamental class for every augmentation")
    s = sub.add_parser("concordance", help="concordance obstruction in both directions")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--ungraded", action="store_true")
    s.set_defaults(fn=cmd_concordance)
    s = front_cmd("endo-constraints", cmd_endo, "constraints on exact endocobordisms")
    s.add_argument("--betti", help="Betti numbers of the Legendrian, comma separated (default 1,1)")
    s = sub.add_parser("les-check", help="rank feasibility of a long exact sequence")
    s.add_argument("--minus", required=True, help="Poincare polynomial of LCH at the negative end, e.g. 't'")
    s.add_argument("--plus", required=True)
    s.add_argument("--candidate", default="0", help="candidate Betti polynomial of the cobordism")
    s.add_argument("--boundary", default="1 + t", help="Betti polynomial of the negative end (Mayer-Vietoris)")
    s.add_argument("--mode", choices=obstruct.MODES, default="pair")
    s.add_argument("-n", type=int, default=1)
    s.set_defaults(fn=cmd_les_check)
    s = sub.add_parser("cthulhu", help="Cthulhu block complexes")
    s.add_argument("action", choices=("verify", "ss", "les", "concat"))
    s.add_argument("file", help="JSON file or fixture:<name>.json")
    s.add_argument("--mode", choices=("directed", "v_shaped"), default="directed")
    s.set_defaults(fn=cmd_cthulhu)
    return p


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args, out)
    except LCHError as exc:
        err = {"version": VERSION, "error": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "node", None):
            err["node"] = exc.node
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
