"""Command line interface: ``fts build | check | emit | variety | weights``.

Exit codes: 0 all pass, 1 a check failed, 2 bad input, 3 inconclusive under --strict.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Sequence

from .arith import ParseError, RingContext
from .fts import POINT_NAMES, DegenerateTrace, FtsSystem, InconsistentDivision, build_fts
from .linalg import PolyMatrix
from .reports import FAIL, INCONCLUSIVE

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class InputError(ValueError):
    pass


def _json_line(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=str, separators=(",", ":"))


# reading a (P, Q) pair

def parse_pq(data) -> tuple[PolyMatrix, PolyMatrix]:
    """Matrices from {"P": 3x3, "Q": 3x3}; entries are integers, "a/b" strings,
    variable names or polynomial text in those variables."""
    if not isinstance(data, dict) or "P" not in data or "Q" not in data:
        raise InputError('expected an object with keys "P" and "Q"')
    names: list[str] = []
    for key in ("P", "Q"):
        M = data[key]
        if not (isinstance(M, list) and len(M) == 3 and all(isinstance(r, list) and len(r) == 3 for r in M)):
            raise InputError(f"{key} must be a 3x3 array")
        for row in M:
            for e in row:
                if isinstance(e, bool) or not isinstance(e, (int, str)):
                    raise InputError(f"bad entry {e!r} in {key}")
                if isinstance(e, str):
                    names += [n for n in _IDENT.findall(e) if n not in names]
    clash = [n for n in names if n in POINT_NAMES]
    if clash:
        raise InputError(f"entries use reserved names {clash}")
    ring = RingContext(names)
    try:
        mats = [PolyMatrix(ring, [[ring.parse(e) if isinstance(e, str) else ring.const(e) for e in row]
                                  for row in data[key]]) for key in ("P", "Q")]
    except (ParseError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"cannot parse matrix entry: {e}") from None
    return mats[0], mats[1]


def load_pq(path: str) -> FtsSystem:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from None
    P, Q = parse_pq(data)
    return build_fts(P, Q, Path(path).stem)


def fts_summary(f: FtsSystem) -> dict:
    return {
        "Nx": str(f.Nx),
        "Ny": str(f.Ny),
        "BetaMatrix": [[str(e) for e in row] for row in f.beta],
        "Dbeta": str(f.dbeta),
        "parameters": list(f.parameters),
    }


# subcommands

def cmd_build(args) -> int:
    try:
        f = load_pq(args.pq)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (DegenerateTrace, InconsistentDivision) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL
    summary = fts_summary(f)
    if args.json:
        print(json.dumps(summary, sort_keys=True, indent=2))
    else:
        print(f"Nx = {summary['Nx']}")
        print(f"Ny = {summary['Ny']}")
        print("BetaMatrix =")
        for row in summary["BetaMatrix"]:
            print("  [" + ", ".join(row) + "]")
        print(f"Dbeta = {summary['Dbeta']}")
    return EXIT_OK


def cmd_check(args) -> int:
    from .battery import UnknownSuite, battery, overall_status, run_battery
    pairs = None
    if args.pq:
        try:
            pairs = [load_pq(args.pq)]
        except InputError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INPUT
        except (DegenerateTrace, InconsistentDivision) as e:
            print(f"{type(e).__name__}: {e}", file=sys.stderr)
            return EXIT_FAIL
    try:
        entries = battery(args.suite, seed=args.seed, pairs=pairs, bound=args.bound)
    except UnknownSuite as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    results = run_battery(entries, threads=args.threads)
    lines = "".join(_json_line(r.to_json(timings=args.timings)) + "\n" for r in results)
    if args.json:
        Path(args.json).write_text(lines)
    else:
        sys.stdout.write(lines)
    status = overall_status(results)
    counts = {s: sum(r.status == s for r in results) for s in ("pass", "fail", "inconclusive")}
    print(f"{args.suite}: {status} ({counts['pass']} pass, {counts['fail']} fail, "
          f"{counts['inconclusive']} inconclusive)", file=sys.stderr)
    if status == FAIL:
        return EXIT_FAIL
    if status == INCONCLUSIVE and args.strict:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _system(vid: str):
    from .varieties.generators import UnknownVariety, generate
    try:
        return generate(vid)
    except UnknownVariety:
        raise InputError(f"unknown variety {vid}") from None


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_emit(args) -> int:
    try:
        sys_ = _system(args.variety)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        _write(json.dumps(sys_.to_json(), indent=2) + "\n", args.out)
    else:
        _write(sys_.to_text(), args.out)
    return EXIT_OK


def cmd_variety(args) -> int:
    args.variety, args.format = args.id, "json"
    return cmd_emit(args)


def cmd_weights(args) -> int:
    from . import weights as wt
    try:
        sys_ = _system(args.id)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if not hasattr(sys_, "max_degree"):
        print("error: weights need a polynomial system", file=sys.stderr)
        return EXIT_INPUT
    wcs = wt.weight_constraints(sys_)
    sol = wt.solve_weights(wcs)
    out = {"constraints": wcs.to_json(), "solution": sol.to_json()}
    code = EXIT_OK
    if args.table:
        try:
            table = json.loads(Path(args.table).read_text())
            w = wt.WeightAssignment({k: wt.to_rational(v) for k, v in table.items()})
            missing = [n for n in sys_.ring.names if n not in w]
            if missing:
                raise InputError(f"table misses {missing}")
        except (OSError, json.JSONDecodeError, ValueError, TypeError) as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INPUT
        try:
            if args.id == "U14":
                rep = wt.graded_report(sys_, w)
                out["graded_report"] = rep.to_json()
                code = EXIT_OK if all(rep.checks.values()) else EXIT_FAIL
            else:
                out["equation_degrees"] = {l: str(d) for l, d in zip(sys_.labels, w.check(sys_))}
        except wt.NotHomogeneous as e:
            out["not_homogeneous"] = str(e)
            code = EXIT_FAIL
    print(json.dumps(out, indent=2, sort_keys=True, default=str))
    return code


# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fts", description="Exact FTS constructions and key-variety checks.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build an FTS from a (P, Q) file and print its invariants")
    b.add_argument("--pq", required=True, help='JSON file {"P": 3x3, "Q": 3x3}')
    b.add_argument("--json", action="store_true", help="print the summary as JSON")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="run a verification battery and stream JSON Lines reports")
    c.add_argument("--suite", default="all",
                   help="axioms | identities | variety:<id> | varieties | charts | actions | fibers | weights | all")
    c.add_argument("--seed", type=int, default=42)
    c.add_argument("--bound", type=int, default=None, help="degree bound for membership checks")
    c.add_argument("--pq", help="run axioms/identities on this pair instead of the defaults")
    c.add_argument("--json", metavar="OUT", help="write the report here instead of stdout")
    c.add_argument("--strict", action="store_true", help="exit 3 when a check is inconclusive")
    c.add_argument("--timings", action="store_true", help="include duration_ms in every report")
    c.add_argument("--threads", type=int, default=None, help="worker threads (default: FTS_THREADS or 1)")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("emit", help="write the canonical equations of a variety")
    e.add_argument("--variety", required=True)
    e.add_argument("--format", choices=("text", "json"), default="text")
    e.add_argument("--out")
    e.set_defaults(func=cmd_emit)

    v = sub.add_parser("variety", help="write the equations of a variety as JSON")
    v.add_argument("id")
    v.add_argument("--out")
    v.set_defaults(func=cmd_variety)

    w = sub.add_parser("weights", help="weight constraints, their solution and an optional graded report")
    w.add_argument("id")
    w.add_argument("--table", help="JSON file mapping each variable to its weight")
    w.set_defaults(func=cmd_weights)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
