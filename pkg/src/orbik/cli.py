"""Command-line entry point.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
3 a class hit the slope-theta wall.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import kzero, reps, suite
from .quiver import WeightedData
from .tilting import WallError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_WALL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("ORBIK_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"ORBIK_SEED must be an integer, got {env!r}")
    return suite.DEFAULT_SEED


def _data(args) -> WeightedData:
    if (args.m is None) == (args.data is None):
        raise UsageError("give exactly one of --m and --data")
    if args.m is not None:
        return kzero.case_data(args.m)
    try:
        return WeightedData.load(args.data)
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read weighted data from {args.data}: {exc}")


def _add_case(p: argparse.ArgumentParser):
    p.add_argument("--m", type=int, choices=suite.CASES, help="orbifold case")
    p.add_argument("--data", type=Path, help="weights/lambda JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbik", description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, help="also write the JSON report here")
    parser.add_argument("--text", action="store_true", help="print one PASS/FAIL line per check instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="ramification data of C/L -> P^1")
    p.add_argument("--m", type=int, choices=suite.CASES, required=True)
    p.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("algebra", help="quiver, relations, algebra basis and K0 checks")
    _add_case(p)
    p.add_argument("--print", dest="prints", action="append", choices=("cartan", "euler", "gram", "basis"), default=[])
    p.add_argument("--n", type=int, action="append", help="twist for the transport check (repeatable)")
    p.add_argument("--pairs", type=int, default=50, help="random module pairs for the Euler-form oracle")
    p.add_argument("--seed", type=int)

    p = sub.add_parser("classify", help="slope-theta classification of modules")
    _add_case(p)
    p.add_argument("--theta", required=True, help='"p/q" or "a+b*sqrt(d)"')
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--module", type=Path, help="representation JSON file")
    group.add_argument("--corpus", type=int, help="size of a seeded random corpus")
    p.add_argument("--n", type=int, help="override the canonical twist (module mode)")
    p.add_argument("--dim-bound", type=int, default=3)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("cocycle", help="cocycle identity and invariance checks")
    p.add_argument("--m", type=int, choices=suite.CASES, required=True)
    p.add_argument("--radius", type=int, default=3)

    p = sub.add_parser("verify-all", help="every acceptance check across the four cases")
    p.add_argument("--seed", type=int)
    p.add_argument("--corpus", type=int, default=100)
    p.add_argument("--pairs", type=int, default=50)
    return parser


def _run(args) -> dict:
    if args.command == "derive":
        if args.tol <= 0:
            raise UsageError("--tol must be positive")
        return suite.derive_report(args.m, args.tol)
    if args.command == "algebra":
        return suite.algebra_report(_data(args), args.prints, args.n, args.pairs, _seed(args))
    if args.command == "classify":
        data = _data(args)
        seed = _seed(args)
        if args.module is not None:
            try:
                module = reps.Representation.load(kzero.algebra(data), args.module)
            except (OSError, KeyError, json.JSONDecodeError) as exc:
                raise UsageError(f"cannot read module from {args.module}: {exc}")
            return suite.classify_module_report(data, args.theta, module, seed, args.n)
        if args.corpus < 1:
            raise UsageError("--corpus must be positive")
        return suite.classify_corpus_report(data, args.theta, args.corpus, seed, args.dim_bound)
    if args.command == "cocycle":
        if args.radius < 1:
            raise UsageError("--radius must be at least 1")
        return suite.cocycle_report(args.m, args.radius)
    if args.command == "verify-all":
        return suite.verify_all(_seed(args), args.corpus, args.pairs)
    raise UsageError(f"unknown command {args.command}")


def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2)
    if args.out:
        args.out.write_text(text + "\n", encoding="utf-8")
    if args.text:
        for c in report.get("checks", []):
            print(f"{'PASS' if c['pass'] else 'FAIL'}  {c['name']}")
        print(f"overall: {'PASS' if report.get('pass') else 'FAIL'}")
    else:
        print(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        report = _run(args)
    except WallError as exc:
        report = {
            "command": args.command,
            "error": str(exc),
            "class": {"dims": exc.dims, "deg": str(exc.deg), "rk": exc.rk, "theta": str(exc.theta)},
            "pass": False,
        }
        _emit(report, args)
        return EXIT_WALL
    except (UsageError, ValueError) as exc:
        print(f"orbik: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args)
    return EXIT_OK if report["pass"] else EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
