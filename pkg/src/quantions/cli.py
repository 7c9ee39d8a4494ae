"""``qtn``: golden tables, identity suites and single-value queries.

Exit codes: 0 success, 1 verification or algebraic failure, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any

from . import quantal, tables
from .core import NullDivisor, Quantion, inverse
from .representations import zovko_current

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_BASIS_NAMES = {"tetrad": "tetrad", "quaternion": "quaternion", "null": "null_tetrad", "null_tetrad": "null_tetrad"}


class UsageError(Exception):
    pass


def dumps(obj: Any) -> str:
    """JSON with every float written to 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError("non-finite number in output")
        return format(obj + 0.0, ".17g")
    if isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def parse_algebra(spec: str) -> quantal.BiAlgebra:
    kind, _, arg = spec.partition(":")
    try:
        size = int(arg)
    except ValueError:
        raise UsageError(f"invalid algebra spec {spec!r}; expected hermitian:N, realsym:N or poisson:D") from None
    try:
        if kind == "hermitian":
            return quantal.hermitian_algebra(size, 1)
        if kind == "realsym":
            return quantal.realsym_algebra(size)
        if kind == "poisson":
            if size > 8:
                raise ValueError("poisson degree cap must be at most 8")
            return quantal.poisson_algebra(size)
    except ValueError as exc:
        raise UsageError(f"invalid algebra spec {spec!r}: {exc}") from None
    raise UsageError(f"unknown algebra kind {kind!r}; expected hermitian, realsym or poisson")


def _read_quantion(path: str) -> Quantion:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        data = json.loads(text)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read quantion from {path}: {exc}") from None
    if not isinstance(data, list):
        raise UsageError("quantion file must hold a JSON array of 8 numbers")
    try:
        return Quantion.from_json(data)
    except (ValueError, TypeError, OverflowError) as exc:
        raise UsageError(f"malformed quantion: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


# subcommands


def cmd_tables(args) -> int:
    name = _BASIS_NAMES[args.basis]
    computed = tables.basis_table(name)
    bad = tables.table_mismatches(name)
    if args.format == "json":
        cells = [
            [
                {
                    "expr": tables.express(entry, name),
                    "value": entry.to_json() if hasattr(entry, "to_json") else list(entry),
                }
                for entry in row
            ]
            for row in computed.entries
        ]
        doc = {
            "basis": name,
            "labels": list(computed.labels),
            "cells": cells,
            "match": not bad,
            "mismatches": [dict(zip(("row", "col", "expected", "computed"), m)) for m in bad],
        }
        print(dumps(doc))
    else:
        exprs = [[tables.express(e, name) for e in row] for row in computed.entries]
        width = max(len(s) for s in [*computed.labels, *(c for row in exprs for c in row)]) + 2
        print("".ljust(width) + "".join(lab.ljust(width) for lab in computed.labels))
        for lab, row in zip(computed.labels, exprs):
            print(lab.ljust(width) + "".join(c.ljust(width) for c in row))
        if bad:
            for row, col, want, got in bad:
                print(f"mismatch at ({row}, {col}): expected {want}, computed {got}")
        else:
            print(f"{name}: all 16 cells match the golden table")
    return EXIT_FAIL if bad else EXIT_OK


def _render_reports(reports, fmt: str) -> str:
    if fmt == "json":
        return dumps([r.to_dict() for r in reports])
    lines = []
    for r in reports:
        lines.append(
            f"{r.algebra}  {r.identity:<10}  max_residual={format(r.max_residual, '.17g')}"
            f"  tol={format(r.tol, '.17g')}  samples={r.samples}  seed={r.seed}  {r.verdict.upper()}"
        )
    return "\n".join(lines)


def _run(A: quantal.BiAlgebra, args) -> int:
    if args.a is not None:
        A = quantal.with_a(A, args.a)
    reports = quantal.run_suite(A, args.samples, args.seed, args.tol, workers=args.workers)
    _emit(_render_reports(reports, args.format), args.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_verify(args) -> int:
    return _run(parse_algebra(args.algebra), args)


def cmd_compose(args) -> int:
    left, right = parse_algebra(args.left), parse_algebra(args.right)
    try:
        A = quantal.compose(left, right)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return _run(A, args)


def cmd_current(args) -> int:
    j, cls = zovko_current(_read_quantion(args.input))
    if args.format == "json":
        print(dumps({"j": j.to_json(), "class": cls.value}))
    else:
        print(f"j = {dumps(j.to_json())}  {cls.value}")
    return EXIT_OK


def cmd_inverse(args) -> int:
    q = _read_quantion(args.input)
    try:
        inv = inverse(q)
    except NullDivisor as exc:
        print(f"null divisor: {exc}", file=sys.stderr)
        return EXIT_FAIL
    print(dumps(inv.to_json()))
    return EXIT_OK


# argument parsing


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError("must be a positive number")
    return value


def _suite_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a", type=int, choices=(-1, 0, 1), default=None,
                   help="Petersen parameter to check against (default: the realization's own)")
    p.add_argument("--samples", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=_positive_float, default=quantal.DEFAULT_TOL)
    p.add_argument("--workers", type=_positive_int, default=1,
                   help="threads used to evaluate sample chunks; does not change the output")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None, help="write the reports to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qtn", description="Quantion algebra verification tool.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="print a basis multiplication table and diff it against the golden one")
    p.add_argument("--basis", choices=sorted(_BASIS_NAMES), required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", help="run the Jacobi/Leibniz/Petersen suite on one realization")
    p.add_argument("--algebra", required=True, help="hermitian:N, realsym:N or poisson:D")
    _suite_options(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compose", help="run the suite on the tensor composition of two realizations")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    _suite_options(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("current", help="current j = q+q of a quantion and its causal class")
    p.add_argument("--in", dest="input", required=True, help="JSON file with 8 numbers, or - for stdin")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_current)

    p = sub.add_parser("inverse", help="inverse of a quantion")
    p.add_argument("--in", dest="input", required=True, help="JSON file with 8 numbers, or - for stdin")
    p.set_defaults(func=cmd_inverse)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, OSError) as exc:
        print(f"qtn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
