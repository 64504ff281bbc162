"""Command-line front end.

Exit status is 0 on success, 1 when a check fails and 2 for bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Sequence

import numpy as np

from .continuation import solve_spectrum
from .errors import ClassJump, ConvergenceError, InadmissibleSpec, StructuralError
from .oracle import oracle_spectrum
from .problem import load_spec, validate
from .verification import DEMOS, run_demo, run_property_suite

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2
COLUMNS = ("k", "lambda", "s", "theta", "margin", "residual_left", "residual_right")


class _InputError(Exception):
    pass


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def _load(path: str):
    try:
        return load_spec(path)
    except (OSError, json.JSONDecodeError, StructuralError, KeyError, TypeError) as exc:
        raise _InputError(f"cannot read problem file {path!r}: {exc}") from exc


def _row(k, lam, phase, osc, residuals) -> dict:
    return {
        "k": k,
        "lambda": lam,
        "s": 0.0 if phase is None else phase.s,
        "theta": math.nan if phase is None else phase.theta,
        "margin": math.inf if osc is None else osc.boundary_margin,
        "residual_left": residuals[0],
        "residual_right": residuals[1],
    }


def _spectrum_rows(spec, kmax: int, method: str) -> tuple[list[dict], list[str]]:
    cont = oracle = None
    if method in ("continuation", "both"):
        cont = [_row(p.k, p.lam, p.phase, p.osc, p.residuals) for p in solve_spectrum(spec, kmax)]
    if method in ("oracle", "both"):
        # the index-k eigenvalue has s < (k + 2) pi / 2, so this window covers k = 0..kmax
        roots = oracle_spectrum(spec, (kmax + 2) * math.pi / 2)[: kmax + 1]
        if len(roots) < kmax + 1:
            raise ConvergenceError(f"oracle found {len(roots)} roots, expected {kmax + 1}")
        oracle = [_row(r.k, r.lam, r.phase, r.osc, r.residuals) for r in roots]
    if method == "continuation":
        return cont, list(COLUMNS)
    if method == "oracle":
        return oracle, list(COLUMNS)
    rows = []
    for c, o in zip(cont, oracle):
        row = dict(c)
        row["lambda_oracle"] = o["lambda"]
        row["lambda_diff"] = c["lambda"] - o["lambda"]
        rows.append(row)
    cols = ["k", "lambda", "lambda_oracle", "lambda_diff", *COLUMNS[2:]]
    return rows, cols


def _write_csv(rows, cols, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(cols)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in cols])


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def cmd_validate(args, out) -> int:
    report = validate(_load(args.file))
    print(json.dumps(report.to_dict(), indent=2), file=out)
    return EXIT_OK if report.admissible else EXIT_CHECK


def cmd_spectrum(args, out) -> int:
    spec = _load(args.file)
    rows, cols = _spectrum_rows(spec, args.kmax, args.method)
    if args.out == "json":
        print(json.dumps([{c: _jsonable(row[c]) for c in cols} for row in rows], indent=2), file=out)
    else:
        _write_csv(rows, cols, out)
    return EXIT_OK


def cmd_eigenfunction(args, out) -> int:
    spec = _load(args.file)
    if args.samples < 2:
        raise _InputError("--samples must be at least 2")
    pair = solve_spectrum(spec, args.k)[args.k]
    xs = np.linspace(-1.0, 1.0, args.samples)
    u, up = pair.u(xs), pair.uprime(xs)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["x", "u", "uprime"])
    for row in zip(xs, u, up):
        writer.writerow([_fmt(v) for v in row])
    return EXIT_OK


def cmd_verify(args, out) -> int:
    report = run_property_suite(_load(args.file), args.kmax)
    print(report.to_json(), file=out)
    return EXIT_OK if report.passed else EXIT_CHECK


def cmd_demo(args, out) -> int:
    report = run_demo(args.name, args.k0)
    print(report.to_json(), file=out)
    return EXIT_OK if report.passed else EXIT_CHECK


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multipoint-sl", description="Multi-point Sturm-Liouville eigenproblems on (-1, 1).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the standing hypotheses")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("spectrum", help="eigenvalue table")
    p.add_argument("file")
    p.add_argument("--kmax", type=_nonneg_int, required=True)
    p.add_argument("--method", choices=("continuation", "oracle", "both"), default="continuation")
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("eigenfunction", help="sampled eigenfunction with max |u| = 1")
    p.add_argument("file")
    p.add_argument("--k", type=_nonneg_int, required=True)
    p.add_argument("--samples", type=int, default=201)
    p.set_defaults(func=cmd_eigenfunction)

    p = sub.add_parser("verify", help="run the property suite")
    p.add_argument("file")
    p.add_argument("--kmax", type=_nonneg_int, default=10)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("demo", help="reproduce a counterexample")
    p.add_argument("name", choices=(*DEMOS, "missing-eigenvalues"))
    p.add_argument("--k0", type=int, default=1000)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (_InputError, InadmissibleSpec, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConvergenceError, ClassJump) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK


run_command = main


if __name__ == "__main__":
    sys.exit(main())
