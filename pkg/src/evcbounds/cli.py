"""Command-line interface.

Subcommands::

    measure  [--in FILE|-]                      rho and tau of a Pickands function
    validate --in FILE                          check and canonicalize a knot list
    bounds   --measure M --v V --n N [--out F]  CSV table t,lower,upper
    witness  --measure M --v V --t T --y Y      attaining function through (t, y)
    verify   --measure M --v V [--seed S]       batch property report

Exit codes: 0 ok, 2 invalid input, 3 point outside region, 4 witness failure,
5 property failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import envelopes as env
from . import measures as m
from .errors import (
    DomainError,
    EVCBoundsError,
    InvalidPickands,
    PointOutsideRegion,
    WitnessNotFound,
)
from .numerics import QuadratureConfig
from .pickands import from_json, is_valid
from .verification import run_suite

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_OUTSIDE = 3
EXIT_WITNESS = 4
EXIT_PROPERTY = 5

# largest tolerated gap between an exact value and its quadrature cross-check
CROSS_CHECK_TOL = 1e-8


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_json(path: str | None):
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise _Failure(EXIT_INVALID, f"cannot read Pickands JSON: {exc}") from exc


def _emit(obj, out=None):
    text = json.dumps(obj, sort_keys=True)
    (out or sys.stdout).write(text + "\n")


def _level(v: float) -> float:
    if not 0.0 <= v <= 1.0:
        raise _Failure(EXIT_INVALID, f"--v must lie in [0, 1], got {v}")
    return v


def cmd_measure(args) -> int:
    obj = _read_json(args.input)
    try:
        A = from_json(obj)
    except InvalidPickands as exc:
        raise _Failure(EXIT_INVALID, f"invalid Pickands function: {exc}") from exc
    cfg = QuadratureConfig(tol=args.tol)
    fam = A.family
    if fam is not None and fam.tag in ("T", "L", "P"):
        rho, tau = m.rho_family_closed(fam), m.tau_family_closed(fam)
        method = {"rho": "closed-form", "tau": "closed-form"}
    else:
        rho, tau = m.rho(A), m.tau(A)
        method = {"rho": "closed-form", "tau": "stieltjes"}
    gap = max(abs(rho - m.rho_quadrature(A, cfg)), abs(tau - m.tau_quadrature_oracle(A, cfg)))
    if gap > CROSS_CHECK_TOL:
        raise _Failure(EXIT_PROPERTY, f"quadrature cross-check disagrees by {gap:.3e}")
    _emit({"rho": rho, "tau": tau, "method": method, "tolerance": gap})
    return EXIT_OK


def cmd_validate(args) -> int:
    obj = _read_json(args.input)
    if isinstance(obj, dict) and "knots" in obj:
        ok, why = is_valid(obj["knots"])
        if not ok:
            _emit({"valid": False, "diagnostic": why})
            print(why, file=sys.stderr)
            return EXIT_INVALID
    try:
        A = from_json(obj)
    except InvalidPickands as exc:
        _emit({"valid": False, "diagnostic": str(exc)})
        print(exc, file=sys.stderr)
        return EXIT_INVALID
    _emit({"valid": True, **A.to_json()})
    return EXIT_OK


def cmd_bounds(args) -> int:
    v = _level(args.v)
    if args.n < 2:
        raise _Failure(EXIT_INVALID, f"--n must be at least 2, got {args.n}")
    rows = env.boundary_curves(args.measure, v, args.n)
    if args.out in (None, "-"):
        env.write_bounds_csv(rows, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            env.write_bounds_csv(rows, fh)
    return EXIT_OK


def cmd_witness(args) -> int:
    v = _level(args.v)
    try:
        w = env.witness(args.measure, v, args.t, args.y)
    except PointOutsideRegion as exc:
        raise _Failure(EXIT_OUTSIDE, str(exc)) from exc
    except WitnessNotFound as exc:
        raise _Failure(EXIT_WITNESS, str(exc)) from exc
    _emit(w.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    v = _level(args.v)
    report = run_suite(args.measure, v, seed=args.seed, n_samples=args.samples,
                       n_grid=args.grid, n_sweep=args.sweep)
    _emit(report)
    return EXIT_OK if report["passed"] else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evcbounds",
        description="Dependence measures and sharp bounds for extreme-value copulas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="Spearman's rho and Kendall's tau of a Pickands function")
    p.add_argument("--in", dest="input", default="-", help="JSON file, or - for stdin")
    p.add_argument("--tol", type=float, default=1e-12, help="quadrature tolerance of the cross-check")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("validate", help="validate and canonicalize a Pickands function")
    p.add_argument("--in", dest="input", required=True, help="JSON file, or - for stdin")
    p.set_defaults(func=cmd_validate)

    def common(p):
        p.add_argument("--measure", choices=["rho", "tau"], required=True)
        p.add_argument("--v", type=float, required=True, help="target value in [0, 1]")

    p = sub.add_parser("bounds", help="tabulate the lower and upper bound as CSV")
    common(p)
    p.add_argument("--n", type=int, default=201, help="number of grid points")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("witness", help="attaining Pickands function through (t, y)")
    common(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="run the property suite for one target value")
    common(p)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--samples", type=int, default=100, help="random draws per property")
    p.add_argument("--grid", type=int, default=201, help="t-grid size for the envelope check")
    p.add_argument("--sweep", type=int, default=10_000, help="apex grid size of the brute-force envelope")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Failure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (DomainError, EVCBoundsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
