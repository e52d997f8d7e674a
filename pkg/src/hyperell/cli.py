"""Command-line interface.

    hyperell analyze curve.json [--out report.json] [--M n]
             [--precision bits] [--tolerance x] [--threads k]
             [--cache series.json]
    hyperell search --genus g --coeff-bound b --max-conductor N
             --count c [--seed s] [--out curves.json]
    hyperell selftest [--full]

Exit codes: 0 verified, 2 functional equation not verified, 3 override
required at a non-semistable prime, 4 invalid input.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import fixtures
from .errors import (
    EXIT_FE_NOT_VERIFIED,
    EXIT_INVALID_INPUT,
    EXIT_NOT_SEMISTABLE,
    EXIT_OK,
    ConfigurationError,
    CurveError,
    HyperellError,
    InsufficientMError,
    NotSemistableError,
    ParseError,
)
from .pipeline import CurveInput, run, search


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperell",
        description="L-functions of semistable hyperelliptic curves: "
                    "bad-prime local factors, conductor, Dirichlet "
                    "coefficients, and a numerical functional-equation "
                    "check with root number.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="run the full pipeline on one curve")
    pa.add_argument("curve", help="curve JSON file")
    pa.add_argument("--out", help="write the run report to this JSON file")
    pa.add_argument("--M", type=int, help="force the coefficient cutoff")
    pa.add_argument("--precision", type=int,
                    help="working precision in bits (default 300)")
    pa.add_argument("--tolerance", type=float,
                    help="relative residual tolerance (default 1e-6)")
    pa.add_argument("--threads", type=int, default=1,
                    help="worker threads for good-prime counting")
    pa.add_argument("--cache", help="coefficient cache file (read or write)")

    ps = sub.add_parser("search", help="sample everywhere-semistable curves")
    ps.add_argument("--genus", type=int, required=True)
    ps.add_argument("--coeff-bound", type=int, required=True)
    ps.add_argument("--max-conductor", type=int, required=True)
    ps.add_argument("--count", type=int, required=True)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--budget", type=int, default=200_000)
    ps.add_argument("--out", help="write the curve list to this JSON file")

    pt = sub.add_parser("selftest", help="run the built-in regression suite")
    pt.add_argument("--full", action="store_true",
                    help="also verify one functional equation end to end")
    return parser


def _cmd_analyze(args) -> int:
    curve_input = CurveInput.load(args.curve)
    patches = {}
    if args.M is not None:
        patches["M"] = args.M
    if args.precision is not None:
        patches["precision_bits"] = args.precision
    if args.tolerance is not None:
        patches["tolerance"] = args.tolerance
    if patches:
        curve_input = dataclasses.replace(curve_input, **patches)
    report = run(curve_input, threads=args.threads, cache_path=args.cache)
    if args.out:
        report.save(args.out)

    print(f"genus {report.genus}, conductor {report.conductor}, "
          f"M = {report.M}")
    for s in report.bad_primes:
        poly = " + ".join(
            f"{c}*T^{i}" if i else f"{c}"
            for i, c in enumerate(s.factor.coeffs)
        )
        trunc = (f" (valid to degree {s.factor.truncated_at})"
                 if s.factor.truncated_at is not None else "")
        print(f"  p={s.p} [{s.source}]  f_p={s.f_p}  "
              f"L^-1 = {poly}{trunc}")
    fe = report.fe
    print(f"functional equation: {fe.verdict}"
          + (f", root number {fe.root_number}" if fe.root_number else ""))
    print(f"  residuals: +1 -> {fe.residuals[1]:.3e}, "
          f"-1 -> {fe.residuals[-1]:.3e}")
    print(f"  timings: " + ", ".join(
        f"{k}={v:.2f}s" for k, v in report.timings.items()
    ))
    return EXIT_OK if fe.verified else EXIT_FE_NOT_VERIFIED


def _cmd_search(args) -> int:
    curves = search(
        genus=args.genus,
        coeff_bound=args.coeff_bound,
        max_conductor=args.max_conductor,
        count=args.count,
        seed=args.seed,
        budget=args.budget,
    )
    payload = {"version": 1, "curves": [c.to_json_dict() for c in curves]}
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
    else:
        json.dump(payload, sys.stdout, indent=1)
        print()
    if len(curves) < args.count:
        print(f"warning: only {len(curves)}/{args.count} curves found "
              f"within the sampling budget", file=sys.stderr)
    return EXIT_OK


def _cmd_selftest(args) -> int:
    from .selftest import run_selftest

    ok = run_selftest(full=args.full)
    return EXIT_OK if ok else 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "search":
            return _cmd_search(args)
        return _cmd_selftest(args)
    except NotSemistableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_SEMISTABLE
    except (CurveError, ParseError, ConfigurationError, InsufficientMError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except HyperellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise


if __name__ == "__main__":
    sys.exit(main())
