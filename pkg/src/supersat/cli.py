"""Command line front end.

Exit codes: 0 success, 1 verify failure, 2 unreadable graph file, 3 bad
parameters, 4 unwritable output.  Results go to stdout and are byte-identical
for identical inputs; timing goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from . import bounds
from .graph_core import GraphFormatError, count_cliques, count_stars, read_graph
from .graphon_opt import OptParams, crossover_scan, fmt_float, scan_csv, solve
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PARAM, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def dumps(obj: Any) -> str:
    """Compact JSON with 17-significant-digit floats and insertion key order."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"cannot encode non-finite float {obj}")
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class RunReport:
    command: str
    params: dict
    payload: Any = None
    passed: int = 0
    failed: int = 0
    started: float = field(default_factory=time.perf_counter)

    def summary(self) -> str:
        wall = time.perf_counter() - self.started
        args = " ".join(f"{k}={v}" for k, v in self.params.items() if v is not None)
        line = f"{self.command} {args}".rstrip()
        if self.command == "verify":
            line += f": {self.passed} passed, {self.failed} failed"
        return f"{line} ({wall:.2f}s)"


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        what = getattr(args, "subtype", None) or args.command
        raise UsageError(f"{what} needs {', '.join(missing)}")


# --- subcommands --------------------------------------------------------------


def cmd_count(args, report: RunReport, out) -> int:
    _need(args, "graph")
    if args.size < 1:
        raise UsageError(f"size must be >= 1, got {args.size}")
    g = read_graph(args.graph)
    value = count_cliques(g, args.size) if args.kind == "clique" else count_stars(g, args.size)
    report.payload = value
    out.write(f"{value}\n")
    return EXIT_OK


def _bounds_payload(args) -> dict:
    sub = args.subtype
    if sub == "cliques-no-star":
        _need(args, "n", "r", "t")
        value = bounds.ex_cliques_no_star(args.n, args.r, args.t)
        return {"subtype": sub, "n": args.n, "r": args.r, "t": args.t, "value": _rational(value)}
    if sub == "stars-no-star":
        _need(args, "n", "r", "t")
        value = bounds.ex_stars_no_star(args.n, args.r, args.t)
        return {"subtype": sub, "n": args.n, "r": args.r, "t": args.t, "value": value}
    if sub == "supersat-delta":
        _need(args, "r", "t", "eps")
        b = bounds.supersat_delta(args.r, args.t, args.eps)
        return {"subtype": sub, "r": args.r, "t": args.t, "eps": args.eps,
                "threshold": b.threshold, "delta": b.delta}
    if sub == "theta":
        _need(args, "n", "kt", "t", "s")
        value = bounds.theta_clique_bound(args.n, args.kt, args.t, args.s)
        return {"subtype": sub, "n": args.n, "kt": args.kt, "t": args.t, "s": args.s, "value": value}
    _need(args, "n", "r", "t", "eps")
    value = bounds.star_star_supersat(args.n, args.r, args.t, args.eps)
    return {"subtype": sub, "n": args.n, "r": args.r, "t": args.t, "eps": args.eps, "value": value}


def cmd_bounds(args, report: RunReport, out) -> int:
    report.payload = _bounds_payload(args)
    out.write(dumps(report.payload) + "\n")
    return EXIT_OK


def cmd_optimize(args, report: RunReport, out) -> int:
    _need(args, "r", "t")
    result = solve(OptParams(args.r, args.t))
    report.payload = result.to_dict()
    out.write(dumps(report.payload) + "\n")
    return EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError:
        raise UsageError(f"--range must look like LO:HI, got {text!r}") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def cmd_scan(args, report: RunReport, out) -> int:
    _need(args, "r", "range")
    lo, hi = _parse_range(args.range)
    text = scan_csv(crossover_scan(args.r, lo, hi))
    report.payload = text
    if args.out is None or args.out == "-":
        out.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_verify(args, report: RunReport, out) -> int:
    if args.suite not in SUITES and args.suite != "all":
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join([*SUITES, 'all'])}")
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    for check in run_suite(args.suite, max_n=args.max_n, seed=args.seed):
        out.write(check.line() + "\n")
        if check.passed:
            report.passed += 1
        else:
            report.failed += 1
    return EXIT_FAIL if report.failed else EXIT_OK


COMMANDS = {
    "count": cmd_count,
    "bounds": cmd_bounds,
    "optimize": cmd_optimize,
    "scan": cmd_scan,
    "verify": cmd_verify,
}

BOUND_TYPES = ("cliques-no-star", "stars-no-star", "supersat-delta", "theta", "star-star-supersat")


# --- argument parsing -------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARAM)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="supersat", description="Star and clique supersaturation calculator.")
    parser.add_argument("-v", "--verbose", action="store_true", help="show warnings and timing")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="count cliques or stars in an edge-list graph")
    p.add_argument("--graph", metavar="FILE", help="edge-list file")
    p.add_argument("kind", choices=("clique", "star"))
    p.add_argument("size", type=int)

    p = sub.add_parser("bounds", help="evaluate an extremal or supersaturation bound")
    p.add_argument("subtype", choices=BOUND_TYPES)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--s", type=int, help="target clique size (theta)")
    p.add_argument("--kt", type=float, help="known number of t-cliques (theta)")
    p.add_argument("--eps", type=float)

    p = sub.add_parser("optimize", help="Turan vs skew optimum of the density problem")
    p.add_argument("--r", type=int)
    p.add_argument("--t", type=int)

    p = sub.add_parser("scan", help="CSV table of winners over a range of t")
    p.add_argument("--r", type=int)
    p.add_argument("--range", metavar="LO:HI")
    p.add_argument("--out", metavar="FILE", help="output CSV (default stdout)")

    p = sub.add_parser("verify", help="run brute-force verification suites")
    p.add_argument("--suite", default="all", help=f"one of {', '.join([*SUITES, 'all'])}")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: Optional[list[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR,
                        format="%(levelname)s: %(message)s")
    params = {k: v for k, v in vars(args).items() if k not in ("command", "verbose")}
    report = RunReport(args.command, params)
    try:
        code = COMMANDS[args.command](args, report, out)
    except GraphFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: cannot read {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_PARSE
    except (UsageError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    if args.verbose or args.command == "verify":
        print(report.summary(), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
