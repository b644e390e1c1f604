"""Command-line front door.

Subcommands: solve1d, schedule, solve2d, solve3d, solvedd, line-m1, line-m2,
line-slope, audit, oracle, compare. Exit codes: 0 success, 1 domain error,
2 correctness failure in an audit, 3 I/O error, 64 usage error. Rational
values serialize as exact "p/q" strings, never decimals.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import analysis, oracle, strategies
from .core import (
    CriticalPoint,
    GeneralLine,
    LinePartition,
    PointAnswer,
    Region,
    StrategyReport,
    SumLine,
    ThresholdPartition,
)
from .environment import AuditReport, Environment, audit_exhaustive
from .errors import AmbiguousResultError, DomainError, EggDropError

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_CORRECTNESS = 2
EXIT_IO = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def rational_str(value) -> str:
    return str(Fraction(value))


def _point_json(point) -> list:
    return [rational_str(c) for c in point]


def _truth_json(truth):
    if isinstance(truth, CriticalPoint):
        return {"type": "point", "coords": list(truth.coords)}
    if isinstance(truth, SumLine):
        return {"type": "sum-line", "v": rational_str(truth.v)}
    if isinstance(truth, GeneralLine):
        return {"type": "general-line",
                "coefficients": [truth.a, truth.b, truth.v]}
    return None


def _answer_json(answer, region: Region):
    if isinstance(answer, PointAnswer):
        return {"type": "point", "coords": list(answer.coords)}
    if isinstance(answer, ThresholdPartition):
        return {
            "type": "sum-partition",
            "threshold": answer.threshold,
            "breaking": sorted(map(list, answer.breaking_set(region))),
        }
    if isinstance(answer, LinePartition):
        return {
            "type": "line-partition",
            "breaking": sorted(map(list, answer.breaking)),
            "line": ([answer.line.a, answer.line.b, answer.line.v]
                     if answer.line is not None else None),
        }
    return None


def report_json(report: StrategyReport) -> dict:
    return {
        "kind": report.kind,
        "region": list(report.region.dims),
        "k": report.k,
        "trace": [
            {"point": _point_json(point), "outcome": outcome.value}
            for point, outcome in report.trace.entries
        ],
        "answer": _answer_json(report.answer, report.region),
        "drops": report.drops,
        "bound": report.bound_value,
        "boundMet": report.bound_met,
    }


def audit_json(report: AuditReport) -> dict:
    return {
        "kind": report.problem_kind,
        "region": list(report.region.dims),
        "k": report.k,
        "strategy": report.strategy,
        "mode": report.mode,
        "truthCount": report.truth_count,
        "maxDrops": report.max_drops,
        "worstTruth": _truth_json(report.worst_truth),
        "bound": report.bound_value,
        "boundMet": report.bound_compliant,
        "recursiveBound": report.recursive_bound,
        "exceedances": [
            {"truth": _truth_json(truth), "drops": drops}
            for truth, drops in report.exceedances
        ],
        "correctnessFailures": [
            {"truth": _truth_json(f.truth), "kind": f.kind, "detail": f.detail}
            for f in report.correctness_failures
        ],
        "probeSumCollisions": [rational_str(v) for v, _ in report.probe_sum_collisions],
    }


def dump_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise _IoFailure(str(exc)) from exc


class _IoFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# Formatting
# ---------------------------------------------------------------------------

def _report_csv(report: StrategyReport) -> str:
    d = report.region.d
    header = ",".join(f"x{i+1}" for i in range(d)) + ",outcome"
    lines = [header]
    for point, outcome in report.trace.entries:
        lines.append(",".join(rational_str(c) for c in point) + f",{outcome.value}")
    return "\n".join(lines) + "\n"


def _audit_csv(report: AuditReport) -> str:
    header = ("kind,region,k,strategy,truths,maxDrops,bound,boundMet,"
              "recursiveBound,failures")
    row = ",".join(str(v) for v in (
        report.problem_kind, "x".join(map(str, report.region.dims)), report.k,
        report.strategy, report.truth_count, report.max_drops,
        report.bound_value, report.bound_compliant, report.recursive_bound,
        len(report.correctness_failures)))
    return header + "\n" + row + "\n"


def _report_table(report: StrategyReport) -> str:
    lines = [
        f"kind:    {report.kind}",
        f"region:  {'x'.join(map(str, report.region.dims))}",
        f"eggs:    {report.k}",
        f"drops:   {report.drops}",
        f"bound:   {report.bound_value} ({'met' if report.bound_met else 'EXCEEDED'})",
        f"answer:  {_describe_answer(report)}",
        "trace:",
    ]
    for point, outcome in report.trace.entries:
        coords = ", ".join(rational_str(c) for c in point)
        lines.append(f"  ({coords}) -> {outcome.value}")
    return "\n".join(lines) + "\n"


def _describe_answer(report: StrategyReport) -> str:
    answer = report.answer
    if isinstance(answer, PointAnswer):
        return f"critical point {answer.coords}"
    if isinstance(answer, ThresholdPartition):
        return f"breaking iff coordinate sum >= {answer.threshold}"
    if isinstance(answer, LinePartition):
        line = answer.line
        described = (f"line {line.a}x+{line.b}y={line.v}"
                     if line is not None else "line not unique")
        return f"{len(answer.breaking)} breaking points; {described}"
    return repr(answer)


def _audit_table(report: AuditReport) -> str:
    lines = [
        f"kind:            {report.problem_kind}",
        f"region:          {'x'.join(map(str, report.region.dims))}",
        f"eggs:            {report.k}",
        f"strategy:        {report.strategy}",
        f"truths:          {report.truth_count}",
        f"max drops:       {report.max_drops}",
        f"worst truth:     {report.worst_truth}",
        f"bound:           {report.bound_value}"
        f" ({'met' if report.bound_compliant else 'EXCEEDED'})",
        f"recursive bound: {report.recursive_bound}",
        f"failures:        {len(report.correctness_failures)}",
    ]
    for failure in report.correctness_failures[:20]:
        lines.append(f"  {failure.kind}: {failure.truth} ({failure.detail})")
    if report.exceedances:
        lines.append(f"exceedances:     {len(report.exceedances)}")
        for truth, drops in report.exceedances[:20]:
            lines.append(f"  {truth} -> {drops}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def _parse_coords(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise DomainError(f"bad coordinate list {text!r}") from exc


def _region_from_args(args) -> Region:
    if getattr(args, "dims", None):
        dims = _parse_coords(args.dims)
    else:
        dims = []
        for name in ("floors", "l", "m", "n"):
            value = getattr(args, name, None)
            if value is not None:
                dims.append(value)
        dims = tuple(dims)
    ordered = tuple(sorted(dims, reverse=True))
    if ordered != dims:
        print("warning: axis lengths re-sorted to non-increasing order",
              file=sys.stderr)
    return Region(ordered)


def _solve_command(args, kind: str) -> int:
    region = _region_from_args(args)
    k = args.eggs
    mode = args.mode
    if kind == "point":
        truth = CriticalPoint(_parse_coords(args.truth))
        runner = strategies.get_runner("point", region, k,
                                       getattr(args, "strategy", "default"), mode)
    elif kind in ("line-m1", "line-m2"):
        truth = SumLine(Fraction(args.truth))
        runner = strategies.get_runner(kind, region, k, "default", mode)
    else:
        a, b, v = _parse_coords(args.truth)
        truth = GeneralLine(a, b, v)
        runner = strategies.get_runner("line-slope", region, k, "default", mode)
    env = Environment(region, truth, k)
    report = runner(env)
    if args.format == "json":
        _emit(dump_json(report_json(report)), args.output)
    elif args.format == "csv":
        _emit(_report_csv(report), args.output)
    else:
        _emit(_report_table(report), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_schedule(args) -> int:
    floors = strategies.schedule_triangular(args.floors)
    _emit(",".join(map(str, floors)) + "\n", args.output)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    value = oracle.dp_min_drops(args.floors, args.eggs)
    _emit(f"{value}\n", args.output)
    return EXIT_OK


def _cmd_audit(args) -> int:
    region = _region_from_args(args)
    report = audit_exhaustive(
        args.kind if not args.kind.startswith("point") else "point",
        region, args.eggs, strategy=args.strategy, mode=args.mode,
        parallelism=args.parallel, force=args.force)
    if args.format == "json":
        _emit(dump_json(audit_json(report)), args.output)
    elif args.format == "csv":
        _emit(_audit_csv(report), args.output)
    else:
        _emit(_audit_table(report), args.output)
    if report.correctness_failures:
        return EXIT_CORRECTNESS
    return EXIT_OK


def _cmd_compare(args) -> int:
    if args.default_sweep:
        import os
        directory = args.output or "."
        os.makedirs(directory, exist_ok=True)
        for m, n in analysis.DEFAULT_SWEEP:
            path = os.path.join(directory, f"comparison_{m}x{n}.csv")
            text = analysis.emit_comparison_csv(m, n, args.k_min, args.k_max)
            with open(path, "w", encoding="utf-8") as handle:
                handle.write(text)
            print(path)
        return EXIT_OK
    text = analysis.emit_comparison_csv(args.m, args.n, args.k_min, args.k_max)
    _emit(text, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser assembly
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="eggdrop",
                     description="Worst-case egg-drop search strategies and audits")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, modes=True):
        p.add_argument("--format", choices=("table", "csv", "json"),
                       default="table")
        p.add_argument("--output", default=None, help="write to a file")
        if modes:
            p.add_argument("--mode", choices=("lattice", "abstract"),
                           default=None)

    p = sub.add_parser("solve1d", help="locate a 1D critical point")
    p.add_argument("--floors", type=int, required=True)
    p.add_argument("--eggs", type=int, required=True)
    p.add_argument("--truth", required=True, help="hidden critical floor")
    p.add_argument("--strategy", choices=("jump", "triangular"), default="jump")
    common(p)
    p.set_defaults(func=lambda a: _solve_command(a, "point"))

    p = sub.add_parser("schedule", help="two-egg triangular schedule")
    p.add_argument("--floors", type=int, required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_schedule)

    p = sub.add_parser("solve2d", help="locate a 2D critical point")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eggs", type=int, required=True)
    p.add_argument("--truth", required=True, help="m,n")
    common(p)
    p.set_defaults(func=lambda a: _solve_command(a, "point"))

    p = sub.add_parser("solve3d", help="locate a 3D critical point")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eggs", type=int, required=True)
    p.add_argument("--truth", required=True, help="l,m,n")
    common(p)
    p.set_defaults(func=lambda a: _solve_command(a, "point"))

    p = sub.add_parser("solvedd", help="locate a critical point in d dimensions")
    p.add_argument("--dims", required=True, help="comma-separated axis lengths")
    p.add_argument("--eggs", type=int, required=True)
    p.add_argument("--truth", required=True)
    common(p)
    p.set_defaults(func=lambda a: _solve_command(a, "point"))

    p = sub.add_parser("line-m1", help="classify x+y=V by Method One")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eggs", type=int, required=True)
    p.add_argument("--truth", required=True, help="level V, e.g. 7/2")
    common(p)
    p.set_defaults(func=lambda a: _solve_command(a, "line-m1"))

    p = sub.add_parser("line-m2", help="classify x+y=V by Method Two")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eggs", type=int, required=True)
    p.add_argument("--truth", required=True, help="level V, e.g. 7/2")
    common(p)
    p.set_defaults(func=lambda a: _solve_command(a, "line-m2"))

    p = sub.add_parser("line-slope", help="classify an unknown-slope line")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eggs", type=int, required=True)
    p.add_argument("--truth", required=True, help="a,b,v coefficients")
    common(p)
    p.set_defaults(func=lambda a: _solve_command(a, "line-slope"))

    p = sub.add_parser("audit", help="exhaustive worst-case audit")
    p.add_argument("--kind", required=True,
                   choices=("point-1d", "point-2d", "point-3d", "point-dd",
                            "line-m1", "line-m2", "line-slope"))
    p.add_argument("--dims", default=None)
    p.add_argument("--floors", type=int, default=None)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--eggs", type=int, required=True)
    p.add_argument("--strategy", default="default")
    p.add_argument("--force", action="store_true",
                   help="run past the truth-space cap")
    p.add_argument("--parallel", type=int, default=1)
    common(p)
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("oracle", help="exact DP minimum drops")
    p.add_argument("--floors", type=int, required=True)
    p.add_argument("--eggs", type=int, required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("compare", help="Method One vs Two comparison CSV")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=20)
    p.add_argument("--default-sweep", action="store_true",
                   help="emit CSVs for the built-in (M,N) sweep")
    p.add_argument("--output", default=None)
    p.set_defaults(func=_cmd_compare)

    return parser


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except _IoFailure as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except AmbiguousResultError as exc:
        print(f"ambiguous result: {exc} "
              f"({len(exc.candidates)} consistent lines)", file=sys.stderr)
        return EXIT_CORRECTNESS
    except (DomainError, EggDropError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
