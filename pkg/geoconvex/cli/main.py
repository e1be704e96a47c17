"""Command-line entry point.

Reports go to stdout (or --out); logs go to stderr through rich. Exit codes:
0 all checks passed, 1 an inequality was violated, 2 usage/parse error,
3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from rich.console import Console
from rich.logging import RichHandler

from .. import __version__
from ..checks.applications import PROPOSITION_31, PROPOSITION_32, PowerFamilySpec, proposition_records
from ..checks.base import SampleGrid
from ..checks.bounds import (
    derivative_preflight,
    geometric_chain,
    proof_chain,
    theorem21_bounds,
    theorem22_bounds,
)
from ..checks.convexity import check_s_convex_second_sense, check_s_geometric, s_profile
from ..config import Tolerance, default_tolerance
from ..domain import Interval
from ..errors import EXIT_NUMERICAL, EXIT_OK, EXIT_VIOLATION, GeoconvexError, SpecError
from ..expr.catalog import catalog
from ..expr.handle import FunctionHandle
from ..expr.nodes import parameters
from ..expr.parser import parse
from ..numerics.kernels import KernelFunction, kernel_g
from ..numerics.means import MeanKind, mean
from ..render.report import (
    build_report,
    catalog_table,
    dumps_csv,
    dumps_json,
    mapping_table,
    records_table,
    write_report,
)
from .suite import run_full_suite
from .sweep import CHECKS, SweepResult, SweepSpec, run_sweep

log = logging.getLogger("geoconvex")


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors get an error record too."""

    def error(self, message):
        raise SpecError(f"{self.prog}: {message}")


def _param(text: str) -> Dict[str, float]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        return {name.strip(): float(value)}
    except ValueError:
        raise argparse.ArgumentTypeError(f"parameter {name.strip()!r} needs a number, got {value!r}") from None


def _floats(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _params(args) -> Dict[str, float]:
    merged: Dict[str, float] = {}
    for item in args.param or []:
        merged.update(item)
    return merged


def _resolve_s(args) -> float:
    """--s, else a bound ``--param s=``, else 1; the two must agree when both are given."""
    bound = _params(args).get("s")
    if args.s is None:
        return 1.0 if bound is None else bound
    if bound is not None and bound != args.s:
        raise SpecError(f"--s {args.s:g} disagrees with --param s={bound:g}")
    return args.s


def _handle(args) -> FunctionHandle:
    params = _params(args)
    # a bare ``s`` in the formula follows --s unless bound explicitly
    if "s" not in params and "s" in parameters(parse(args.f)) and hasattr(args, "s"):
        params["s"] = args.s
    return FunctionHandle.from_source(args.f, params, getattr(args, "df", None))


def _emit(text: str, out: Optional[str] = None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        log.info("wrote %s", out)
    else:
        sys.stdout.write(text)


def _emit_json(data: Dict[str, Any], out: Optional[str] = None) -> None:
    _emit(json.dumps(data, indent=2, sort_keys=True) + "\n", out)


def _emit_result(result: SweepResult, args, spec: Optional[Dict[str, Any]] = None) -> int:
    fmt = getattr(args, "format", "json")
    out = getattr(args, "out", None)
    if fmt == "table":
        Console().print(records_table(result.records))
        for error in result.errors:
            log.error("%s", error["message"])
    elif fmt == "csv":
        if out:
            write_report(out, result.records, {}, "csv")
        else:
            _emit(dumps_csv(result.records))
    else:
        report = build_report(result.records, result.errors, spec, result.wall_time)
        if out:
            write_report(out, result.records, report, "json")
        else:
            _emit(dumps_json(report))
    return result.exit_code


def _tolerance(args) -> Tolerance:
    base = default_tolerance()
    if getattr(args, "tol", None):
        return Tolerance(args.tol, args.tol, base.max_subdivisions)
    return base


# --------------------------------------------------------------------------- #
# Commands
# --------------------------------------------------------------------------- #


def _cmd_bound(args) -> int:
    args.s = _resolve_s(args)
    f = _handle(args)
    interval = Interval(args.a, args.b)
    tol = _tolerance(args)
    if args.preflight:
        derivative_preflight(f, interval, args.s, args.q)
    evaluate = theorem21_bounds if args.theorem == "21" else theorem22_bounds
    report = evaluate(f, interval, args.s, args.q, tol)
    result = SweepResult(report.records(args.slack), [])
    if args.proof_chain:
        chain = proof_chain(f, interval, args.s, args.q, report.theorem, tol)
        for row in chain.rows:
            brk = row.first_break(chain.error, args.slack)
            log.info("%s proof chain S0..S4 = %s%s", row.side, ", ".join(f"{v:.6g}" for v in row.steps),
                     "" if brk is None else f" (order breaks at S{brk} > S{brk + 1})")
    if args.format == "json":
        data = report.to_dict()
        data["f"] = f.describe()
        data["pass"] = report.holds(args.slack)
        _emit_json(data, args.out)
        return result.exit_code
    return _emit_result(result, args)


def _cmd_verify(args) -> int:
    if args.suite == "full":
        result = run_full_suite(_tolerance(args), args.slack if args.slack is not None else 1e-12, args.seed or 0)
        return _emit_result(result, args, {"suite": "full", "seed": args.seed or 0})

    overrides = {
        "function": args.f,
        "derivative": args.df,
        "params": _params(args) or None,
        "a": args.a,
        "b": args.b,
        "s": args.s,
        "q": args.q,
        "checks": args.checks,
        "slack": args.slack,
        "workers": args.workers,
        "seed": args.seed,
    }
    if args.tol:
        overrides["tolerance"] = {"abs": args.tol, "rel": args.tol}
    spec = SweepSpec.from_file(args.spec, overrides) if args.spec else SweepSpec.from_dict({}, overrides)
    result = run_sweep(spec)
    return _emit_result(result, args, spec.to_dict())


def _cmd_means(args) -> int:
    kind = MeanKind.parse(args.kind, args.p)
    value = mean(kind, args.a, args.b)
    _emit_json({"kind": kind.label, "a": args.a, "b": args.b, "value": value})
    return EXIT_OK


def _cmd_chain(args) -> int:
    interval = Interval(args.a, args.b)
    report = geometric_chain(_handle(args), interval, _tolerance(args))
    if args.format == "json":
        ordered = report.is_ordered(args.slack)
        _emit_json({"t1": report.t1, "t2": report.t2, "t3": report.t3, "t4": report.t4, "t5": report.t5,
                    "err_estimate": report.error, "ordered": ordered})
        return EXIT_OK if ordered else EXIT_VIOLATION
    return _emit_result(SweepResult(report.records(interval, args.slack), []), args)


def _cmd_props(args) -> int:
    proposition = PROPOSITION_31 if args.prop == "31" else PROPOSITION_32
    records = []
    for a in args.a:
        for b in args.b:
            if not a < b:
                continue
            for s in args.s:
                for q in args.q:
                    records.extend(proposition_records(proposition, PowerFamilySpec(s, q, a, b), args.slack))
    return _emit_result(SweepResult(records, []), args)


def _cmd_convexity(args) -> int:
    args.s = _resolve_s(args)
    f = _handle(args)
    interval = Interval(args.a, args.b)
    grid = SampleGrid(points=args.points, slack=args.slack)
    if args.profile:
        verdicts = [v for _, v in s_profile(f, interval, grid, args.profile)]
    elif args.definition == "s-convex":
        verdicts = [check_s_convex_second_sense(f, interval, args.s, grid)]
    else:
        verdicts = [check_s_geometric(f, interval, args.s, grid)]
    if args.format == "table":
        for v in verdicts:
            Console().print(mapping_table(v.to_dict(), f"{v.definition} (s={v.s:g})"))
    else:
        _emit_json({"f": f.describe(), "a": interval.a, "b": interval.b, "verdicts": [v.to_dict() for v in verdicts]})
    return EXIT_OK if all(v.holds for v in verdicts) else EXIT_VIOLATION


def _cmd_catalog(args) -> int:
    entries = catalog()
    if args.format == "table":
        Console().print(catalog_table(entries))
    else:
        _emit_json({
            name: {
                "f": e.source,
                "params": dict(sorted(e.params.items())),
                "domain": [e.domain.a, e.domain.b] if e.domain else None,
                "geometrically_convex": e.geometrically_convex,
            }
            for name, e in entries.items()
        })
    return EXIT_OK


def _cmd_kernel(args) -> int:
    kind = KernelFunction(args.kind)
    _emit_json({"kind": kind.value, "u": args.u, "value": kernel_g(kind, args.u)})
    return EXIT_OK


# --------------------------------------------------------------------------- #
# Parser
# --------------------------------------------------------------------------- #


def _function_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--f", required=required, help="function of x, e.g. 'x^s/s'")
    p.add_argument("--df", default=None, help="derivative override (default: symbolic)")
    p.add_argument("--param", type=_param, action="append", metavar="NAME=VALUE", help="bind a parameter")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="geoconvex", description="Hermite-Hadamard type bounds for s-geometrically convex functions")
    parser.add_argument("--version", action="version", version=f"geoconvex {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    parser.add_argument("--tol", type=float, default=None, help="quadrature abs/rel tolerance (overrides $GEOCONVEX_TOL)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("bound", help="both sides of one midpoint/trapezoid bound")
    _function_args(p)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--s", type=float, default=None, help="default: a bound --param s, else 1")
    p.add_argument("--q", type=float, default=1.0)
    p.add_argument("--theorem", choices=("21", "22"), default="21")
    p.add_argument("--preflight", action="store_true", help="sample-check that |f'|^q is s-geometrically convex")
    p.add_argument("--proof-chain", action="store_true", help="log the intermediate proof steps")
    p.add_argument("--slack", type=float, default=1e-12)
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("verify", help="run a sweep spec or the built-in suite")
    p.add_argument("--spec", default=None, help="JSON sweep spec")
    p.add_argument("--suite", choices=("full",), default=None)
    _function_args(p, required=False)
    p.add_argument("--a", type=_floats, default=None, help="comma-separated a grid")
    p.add_argument("--b", type=_floats, default=None, help="comma-separated b grid")
    p.add_argument("--s", type=_floats, default=None, help="comma-separated s grid")
    p.add_argument("--q", type=_floats, default=None, help="comma-separated q grid")
    p.add_argument("--checks", default=None, help=f"comma-separated subset of {','.join(CHECKS)}")
    p.add_argument("--slack", type=float, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("means", help="special means A, G, L, Lp")
    p.add_argument("--kind", required=True, choices=("A", "G", "L", "Lp"))
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.set_defaults(func=_cmd_means)

    p = sub.add_parser("chain", help="the five-term geometric chain")
    _function_args(p)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--slack", type=float, default=1e-12)
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("props", help="special-means propositions for x^s/s")
    p.add_argument("--prop", choices=("31", "32"), required=True)
    p.add_argument("--a", type=_floats, default=[0.25])
    p.add_argument("--b", type=_floats, default=[1.0])
    p.add_argument("--s", type=_floats, default=[0.5])
    p.add_argument("--q", type=_floats, default=[2.0])
    p.add_argument("--slack", type=float, default=1e-12)
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_props)

    p = sub.add_parser("convexity", help="sampled convexity verdicts")
    _function_args(p)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--s", type=float, default=None, help="default: a bound --param s, else 1")
    p.add_argument("--definition", choices=("s-geometric", "s-convex"), default="s-geometric")
    p.add_argument("--profile", type=_floats, default=None, help="comma-separated s grid for an s-profile")
    p.add_argument("--points", type=int, default=17)
    p.add_argument("--slack", type=float, default=1e-12)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=_cmd_convexity)

    p = sub.add_parser("catalog", help="list the built-in test functions")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("kernel", help="evaluate g1 or g2")
    p.add_argument("--kind", choices=("g1", "g2"), required=True)
    p.add_argument("--u", type=float, required=True)
    p.set_defaults(func=_cmd_kernel)
    return parser


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    handler = RichHandler(console=Console(stderr=True), show_path=False, show_time=False)
    root = logging.getLogger("geoconvex")
    root.handlers[:] = [handler]
    root.setLevel(level)
    root.propagate = False


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv`` and run the subcommand; every failure becomes an error record on stdout."""
    try:
        args = build_parser().parse_args(argv)
    except GeoconvexError as exc:
        _emit_json(exc.to_record())
        return exc.exit_code
    setup_logging(args.verbose, args.quiet)
    try:
        return args.func(args)
    except GeoconvexError as exc:
        log.error("%s", exc)
        _emit_json(exc.to_record())
        return exc.exit_code
    except Exception as exc:
        log.exception("unexpected failure in %s", args.command)
        _emit_json({"error": type(exc).__name__, "message": str(exc), "exit_code": EXIT_NUMERICAL})
        return EXIT_NUMERICAL


def main() -> int:
    return run_command(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
