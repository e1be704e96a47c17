"""Sweep specs and the grid runner.

A sweep is the Cartesian product of an interval grid, an s-grid and a q-grid,
evaluated for each requested check. Each check only varies over the axes it
uses (the lemma identities ignore q, for example), so no record is repeated.
Points are numbered in a fixed order and results are emitted in that order
whatever the worker count.
"""
from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from ..checks.applications import PROPOSITION_31, PowerFamilySpec, proposition_records
from ..checks.base import CheckRecord, SampleGrid
from ..checks.bounds import (
    derivative_preflight,
    geometric_chain,
    hh_classical,
    lemma_identity_residuals,
    theorem21_bounds,
    theorem22_bounds,
)
from ..config import DEFAULT_SLACK, Tolerance, default_tolerance, load_json
from ..domain import Interval
from ..errors import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, GeoconvexError, SpecError
from ..expr.handle import FunctionHandle
from ..expr.nodes import parameters
from ..expr.parser import parse

log = logging.getLogger(__name__)

CHECKS = ("lemma", "thm21", "thm22", "chain", "hh", "prop31", "prop32", "convexity")
# axes each check varies over, besides the interval
_AXES = {
    "lemma": (),
    "chain": (),
    "hh": (),
    "thm21": ("s", "q"),
    "thm22": ("s", "q"),
    "prop31": ("s", "q"),
    "prop32": ("s", "q"),
    "convexity": ("s", "q"),
}
SPEC_KEYS = ("function", "derivative", "params", "a", "b", "s", "q", "checks", "tolerance", "slack", "workers", "seed")


def _floats(name: str, values: Any) -> Tuple[float, ...]:
    if isinstance(values, (int, float)):
        values = [values]
    try:
        out = tuple(float(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"{name} must be a list of numbers: {exc}") from exc
    if not out:
        raise SpecError(f"{name} grid is empty")
    if not all(math.isfinite(v) for v in out):
        raise SpecError(f"{name} grid has non-finite entries")
    return out


@dataclass(frozen=True)
class SweepSpec:
    function: str = "x^s/s"
    params: Dict[str, float] = field(default_factory=dict)
    a: Tuple[float, ...] = (0.25,)
    b: Tuple[float, ...] = (1.0,)
    s: Tuple[float, ...] = (1.0,)
    q: Tuple[float, ...] = (1.0,)
    checks: Tuple[str, ...] = ()
    tolerance: Tolerance = field(default_factory=default_tolerance)
    slack: float = DEFAULT_SLACK
    workers: int = 1
    seed: int = 0
    derivative: Optional[str] = None

    def __post_init__(self):
        for name in ("a", "b", "s", "q"):
            object.__setattr__(self, name, _floats(name, getattr(self, name)))
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown:
            raise SpecError(f"unknown checks: {', '.join(unknown)}; known: {', '.join(CHECKS)}")
        # canonical order, no duplicates
        object.__setattr__(self, "checks", tuple(c for c in CHECKS if c in self.checks))
        if any(not 0.0 < s <= 1.0 for s in self.s):
            raise SpecError(f"s-grid entries must lie in (0, 1], got {self.s}")
        if any(q < 1.0 for q in self.q):
            raise SpecError(f"q-grid entries must be >= 1, got {self.q}")
        if not self.intervals():
            raise SpecError("no (a, b) pair in the grid satisfies 0 < a < b")
        if not (self.slack >= 0.0 and math.isfinite(self.slack)):
            raise SpecError(f"slack must be a non-negative number, got {self.slack!r}")
        if int(self.workers) < 1:
            raise SpecError(f"workers must be >= 1, got {self.workers!r}")
        # syntax errors surface here, before any point runs
        parse(self.function)
        if self.derivative:
            parse(self.derivative)

    def intervals(self) -> List[Tuple[float, float]]:
        """(a, b) pairs of the grid product with 0 < a < b, in grid order."""
        return [(a, b) for a in self.a for b in self.b if 0.0 < a < b]

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], overrides: Optional[Mapping[str, Any]] = None) -> "SweepSpec":
        merged = dict(data)
        merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
        unknown = set(merged) - set(SPEC_KEYS)
        if unknown:
            raise SpecError(f"unknown spec keys: {', '.join(sorted(unknown))}")
        kwargs = dict(merged)
        if "tolerance" in kwargs and not isinstance(kwargs["tolerance"], Tolerance):
            if not isinstance(kwargs["tolerance"], Mapping):
                raise SpecError("tolerance must be an object with abs/rel/max_subdivisions")
            kwargs["tolerance"] = Tolerance.from_dict(kwargs["tolerance"])
        if isinstance(kwargs.get("checks"), str):
            kwargs["checks"] = [c.strip() for c in kwargs["checks"].split(",") if c.strip()]
        if "checks" in kwargs:
            kwargs["checks"] = tuple(kwargs["checks"])
        if "params" in kwargs:
            try:
                kwargs["params"] = {str(k): float(v) for k, v in dict(kwargs["params"]).items()}
            except (TypeError, ValueError) as exc:
                raise SpecError(f"params must map names to numbers: {exc}") from exc
        for key in ("slack",):
            if key in kwargs:
                kwargs[key] = float(kwargs[key])
        for key in ("workers", "seed"):
            if key in kwargs:
                kwargs[key] = int(kwargs[key])
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str, overrides: Optional[Mapping[str, Any]] = None) -> "SweepSpec":
        return cls.from_dict(load_json(path), overrides)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["tolerance"] = self.tolerance.to_dict()
        data["checks"] = list(self.checks)
        for name in ("a", "b", "s", "q"):
            data[name] = list(data[name])
        data["params"] = dict(sorted(self.params.items()))
        return data


@dataclass(frozen=True)
class SweepPoint:
    index: int
    check: str
    a: float
    b: float
    s: float = math.nan
    q: float = math.nan


@dataclass
class SweepResult:
    records: List[CheckRecord]
    errors: List[Dict[str, Any]]
    wall_time: float = 0.0

    @property
    def exit_code(self) -> int:
        codes = {e["exit_code"] for e in self.errors}
        if EXIT_NUMERICAL in codes:
            return EXIT_NUMERICAL
        if codes:
            return EXIT_USAGE
        if any(not r.passed for r in self.records):
            return EXIT_VIOLATION
        return EXIT_OK


def _binds_s(spec: SweepSpec) -> bool:
    """True when the s-grid has to be fed into the function's own parameter ``s``."""
    if "s" in spec.params:
        return False
    return "s" in parameters(parse(spec.function))


def sweep_points(spec: SweepSpec) -> List[SweepPoint]:
    points: List[SweepPoint] = []
    binds_s = _binds_s(spec)
    skipped_q1 = skipped_family = False
    for check in spec.checks:
        axes = _AXES[check]
        s_values = spec.s if ("s" in axes or binds_s) else (math.nan,)
        q_values = spec.q if "q" in axes else (math.nan,)
        for a, b in spec.intervals():
            for s in s_values:
                for q in q_values:
                    if check == "thm22" and q == 1.0:
                        skipped_q1 = True
                        continue
                    if check in ("prop31", "prop32") and not (s < 1.0 and b <= 1.0 and (q > 1.0 or check == "prop31")):
                        skipped_family = True
                        continue
                    points.append(SweepPoint(len(points), check, a, b, s, q))
    if skipped_q1:
        log.warning("thm22 needs q > 1; q = 1 grid entries skipped for it")
    if skipped_family:
        log.warning("power-family propositions need s < 1 and b <= 1 (and q > 1 for prop32); other points skipped")
    return points


def _handle(spec: SweepSpec, s: float) -> FunctionHandle:
    params = dict(spec.params)
    if not math.isnan(s) and "s" not in params:
        params["s"] = s
    return FunctionHandle.from_source(spec.function, params, spec.derivative)


def run_point(spec: SweepSpec, point: SweepPoint) -> Tuple[List[CheckRecord], Optional[Dict[str, Any]]]:
    """Evaluate one grid point; failures come back as an error record instead of raising."""
    try:
        return _run_point(spec, point), None
    except GeoconvexError as exc:
        record = exc.to_record()
        record.update({"index": point.index, "check": point.check, "a": point.a, "b": point.b,
                       "s": point.s, "q": point.q})
        return [], record


def _run_point(spec: SweepSpec, point: SweepPoint) -> List[CheckRecord]:
    check, tol, slack = point.check, spec.tolerance, spec.slack
    interval = Interval(point.a, point.b)
    if check in (PROPOSITION_31, "prop32"):
        return proposition_records(check, PowerFamilySpec(point.s, point.q, point.a, point.b), slack)

    f = _handle(spec, point.s)
    if check == "lemma":
        records = lemma_identity_residuals(f, interval, tol).records(interval)
    elif check == "chain":
        records = geometric_chain(f, interval, tol).records(interval, slack)
    elif check == "hh":
        records = hh_classical(f, interval, tol).records(interval, slack)
    elif check == "thm21":
        records = theorem21_bounds(f, interval, point.s, point.q, tol).records(slack)
    elif check == "thm22":
        records = theorem22_bounds(f, interval, point.s, point.q, tol).records(slack)
    else:
        verdict = derivative_preflight(f, interval, point.s, point.q, SampleGrid(slack=slack))
        margin = verdict.worst_margin
        records = [CheckRecord("convexity", "s-geometric |f'|^q", 0.0, margin, margin, verdict.holds,
                               extra={"witness": list(verdict.witness) if verdict.witness else None})]
    if not math.isnan(point.s) and check in ("lemma", "chain", "hh", "convexity"):
        records = [_with_params(r, point) for r in records]
    return records


def _with_params(record: CheckRecord, point: SweepPoint) -> CheckRecord:
    values = asdict(record)
    values.update(a=point.a, b=point.b, s=point.s, q=record.q if math.isnan(point.q) else point.q)
    return CheckRecord(**values)


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Run every grid point; results are ordered by point index regardless of ``spec.workers``."""
    started = time.perf_counter()
    points = sweep_points(spec)
    log.info("sweep: %d points over %d checks, %d worker(s)", len(points), len(spec.checks), spec.workers)
    work = partial(run_point, spec)
    if spec.workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            outcomes = list(pool.map(work, points, chunksize=max(1, len(points) // (4 * spec.workers))))
    else:
        outcomes = [work(p) for p in points]

    records: List[CheckRecord] = []
    errors: List[Dict[str, Any]] = []
    for point, (point_records, error) in zip(points, outcomes):
        log.debug("point %d (%s a=%g b=%g s=%g q=%g): %d records%s", point.index, point.check, point.a, point.b,
                  point.s, point.q, len(point_records), " [error]" if error else "")
        records.extend(point_records)
        if error:
            log.warning("%s at a=%g b=%g s=%g q=%g failed: %s", point.check, point.a, point.b, point.s, point.q,
                        error["message"])
            errors.append(error)
    return SweepResult(records, errors, time.perf_counter() - started)


def merge_results(results: Sequence[SweepResult]) -> SweepResult:
    records: List[CheckRecord] = []
    errors: List[Dict[str, Any]] = []
    for result in results:
        records.extend(result.records)
        errors.extend(result.errors)
    return SweepResult(records, errors, sum(r.wall_time for r in results))
