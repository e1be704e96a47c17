"""The built-in ``verify --suite full`` run.

Each section returns a SweepResult; ``run_full_suite`` concatenates them in a
fixed order, so the report depends only on the seed and the tolerance.
"""
from __future__ import annotations

import logging
import math
import time
from typing import Callable, List, Tuple

import numpy as np

from ..checks.applications import PowerFamilySpec, proposition31, proposition32
from ..checks.base import CheckRecord
from ..checks.bounds import (
    geometric_chain,
    lemma_identity_residuals,
    q1_reduction_check,
    s1_reduction_check,
    theorem21_bounds,
)
from ..config import DEFAULT_SLACK, Tolerance, default_tolerance
from ..domain import Interval
from ..errors import GeoconvexError
from ..expr.catalog import LEMMA_CATALOG, POWER_EXPONENTS, get
from ..expr.handle import FunctionHandle
from ..numerics.kernels import (
    CaseRegion,
    KernelFunction,
    exponent_inequality_violations,
    kernel_g,
    region_weights,
)
from ..numerics.quadrature import integrate
from .sweep import SweepResult, SweepSpec, merge_results, run_sweep

log = logging.getLogger(__name__)

KERNEL_TOLERANCE = 1e-9
REDUCTION_TOLERANCE = 1e-12
CHAIN_TOLERANCE = 1e-10
LEMMA_A = (0.1, 0.4, 0.8, 1.5, 2.5)
LEMMA_B = (0.5, 1.0, 2.0, 3.0, 4.0)
FAMILY_POINTS = (0.1, 0.25, 0.5, 1.0)
FAMILY_S = (0.1, 0.3, 0.5, 0.7, 0.9)
THM21_Q = (1.0, 2.0, 5.0)
THM22_Q = (1.5, 2.0, 4.0)
CHAIN_INTERVALS = ((0.5, 2.0), (1.0, 2.0), (0.2, 3.0))
EXPONENT_SAMPLES = 100_000
CONTINUITY_POINTS = 100


def _residual_record(check: str, side: str, residual: float, tolerance: float, **params) -> CheckRecord:
    return CheckRecord(check, side, residual, 0.0, -residual, residual <= tolerance,
                       extra={"residual": residual, "tolerance": tolerance}, **params)


def _collect(name: str, fn: Callable[[], List[CheckRecord]]) -> SweepResult:
    started = time.perf_counter()
    try:
        records = fn()
        errors = []
    except GeoconvexError as exc:
        log.warning("suite section %s failed: %s", name, exc)
        records, errors = [], [dict(exc.to_record(), check=name)]
    return SweepResult(records, errors, time.perf_counter() - started)


def kernel_identity_records(tol: Tolerance) -> List[CheckRecord]:
    """g1, g2 against direct quadrature of int t u^t dt and int u^t dt."""
    us = list(np.geomspace(1e-3, 1e3, 200)) + [1.0, 1.0 + 1e-12, 1.0 - 1e-12, 1.0 + 1e-5, 1.0 - 1e-5]
    # absolute 1e-9 on kernel values up to g2(1e3) ~ 145
    oracle = tol.tightened(1000.0)
    out = []
    for u in us:
        ln_u = math.log(u)
        for kind, weight in ((KernelFunction.G1, lambda t: t), (KernelFunction.G2, lambda t: np.ones_like(t))):
            exact = integrate(lambda t, w=weight: w(t) * np.exp(t * ln_u), 0.0, 1.0, oracle).require_converged("kernel")
            residual = abs(kernel_g(kind, u) - exact.value)
            out.append(_residual_record("kernel", kind.value, residual, KERNEL_TOLERANCE, a=float(u)))
    return out


def lemma_records(tol: Tolerance) -> List[CheckRecord]:
    pairs = [(a, b) for a in LEMMA_A for b in LEMMA_B if a < b]
    out = []
    for name in LEMMA_CATALOG:
        entry = get(name)
        for a, b in pairs:
            interval = Interval(a, b)
            records = lemma_identity_residuals(entry.handle(), interval, tol).records(interval)
            out.extend(_tag(r, name) for r in records)
    return out


def _tag(record: CheckRecord, function: str) -> CheckRecord:
    extra = dict(record.extra)
    extra["function"] = function
    return CheckRecord(record.check, record.side, record.lhs, record.rhs, record.margin, record.passed,
                       record.a, record.b, record.s, record.q, record.case, record.err_estimate, extra)


def family_bounds(tol: Tolerance, slack: float) -> SweepResult:
    thm21 = run_sweep(SweepSpec("x^s/s", a=FAMILY_POINTS, b=FAMILY_POINTS, s=FAMILY_S, q=THM21_Q,
                                checks=("thm21",), tolerance=tol, slack=slack))
    thm22 = run_sweep(SweepSpec("x^s/s", a=FAMILY_POINTS, b=FAMILY_POINTS, s=FAMILY_S, q=THM22_Q,
                                checks=("thm22",), tolerance=tol, slack=slack))
    return merge_results([thm21, thm22])


def worked_point_records(tol: Tolerance) -> List[CheckRecord]:
    """f(x) = x on [1, e] at s = q = 1: lhs (3 - e)/2, rhs (e - 1)/2."""
    report = theorem21_bounds(FunctionHandle.from_source("x"), Interval(1.0, math.e), 1.0, 1.0, tol)
    lhs_residual = abs(report.trapezoid_lhs - (3.0 - math.e) / 2.0)
    rhs_residual = abs(report.trapezoid_rhs - (math.e - 1.0) / 2.0)
    return [
        _residual_record("worked-point", "trapezoid lhs", lhs_residual, KERNEL_TOLERANCE, a=1.0, b=math.e, s=1.0, q=1.0),
        _residual_record("worked-point", "trapezoid rhs", rhs_residual, KERNEL_TOLERANCE, a=1.0, b=math.e, s=1.0, q=1.0),
    ]


def chain_records(tol: Tolerance, slack: float) -> List[CheckRecord]:
    out = []
    for name in ("x^-1", "x^0.5", "x", "x^2", "x^3", "exp", "const"):
        f = get(name).handle()
        for a, b in CHAIN_INTERVALS:
            interval = Interval(a, b)
            report = geometric_chain(f, interval, tol)
            out.extend(_tag(r, name) for r in report.records(interval, slack))
            if name in POWER_EXPONENTS:
                out.append(_tag(_residual_record("chain", "t1=t2", abs(report.t1 - report.t2), CHAIN_TOLERANCE,
                                                 a=a, b=b), name))
                out.append(_tag(_residual_record("chain", "t3=t4", abs(report.t3 - report.t4), CHAIN_TOLERANCE,
                                                 a=a, b=b), name))
    return out


def reduction_records(tol: Tolerance) -> List[CheckRecord]:
    out = []
    for name in LEMMA_CATALOG:
        f = get(name).handle()
        for a, b in ((0.5, 2.0), (1.0, 2.0)):
            interval = Interval(a, b)
            for q in (1.0, 2.0, 3.0):
                for residual in s1_reduction_check(f, interval, q, tol):
                    for side, value in (("trapezoid", residual.trapezoid), ("midpoint", residual.midpoint)):
                        out.append(_tag(_residual_record(f"s1-{residual.theorem}", side, value,
                                                         REDUCTION_TOLERANCE, a=a, b=b, s=1.0, q=q), name))
            for s in (0.25, 0.5, 1.0):
                residual = q1_reduction_check(f, interval, s, tol)
                for side, value in (("trapezoid", residual.trapezoid), ("midpoint", residual.midpoint)):
                    out.append(_tag(_residual_record("q1-thm21", side, value, REDUCTION_TOLERANCE,
                                                     a=a, b=b, s=s, q=1.0), name))
    return out


def proposition_suite_records(slack: float) -> List[CheckRecord]:
    out = []
    pairs = [(a, b) for a in FAMILY_POINTS for b in FAMILY_POINTS if a < b]
    for s in (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9):
        for a, b in pairs:
            for q in THM21_Q:
                spec = PowerFamilySpec(s, q, a, b)
                out.extend(r.record(spec, slack) for r in proposition31(spec))
            for q in THM22_Q:
                spec = PowerFamilySpec(s, q, a, b)
                out.extend(r.record(spec, slack) for r in proposition32(spec))
    return out


def exponent_inequality_records(seed: int) -> List[CheckRecord]:
    rng = np.random.default_rng(seed)
    n = EXPONENT_SAMPLES
    # (0, 1] draws: 1 - uniform[0, 1)
    mu = 1.0 - rng.random(n)
    eta = 1.0 + 9.0 * rng.random(n)
    alpha = 1.0 - rng.random(n)
    s = 1.0 - rng.random(n)
    violations = exponent_inequality_violations(mu, eta, alpha, s)
    return [CheckRecord("exponent-inequality", "mu/eta", float(violations), 0.0, -float(violations),
                        violations == 0, extra={"samples": n, "seed": seed})]


def case_continuity_records() -> List[CheckRecord]:
    """Adjacent weight formulas agree along |f'(a)| = 1 and |f'(b)| = 1."""
    a, b, s = 0.5, 2.0, 0.4
    others = np.geomspace(0.05, 20.0, CONTINUITY_POINTS)
    out = []
    worst = {"|f'(a)|=1": 0.0, "|f'(b)|=1": 0.0}
    passed = {"|f'(a)|=1": True, "|f'(b)|=1": True}
    for other in others:
        other = float(other)
        low = CaseRegion.BOTH_BELOW_ONE if other <= 1.0 else CaseRegion.A_BELOW_B_ABOVE
        high = CaseRegion.B_BELOW_A_ABOVE if other <= 1.0 else CaseRegion.BOTH_ABOVE_ONE
        line_a = (region_weights(low, a, b, 1.0, other, s), region_weights(high, a, b, 1.0, other, s))
        low = CaseRegion.BOTH_BELOW_ONE if other <= 1.0 else CaseRegion.B_BELOW_A_ABOVE
        high = CaseRegion.A_BELOW_B_ABOVE if other <= 1.0 else CaseRegion.BOTH_ABOVE_ONE
        line_b = (region_weights(low, a, b, other, 1.0, s), region_weights(high, a, b, other, 1.0, s))
        for line, (w1, w2) in (("|f'(a)|=1", line_a), ("|f'(b)|=1", line_b)):
            for x, y in ((w1.wa, w2.wa), (w1.wb, w2.wb)):
                ulps = abs(x - y) / np.spacing(max(abs(x), abs(y)))
                worst[line] = max(worst[line], float(ulps))
                passed[line] = passed[line] and bool(ulps <= 4.0)
    for line in worst:
        out.append(CheckRecord("case-continuity", line, worst[line], 4.0, 4.0 - worst[line], passed[line],
                               s=s, a=a, b=b, extra={"points": CONTINUITY_POINTS, "unit": "ulp"}))
    return out


def run_full_suite(tol: Tolerance = None, slack: float = DEFAULT_SLACK, seed: int = 0) -> SweepResult:
    tol = tol or default_tolerance()
    sections: List[Tuple[str, Callable[[], SweepResult]]] = [
        ("kernel", lambda: _collect("kernel", lambda: kernel_identity_records(tol))),
        ("lemma", lambda: _collect("lemma", lambda: lemma_records(tol))),
        ("family", lambda: family_bounds(tol, slack)),
        ("worked-point", lambda: _collect("worked-point", lambda: worked_point_records(tol))),
        ("chain", lambda: _collect("chain", lambda: chain_records(tol, slack))),
        ("reduction", lambda: _collect("reduction", lambda: reduction_records(tol))),
        ("props", lambda: _collect("props", lambda: proposition_suite_records(slack))),
        ("exponent", lambda: _collect("exponent", lambda: exponent_inequality_records(seed))),
        ("case-continuity", lambda: _collect("case-continuity", case_continuity_records)),
    ]
    results = []
    for name, section in sections:
        result = section()
        log.info("suite %-16s %5d records, %d failed, %d errors", name, len(result.records),
                 sum(1 for r in result.records if not r.passed), len(result.errors))
        results.append(result)
    return merge_results(results)
