"""Both sides of the midpoint- and trapezoid-type inequalities for functions
whose |f'|^q is s-geometrically convex.

Notation used throughout: l = ln(b/a), WLI(f) = (1/l) int_a^b f(x)/x dx, and
da, db = |f'(a)|, |f'(b)|. The left-hand sides are

  trapezoid: |(f(a) + f(b))/2 - WLI(f)|        midpoint: |f(sqrt(ab)) - WLI(f)|

Every integral is computed on [0, 1] after the substitution x = a^(1-t) b^t.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..config import DEFAULT_SLACK, Tolerance, default_tolerance
from ..domain import Interval
from ..errors import PreconditionError
from ..expr.handle import FunctionHandle
from ..numerics.kernels import (
    CaseRegion,
    KernelFunction,
    ThetaSet,
    case_weights,
    h_dispatch,
    kernel_g,
    region_weights,
    theta_set,
)
from ..numerics.means import logarithmic_mean
from ..numerics.quadrature import geometric_average, integrate
from .base import CheckRecord, ConvexityVerdict, SampleGrid, margin_passes, require_q, require_s
from .convexity import check_s_geometric

log = logging.getLogger(__name__)

IDENTITY_TOLERANCE = 1e-8
THEOREM_21 = "thm21"
THEOREM_22 = "thm22"


# --------------------------------------------------------------------------- #
# Reports
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class ClassicalReport:
    midpoint: float
    mean: float
    endpoint_average: float
    error: float

    def records(self, interval: Interval, slack: float = DEFAULT_SLACK) -> List[CheckRecord]:
        out = []
        for side, lhs, rhs in (("midpoint", self.midpoint, self.mean), ("trapezoid", self.mean, self.endpoint_average)):
            margin = rhs - lhs
            out.append(CheckRecord("hh", side, lhs, rhs, margin, margin_passes(margin, self.error, slack),
                                   a=interval.a, b=interval.b, err_estimate=self.error))
        return out


@dataclass(frozen=True)
class ChainReport:
    t1: float
    t2: float
    t3: float
    t4: float
    t5: float
    error: float

    @property
    def terms(self) -> Tuple[float, float, float, float, float]:
        return self.t1, self.t2, self.t3, self.t4, self.t5

    def is_ordered(self, slack: float = DEFAULT_SLACK) -> bool:
        terms = self.terms
        return all(margin_passes(hi - lo, self.error, slack) for lo, hi in zip(terms, terms[1:]))

    def records(self, interval: Interval, slack: float = DEFAULT_SLACK) -> List[CheckRecord]:
        terms = self.terms
        out = []
        for i, (lo, hi) in enumerate(zip(terms, terms[1:]), start=1):
            margin = hi - lo
            out.append(CheckRecord("chain", f"t{i}<=t{i + 1}", lo, hi, margin, margin_passes(margin, self.error, slack),
                                   a=interval.a, b=interval.b, err_estimate=self.error))
        return out


@dataclass(frozen=True)
class IdentityResidual:
    midpoint: float
    trapezoid: float
    error: float
    midpoint_sides: Tuple[float, float] = (math.nan, math.nan)
    trapezoid_sides: Tuple[float, float] = (math.nan, math.nan)

    def records(self, interval: Interval, tolerance: float = IDENTITY_TOLERANCE) -> List[CheckRecord]:
        out = []
        for side, residual, (lhs, rhs) in (("midpoint", self.midpoint, self.midpoint_sides),
                                           ("trapezoid", self.trapezoid, self.trapezoid_sides)):
            out.append(CheckRecord("lemma", side, lhs, rhs, -residual, residual <= tolerance + self.error,
                                   a=interval.a, b=interval.b, err_estimate=self.error,
                                   extra={"residual": residual, "tolerance": tolerance}))
        return out


@dataclass(frozen=True)
class BoundReport:
    theorem: str
    a: float
    b: float
    s: float
    q: float
    trapezoid_lhs: float
    trapezoid_rhs: float
    midpoint_lhs: float
    midpoint_rhs: float
    case: CaseRegion
    theta: Optional[ThetaSet]
    error: float

    @property
    def trapezoid_margin(self) -> float:
        return self.trapezoid_rhs - self.trapezoid_lhs

    @property
    def midpoint_margin(self) -> float:
        return self.midpoint_rhs - self.midpoint_lhs

    def holds(self, slack: float = DEFAULT_SLACK) -> bool:
        return (margin_passes(self.trapezoid_margin, self.error, slack)
                and margin_passes(self.midpoint_margin, self.error, slack))

    def records(self, slack: float = DEFAULT_SLACK) -> List[CheckRecord]:
        out = []
        for side, lhs, rhs in (("trapezoid", self.trapezoid_lhs, self.trapezoid_rhs),
                               ("midpoint", self.midpoint_lhs, self.midpoint_rhs)):
            margin = rhs - lhs
            out.append(CheckRecord(self.theorem, side, lhs, rhs, margin, margin_passes(margin, self.error, slack),
                                   a=self.a, b=self.b, s=self.s, q=self.q, case=self.case.value,
                                   err_estimate=self.error))
        return out

    def to_dict(self) -> Dict[str, object]:
        return {
            "theorem": self.theorem,
            "a": self.a,
            "b": self.b,
            "s": self.s,
            "q": self.q,
            "trapezoid": {"lhs": self.trapezoid_lhs, "rhs": self.trapezoid_rhs, "margin": self.trapezoid_margin},
            "midpoint": {"lhs": self.midpoint_lhs, "rhs": self.midpoint_rhs, "margin": self.midpoint_margin},
            "case": self.case.value,
            "theta": self.theta.to_dict() if self.theta else None,
            "err_estimate": self.error,
        }


@dataclass(frozen=True)
class ReductionResidual:
    theorem: str
    trapezoid: float
    midpoint: float

    def worst(self) -> float:
        return max(self.trapezoid, self.midpoint)


@dataclass(frozen=True)
class ProofChainRow:
    side: str
    steps: Tuple[float, float, float, float, float]

    def first_break(self, error: float, slack: float = DEFAULT_SLACK) -> Optional[int]:
        """Index i of the first step with S_i > S_(i+1) beyond tolerance, or None."""
        for i, (lo, hi) in enumerate(zip(self.steps, self.steps[1:])):
            if not margin_passes(hi - lo, error, slack):
                return i
        return None


@dataclass(frozen=True)
class ProofChainReport:
    theorem: str
    rows: Tuple[ProofChainRow, ProofChainRow]
    error: float

    def is_ordered(self, slack: float = DEFAULT_SLACK) -> bool:
        return all(row.first_break(self.error, slack) is None for row in self.rows)

    def row(self, side: str) -> ProofChainRow:
        for row in self.rows:
            if row.side == side:
                return row
        raise KeyError(side)


# --------------------------------------------------------------------------- #
# Integrals
# --------------------------------------------------------------------------- #


def _tol(tol: Optional[Tolerance]) -> Tolerance:
    return tol or default_tolerance()


def _integrate01(fn: Callable[[np.ndarray], np.ndarray], tol: Tolerance, what: str) -> Tuple[float, float]:
    result = integrate(fn, 0.0, 1.0, tol).require_converged(what)
    return result.value, result.error


def weighted_log_integral(f: Callable, interval: Interval, tol: Optional[Tolerance] = None) -> Tuple[float, float]:
    """(1/ln(b/a)) int_a^b f(x)/x dx and its error estimate."""
    interval.require_positive()
    result = geometric_average(f, interval.a, interval.b, _tol(tol)).require_converged("weighted log-integral")
    return result.value, result.error


def hh_classical(f: Callable, interval: Interval, tol: Optional[Tolerance] = None) -> ClassicalReport:
    """f((a+b)/2), (1/(b-a)) int_a^b f, (f(a)+f(b))/2."""
    a, b = interval.a, interval.b
    result = integrate(f, a, b, _tol(tol)).require_converged("interval average")
    width = b - a
    return ClassicalReport(
        midpoint=float(f(0.5 * (a + b))),
        mean=result.value / width,
        endpoint_average=0.5 * (float(f(a)) + float(f(b))),
        error=result.error / width,
    )


def geometric_chain(f: Callable, interval: Interval, tol: Optional[Tolerance] = None) -> ChainReport:
    """f(sqrt(ab)) <= WLI(sqrt(f(x) f(ab/x))) <= WLI(f) <= L(f(a), f(b)) <= (f(a)+f(b))/2."""
    interval.require_positive()
    a, b = interval.a, interval.b
    fa, fb = float(f(a)), float(f(b))
    if not (fa > 0.0 and fb > 0.0):
        raise PreconditionError(f"the geometric chain needs f > 0, got f(a)={fa!r}, f(b)={fb!r}")
    tol = _tol(tol)
    ab = a * b

    def reflected(x):
        return np.sqrt(f(x) * f(ab / x))

    t2, e2 = weighted_log_integral(reflected, interval, tol)
    t3, e3 = weighted_log_integral(f, interval, tol)
    return ChainReport(
        t1=float(f(interval.geometric_midpoint)),
        t2=t2,
        t3=t3,
        t4=logarithmic_mean(fa, fb),
        t5=0.5 * (fa + fb),
        error=e2 + e3,
    )


def lemma_identity_residuals(f: FunctionHandle, interval: Interval,
                             tol: Optional[Tolerance] = None) -> IdentityResidual:
    """Residuals of the two integral identities expressing the midpoint and
    trapezoid differences through f' along geometric paths."""
    interval.require_positive()
    tol = _tol(tol)
    a, b = interval.a, interval.b
    ell = interval.log_ratio
    wli, wli_err = weighted_log_integral(f, interval, tol)

    def near_a(h):
        return lambda t: t * np.exp(h * ell * t) * f.prime(a * np.exp(h * ell * t))

    def near_b(h):
        return lambda t: t * np.exp(-h * ell * t) * f.prime(b * np.exp(-h * ell * t))

    ma, ema = _integrate01(near_a(0.5), tol, "midpoint identity (a side)")
    mb, emb = _integrate01(near_b(0.5), tol, "midpoint identity (b side)")
    ta, eta = _integrate01(near_a(1.0), tol, "trapezoid identity (a side)")
    tb, etb = _integrate01(near_b(1.0), tol, "trapezoid identity (b side)")

    mid_lhs = float(f(interval.geometric_midpoint)) - wli
    mid_rhs = 0.25 * ell * (a * ma - b * mb)
    trap_lhs = 0.5 * (float(f(a)) + float(f(b))) - wli
    trap_rhs = 0.5 * ell * (a * ta - b * tb)
    error = wli_err + 0.25 * ell * (a * ema + b * emb) + 0.5 * ell * (a * eta + b * etb)
    return IdentityResidual(
        midpoint=abs(mid_lhs - mid_rhs),
        trapezoid=abs(trap_lhs - trap_rhs),
        error=error,
        midpoint_sides=(mid_lhs, mid_rhs),
        trapezoid_sides=(trap_lhs, trap_rhs),
    )


# --------------------------------------------------------------------------- #
# Theorem-level bounds
# --------------------------------------------------------------------------- #


def endpoint_slopes(f: FunctionHandle, interval: Interval) -> Tuple[float, float]:
    """|f'(a)|, |f'(b)|."""
    return float(f.abs_prime(interval.a)), float(f.abs_prime(interval.b))


def _left_sides(f: Callable, interval: Interval, tol: Tolerance) -> Tuple[float, float, float]:
    wli, err = weighted_log_integral(f, interval, tol)
    trap = abs(0.5 * (float(f(interval.a)) + float(f(interval.b))) - wli)
    mid = abs(float(f(interval.geometric_midpoint)) - wli)
    return trap, mid, err


def _holder_factor(q: float) -> float:
    # ((q-1)/(2q-1))^(1-1/q), in log space
    return math.exp((1.0 - 1.0 / q) * (math.log(q - 1.0) - math.log(2.0 * q - 1.0)))


def _power_mean_factor(q: float, extra: float) -> float:
    # (1/2)^(extra - 1/q), in log space
    return math.exp(-(extra - 1.0 / q) * math.log(2.0))


def theorem_rhs(theorem: str, interval: Interval, da: float, db: float, s: float,
                q: float) -> Tuple[float, float, CaseRegion, Optional[ThetaSet]]:
    """Trapezoid and midpoint right-hand sides from the endpoint slopes alone.

    When f' vanishes at both endpoints the bound degenerates to 0 and no theta
    set exists.
    """
    interval.require_positive()
    a, b = interval.a, interval.b
    ell = interval.log_ratio
    if da == 0.0 and db == 0.0:
        return 0.0, 0.0, CaseRegion.BOTH_BELOW_ONE, None
    if da == 0.0 or db == 0.0:
        raise PreconditionError(f"|f'| must be positive at both endpoints, got |f'(a)|={da!r}, |f'(b)|={db!r}")

    theta = theta_set(a, b, da, db, s, q)
    region, weights = case_weights(a, b, da, db, s)
    if theorem == THEOREM_21:
        kind = KernelFunction.G1
        trap_factor = ell * _power_mean_factor(q, 2.0)
        mid_factor = ell * _power_mean_factor(q, 3.0)
    elif theorem == THEOREM_22:
        kind = KernelFunction.G2
        c = _holder_factor(q)
        trap_factor = 0.5 * ell * c
        mid_factor = 0.25 * ell * c
    else:
        raise PreconditionError(f"unknown theorem {theorem!r}")
    trap = trap_factor * h_dispatch(kind, weights, theta.theta1, theta.theta2, q)
    mid = mid_factor * h_dispatch(kind, weights, theta.theta3, theta.theta4, q)
    return trap, mid, region, theta


def _bounds(theorem: str, f: FunctionHandle, interval: Interval, s: float, q: float,
            tol: Optional[Tolerance]) -> BoundReport:
    interval.require_positive()
    tol = _tol(tol)
    da, db = endpoint_slopes(f, interval)
    trap_rhs, mid_rhs, region, theta = theorem_rhs(theorem, interval, da, db, s, q)
    trap_lhs, mid_lhs, err = _left_sides(f, interval, tol)
    return BoundReport(theorem, interval.a, interval.b, s, q, trap_lhs, trap_rhs, mid_lhs, mid_rhs, region, theta, err)


def theorem21_bounds(f: FunctionHandle, interval: Interval, s: float, q: float,
                     tol: Optional[Tolerance] = None) -> BoundReport:
    """Power-mean bounds, q >= 1: kernel g1 with (1/2)^(2-1/q) and (1/2)^(3-1/q)."""
    return _bounds(THEOREM_21, f, interval, require_s(s), require_q(q), tol)


def theorem22_bounds(f: FunctionHandle, interval: Interval, s: float, q: float,
                     tol: Optional[Tolerance] = None) -> BoundReport:
    """Hoelder bounds, q > 1: kernel g2 with ((q-1)/(2q-1))^(1-1/q)."""
    return _bounds(THEOREM_22, f, interval, require_s(s), require_q(q, strict=True), tol)


def geometric_convexity_rhs(theorem: str, interval: Interval, da: float, db: float,
                            q: float) -> Tuple[float, float]:
    """(trapezoid, midpoint) right-hand sides for plain geometric convexity of |f'|^q,
    written with alpha(u) = (b da_b / (a da_a))^u and gamma(u) = 1/alpha(u)."""
    a, b = interval.a, interval.b
    ell = interval.log_ratio
    ratio = (b * db) / (a * da)

    def alpha(u):
        return ratio ** u

    def gamma(u):
        return (1.0 / ratio) ** u

    if theorem == THEOREM_21:
        kind, factor = KernelFunction.G1, 0.5 ** (1.0 - 1.0 / q)
    else:
        kind, factor = KernelFunction.G2, ((q - 1.0) / (2.0 * q - 1.0)) ** (1.0 - 1.0 / q)

    def braces(u):
        return (a * da * kernel_g(kind, alpha(u)) ** (1.0 / q)
                + b * db * kernel_g(kind, gamma(u)) ** (1.0 / q))

    return 0.5 * ell * factor * braces(q), 0.25 * ell * factor * braces(0.5 * q)


def s1_reduction_check(f: FunctionHandle, interval: Interval, q: float,
                       tol: Optional[Tolerance] = None) -> Tuple[ReductionResidual, ...]:
    """Compare the s = 1 bounds against the geometric-convexity formulas.

    The Hoelder bound (thm22) is included only for q > 1.
    """
    q = require_q(q)
    da, db = endpoint_slopes(f, interval)
    out = []
    theorems = (THEOREM_21, THEOREM_22) if q > 1.0 else (THEOREM_21,)
    for theorem in theorems:
        report = _bounds(theorem, f, interval, 1.0, q, tol)
        trap, mid = geometric_convexity_rhs(theorem, interval, da, db, q)
        out.append(ReductionResidual(theorem, abs(report.trapezoid_rhs - trap), abs(report.midpoint_rhs - mid)))
    return tuple(out)


def q1_reduction_check(f: FunctionHandle, interval: Interval, s: float,
                       tol: Optional[Tolerance] = None) -> ReductionResidual:
    """Compare the power-mean bound (thm21) at q = 1 with the first-power form
    (l/2)(wa g1(theta1) + wb g1(theta2)) and (l/4)(wa g1(theta3) + wb g1(theta4))."""
    s = require_s(s)
    a, b = interval.a, interval.b
    ell = interval.log_ratio
    da, db = endpoint_slopes(f, interval)
    report = _bounds(THEOREM_21, f, interval, s, 1.0, tol)
    if da == 0.0 and db == 0.0:
        return ReductionResidual(THEOREM_21, abs(report.trapezoid_rhs), abs(report.midpoint_rhs))
    region = report.case
    w = region_weights(region, a, b, da, db, s)
    theta1 = (b * db ** s) / (a * da ** s)
    theta3 = math.sqrt(theta1)
    g1 = KernelFunction.G1
    trap = 0.5 * ell * (w.wa * kernel_g(g1, theta1) + w.wb * kernel_g(g1, 1.0 / theta1))
    mid = 0.25 * ell * (w.wa * kernel_g(g1, theta3) + w.wb * kernel_g(g1, 1.0 / theta3))
    return ReductionResidual(THEOREM_21, abs(report.trapezoid_rhs - trap), abs(report.midpoint_rhs - mid))


# --------------------------------------------------------------------------- #
# Proof chain
# --------------------------------------------------------------------------- #


def _chain_row(f: FunctionHandle, interval: Interval, s: float, q: float, theorem: str, half: float,
               lhs: float, rhs: float, tol: Tolerance) -> Tuple[ProofChainRow, float]:
    """Steps S0..S4 for one row; ``half`` is 1 for the trapezoid row and 1/2 for the midpoint row."""
    a, b = interval.a, interval.b
    ell = interval.log_ratio
    da, db = endpoint_slopes(f, interval)
    front = 0.5 * half * ell
    if theorem == THEOREM_21:
        factor = _power_mean_factor(q, 1.0)

        def weight(t):
            return t
    else:
        factor = _holder_factor(q)

        def weight(t):
            return np.ones_like(t)

    def path_a(t):
        return a * np.exp(half * ell * t)

    def path_b(t):
        return b * np.exp(-half * ell * t)

    errors = 0.0

    def quad(fn, what):
        nonlocal errors
        value, err = _integrate01(fn, tol, what)
        errors += err
        return value

    # S1: triangle inequality
    s1 = front * (
        a * quad(lambda t: t * np.exp(half * ell * t) * f.abs_prime(path_a(t)), "triangle step (a side)")
        + b * quad(lambda t: t * np.exp(-half * ell * t) * f.abs_prime(path_b(t)), "triangle step (b side)")
    )
    # S2: power-mean / Hoelder split, |f'|^q still on the path
    s2 = front * factor * (
        a * quad(lambda t: weight(t) * np.exp(q * half * ell * t) * f.abs_prime(path_a(t)) ** q,
                 "split step (a side)") ** (1.0 / q)
        + b * quad(lambda t: weight(t) * np.exp(-q * half * ell * t) * f.abs_prime(path_b(t)) ** q,
                   "split step (b side)") ** (1.0 / q)
    )
    # S3: |f'|^q replaced by its s-geometric majorant in the endpoint slopes
    s3 = front * factor * (
        a * quad(lambda t: weight(t) * np.exp(q * half * ell * t)
                 * da ** (q * (1.0 - half * t) ** s) * db ** (q * (half * t) ** s),
                 "convexity step (a side)") ** (1.0 / q)
        + b * quad(lambda t: weight(t) * np.exp(-q * half * ell * t)
                   * db ** (q * (1.0 - half * t) ** s) * da ** (q * (half * t) ** s),
                   "convexity step (b side)") ** (1.0 / q)
    )
    side = "trapezoid" if half == 1.0 else "midpoint"
    return ProofChainRow(side, (lhs, s1, s2, s3, rhs)), errors


def proof_chain(f: FunctionHandle, interval: Interval, s: float, q: float, theorem: str = THEOREM_21,
                tol: Optional[Tolerance] = None) -> ProofChainReport:
    """Intermediate quantities S0 <= S1 <= S2 <= S3 <= S4 of the bound derivations.

    S2 <= S3 is the step that relies on |f'|^q being s-geometrically convex, so a
    false precondition shows up there first.
    """
    s = require_s(s)
    q = require_q(q, strict=theorem == THEOREM_22)
    tol = _tol(tol)
    report = _bounds(theorem, f, interval, s, q, tol)
    trap, e_trap = _chain_row(f, interval, s, q, theorem, 1.0, report.trapezoid_lhs, report.trapezoid_rhs, tol)
    mid, e_mid = _chain_row(f, interval, s, q, theorem, 0.5, report.midpoint_lhs, report.midpoint_rhs, tol)
    return ProofChainReport(theorem, (trap, mid), report.error + e_trap + e_mid)


def derivative_preflight(f: FunctionHandle, interval: Interval, s: float, q: float,
                         grid: Optional[SampleGrid] = None) -> ConvexityVerdict:
    """Sampled check that |f'|^q is s-geometrically convex on the interval."""
    verdict = check_s_geometric(lambda x: f.abs_prime(x) ** q, interval, s, grid)
    if not verdict.holds:
        log.warning("|f'|^%g is not %g-geometrically convex on [%g, %g] (margin %.3g at %s); "
                    "the bound may not apply", q, s, interval.a, interval.b, verdict.worst_margin, verdict.witness)
    return verdict

