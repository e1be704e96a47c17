"""Bound kernels g1/g2, the theta-set, the four-case weight table and the
exponent inequality used in the proofs of the midpoint/trapezoid bounds.

g1(u) = int_0^1 t u^t dt = (u ln u - u + 1) / (ln u)^2,   g1(1) = 1/2
g2(u) = int_0^1   u^t dt = (u - 1) / ln u,                g2(1) = 1
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..errors import KernelDomainError, PreconditionError, ThetaRangeError

log = logging.getLogger(__name__)

SERIES_RADIUS = 1e-4
# ln(max double) ~ 709.78; theta beyond this overflows.
_LOG_MAX = math.log(1.7976931348623157e308)


class KernelFunction(enum.Enum):
    G1 = "g1"
    G2 = "g2"


class CaseRegion(enum.Enum):
    BOTH_BELOW_ONE = "BothBelowOne"
    BOTH_ABOVE_ONE = "BothAboveOne"
    A_BELOW_B_ABOVE = "ABelowBAbove"
    B_BELOW_A_ABOVE = "BBelowAAbove"


@dataclass(frozen=True)
class ThetaSet:
    theta1: float
    theta2: float
    theta3: float
    theta4: float

    @property
    def pairs(self) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        """(theta1, theta2) for the trapezoid row, (theta3, theta4) for the midpoint row."""
        return (self.theta1, self.theta2), (self.theta3, self.theta4)

    def to_dict(self):
        return {"theta1": self.theta1, "theta2": self.theta2, "theta3": self.theta3, "theta4": self.theta4}


@dataclass(frozen=True)
class WeightPair:
    wa: float
    wb: float


@dataclass(frozen=True)
class TwoSidedBase:
    mu: float
    eta: float
    alpha: float
    s: float

    def __post_init__(self):
        if not 0.0 < self.mu <= 1.0:
            raise PreconditionError(f"mu must lie in (0, 1], got {self.mu!r}")
        if not 1.0 <= self.eta < math.inf:
            raise PreconditionError(f"eta must lie in [1, inf), got {self.eta!r}")
        if not 0.0 < self.alpha <= 1.0:
            raise PreconditionError(f"alpha must lie in (0, 1], got {self.alpha!r}")
        if not 0.0 < self.s <= 1.0:
            raise PreconditionError(f"s must lie in (0, 1], got {self.s!r}")


def _require_s(s: float) -> None:
    if not 0.0 < s <= 1.0:
        raise PreconditionError(f"s must lie in (0, 1], got {s!r}")


def _require_q(q: float) -> None:
    if not (q >= 1.0 and math.isfinite(q)):
        raise PreconditionError(f"q must be a finite number >= 1, got {q!r}")


def kernel_g(kind: KernelFunction, u: float) -> float:
    u = float(u)
    if not math.isfinite(u) or u <= 0.0:
        raise KernelDomainError(f"kernel argument must be positive and finite, got {u!r}")
    w = u - 1.0
    if abs(w) < SERIES_RADIUS:
        if kind is KernelFunction.G1:
            return 0.5 + w * (1.0 / 3.0 + w * (-1.0 / 24.0 + w * (7.0 / 360.0)))
        return 1.0 + w * (0.5 + w * (-1.0 / 12.0 + w * (1.0 / 24.0)))
    ln_u = math.log(u)
    if kind is KernelFunction.G1:
        # w = u - 1 is exact near u = 1
        return (u * ln_u - w) / (ln_u * ln_u)
    return w / ln_u


def theta_from_log_products(log_pa: float, log_pb: float, q: float) -> ThetaSet:
    """Theta set from ln(a |f'(a)|^s) and ln(b |f'(b)|^s).

    Swapping the two arguments swaps theta1 with theta2 and theta3 with theta4 exactly.
    """
    log_theta1 = q * (log_pb - log_pa)
    if not abs(log_theta1) < _LOG_MAX:
        raise ThetaRangeError(f"theta out of range: ln(theta1) = {log_theta1:.6g}")
    if abs(log_theta1) > 0.9 * _LOG_MAX:
        log.warning("theta close to overflow: ln(theta1) = %.6g", log_theta1)
    return ThetaSet(
        theta1=math.exp(log_theta1),
        theta2=math.exp(-log_theta1),
        theta3=math.exp(0.5 * log_theta1),
        theta4=math.exp(-0.5 * log_theta1),
    )


def theta_set(a: float, b: float, da: float, db: float, s: float, q: float) -> ThetaSet:
    """theta1 = (b db^s / (a da^s))^q, theta2 = 1/theta1, theta3/theta4 their square roots.

    Computed as exponentials of one log-space quantity so that large q fails loudly
    with ThetaRangeError instead of overflowing to inf.
    """
    if not 0.0 < a < b:
        raise PreconditionError(f"theta set needs 0 < a < b, got a={a!r}, b={b!r}")
    if not (da > 0.0 and db > 0.0):
        raise PreconditionError(f"derivative magnitudes must be positive, got |f'(a)|={da!r}, |f'(b)|={db!r}")
    _require_s(s)
    _require_q(q)
    return theta_from_log_products(math.log(a) + s * math.log(da), math.log(b) + s * math.log(db), q)


def case_region(da: float, db: float) -> CaseRegion:
    # Ties at |f'| == 1 go to the lower-numbered region; the adjacent formulas agree there.
    if da <= 1.0 and db <= 1.0:
        return CaseRegion.BOTH_BELOW_ONE
    if da >= 1.0 and db >= 1.0:
        return CaseRegion.BOTH_ABOVE_ONE
    if da <= 1.0 <= db:
        return CaseRegion.A_BELOW_B_ABOVE
    return CaseRegion.B_BELOW_A_ABOVE


def region_weights(region: CaseRegion, a: float, b: float, da: float, db: float, s: float) -> WeightPair:
    if region is CaseRegion.BOTH_BELOW_ONE:
        return WeightPair(a * da ** s, b * db ** s)
    if region is CaseRegion.BOTH_ABOVE_ONE:
        return WeightPair(a * da * db ** (1.0 - s), b * db * da ** (1.0 - s))
    if region is CaseRegion.A_BELOW_B_ABOVE:
        return WeightPair(a * da ** s * db ** (1.0 - s), b * db)
    return WeightPair(a * da, b * db ** s * da ** (1.0 - s))


def case_weights(a: float, b: float, da: float, db: float, s: float) -> Tuple[CaseRegion, WeightPair]:
    if not 0.0 < a < b:
        raise PreconditionError(f"case weights need 0 < a < b, got a={a!r}, b={b!r}")
    if not (da > 0.0 and db > 0.0):
        raise PreconditionError(f"derivative magnitudes must be positive, got |f'(a)|={da!r}, |f'(b)|={db!r}")
    _require_s(s)
    region = case_region(da, db)
    return region, region_weights(region, a, b, da, db, s)


def h_dispatch(kind: KernelFunction, weights: WeightPair, theta_i: float, theta_j: float, q: float) -> float:
    """wa * g(theta_i)^(1/q) + wb * g(theta_j)^(1/q)."""
    if not (theta_i > 0.0 and theta_j > 0.0):
        raise PreconditionError(f"theta values must be positive, got {theta_i!r}, {theta_j!r}")
    _require_q(q)
    inv_q = 1.0 / q
    return weights.wa * kernel_g(kind, theta_i) ** inv_q + weights.wb * kernel_g(kind, theta_j) ** inv_q


def check_exponent_inequality(base: TwoSidedBase) -> Tuple[bool, bool]:
    """mu^(alpha^s) <= mu^(alpha s) and eta^(alpha^s) <= eta^(alpha s + 1 - s)."""
    mu, eta, alpha, s = base.mu, base.eta, base.alpha, base.s
    alpha_s = alpha ** s
    mu_lhs, mu_rhs = mu ** alpha_s, mu ** (alpha * s)
    eta_lhs, eta_rhs = eta ** alpha_s, eta ** (alpha * s + 1.0 - s)
    mu_slack = 1e-15 * max(abs(mu_lhs), abs(mu_rhs))
    eta_slack = 1e-15 * max(abs(eta_lhs), abs(eta_rhs))
    return mu_lhs <= mu_rhs + mu_slack, eta_lhs <= eta_rhs + eta_slack


def exponent_inequality_violations(mu: np.ndarray, eta: np.ndarray, alpha: np.ndarray, s: np.ndarray) -> int:
    """Vectorized form of ``check_exponent_inequality``: number of samples where
    either inequality fails beyond a 1e-15 relative slack."""
    alpha_s = alpha ** s
    mu_lhs, mu_rhs = mu ** alpha_s, mu ** (alpha * s)
    eta_lhs, eta_rhs = eta ** alpha_s, eta ** (alpha * s + 1.0 - s)
    mu_bad = mu_lhs > mu_rhs + 1e-15 * np.maximum(np.abs(mu_lhs), np.abs(mu_rhs))
    eta_bad = eta_lhs > eta_rhs + 1e-15 * np.maximum(np.abs(eta_lhs), np.abs(eta_rhs))
    return int(np.count_nonzero(mu_bad | eta_bad))
