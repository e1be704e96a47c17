"""Special-means inequalities obtained from the bounds with f(x) = x^s / s on (0, 1].

For this family |f'(x)| = x^(s-1), so |f'(a)| >= |f'(b)| >= 1 and the weight
table always selects the BothAboveOne branch. The means-scale inequalities are
s times the function-scale ones, since (f(a) + f(b))/2 = A(a^s, b^s)/s.

Each proposition is evaluated twice: from its closed form in A, G, L and
through the theorem pipeline. ``equivalence_gap`` records any disagreement.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

from ..config import DEFAULT_SLACK
from ..domain import Interval
from ..errors import NumericalError, PreconditionError
from ..numerics.kernels import CaseRegion
from ..numerics.means import arithmetic_mean, geometric_mean, logarithmic_mean
from .base import CheckRecord, margin_passes
from .bounds import THEOREM_21, THEOREM_22, theorem_rhs

PROPOSITION_31 = "prop31"
PROPOSITION_32 = "prop32"


@dataclass(frozen=True)
class PowerFamilySpec:
    s: float
    q: float
    a: float
    b: float

    def __post_init__(self):
        if not 0.0 < self.s < 1.0:
            raise PreconditionError(f"the power family needs 0 < s < 1, got s={self.s!r}")
        if not (self.q >= 1.0 and math.isfinite(self.q)):
            raise PreconditionError(f"the power family needs q >= 1, got q={self.q!r}")
        if not 0.0 < self.a < self.b <= 1.0:
            raise PreconditionError(f"the power family needs 0 < a < b <= 1, got a={self.a!r}, b={self.b!r}")

    @property
    def interval(self) -> Interval:
        return Interval(self.a, self.b)

    @property
    def slopes(self) -> Tuple[float, float]:
        """|f'(a)|, |f'(b)| for f(x) = x^s / s."""
        return self.a ** (self.s - 1.0), self.b ** (self.s - 1.0)

    @property
    def exponent(self) -> float:
        """(s^2 - s + 1) q."""
        return (self.s * self.s - self.s + 1.0) * self.q


@dataclass(frozen=True)
class PropositionReport:
    proposition: str
    side: str
    lhs: float
    rhs_closed_form: float
    rhs_via_theorem: float
    case: CaseRegion

    @property
    def margin(self) -> float:
        return self.rhs_closed_form - self.lhs

    @property
    def equivalence_gap(self) -> float:
        return abs(self.rhs_closed_form - self.rhs_via_theorem)

    def record(self, spec: PowerFamilySpec, slack: float = DEFAULT_SLACK) -> CheckRecord:
        return CheckRecord(
            self.proposition, self.side, self.lhs, self.rhs_closed_form, self.margin,
            margin_passes(self.margin, 0.0, slack),
            a=spec.a, b=spec.b, s=spec.s, q=spec.q, case=self.case.value,
            extra={"rhs_via_theorem": self.rhs_via_theorem, "equivalence_gap": self.equivalence_gap},
        )


def _left_sides(spec: PowerFamilySpec) -> Tuple[float, float]:
    a_s, b_s = spec.a ** spec.s, spec.b ** spec.s
    l_s = logarithmic_mean(a_s, b_s)
    trapezoid = abs(arithmetic_mean(a_s, b_s) - l_s)
    midpoint = abs(geometric_mean(spec.a, spec.b) ** spec.s - l_s)
    return trapezoid, midpoint


def _via_theorem(theorem: str, spec: PowerFamilySpec) -> Tuple[float, float, CaseRegion]:
    da, db = spec.slopes
    trap, mid, region, _ = theorem_rhs(theorem, spec.interval, da, db, spec.s, spec.q)
    if region is not CaseRegion.BOTH_ABOVE_ONE:
        raise NumericalError(f"power family selected {region.value} instead of BothAboveOne "
                             f"(|f'(a)|={da!r}, |f'(b)|={db!r})")
    return spec.s * trap, spec.s * mid, region


def _root(value: float, q: float) -> float:
    # the braces are differences of means and may round a hair below zero
    return max(value, 0.0) ** (1.0 / q)


def proposition31(spec: PowerFamilySpec) -> Tuple[PropositionReport, PropositionReport]:
    """Power-mean bounds for |A(a^s, b^s) - L(a^s, b^s)| and |G^s(a, b) - L(a^s, b^s)|."""
    s, q, a, b = spec.s, spec.q, spec.a, spec.b
    k = spec.exponent
    d2 = (s - 1.0) ** 2
    g = geometric_mean(a, b)
    l_ab = logarithmic_mean(a, b)
    trap_lhs, mid_lhs = _left_sides(spec)

    l_full = logarithmic_mean(a ** k, b ** k)
    trap_closed = (s / (2.0 * g ** (2.0 * d2)) * ((b - a) / (2.0 * l_ab)) ** (1.0 - 1.0 / q)
                   * (1.0 / k) ** (1.0 / q)
                   * (_root(b ** k - l_full, q) + _root(l_full - a ** k, q)))

    half = 0.5 * k
    l_half = logarithmic_mean(a ** half, b ** half)
    mid_closed = (s / (2.0 * g ** d2) * ((b - a) / (4.0 * l_ab)) ** (1.0 - 1.0 / q)
                  * (1.0 / k) ** (1.0 / q)
                  * (geometric_mean(a ** s, b ** -d2) * _root(b ** half - l_half, q)
                     + geometric_mean(b ** s, a ** -d2) * _root(l_half - a ** half, q)))

    trap_thm, mid_thm, region = _via_theorem(THEOREM_21, spec)
    return (
        PropositionReport(PROPOSITION_31, "trapezoid", trap_lhs, trap_closed, trap_thm, region),
        PropositionReport(PROPOSITION_31, "midpoint", mid_lhs, mid_closed, mid_thm, region),
    )


def proposition32(spec: PowerFamilySpec) -> Tuple[PropositionReport, PropositionReport]:
    """Hoelder bounds for the same two differences; needs q > 1."""
    if not spec.q > 1.0:
        raise PreconditionError(f"the Hoelder form needs q > 1, got q={spec.q!r}")
    s, q, a, b = spec.s, spec.q, spec.a, spec.b
    k = spec.exponent
    d2 = (s - 1.0) ** 2
    g = geometric_mean(a, b)
    l_ab = logarithmic_mean(a, b)
    c = ((q - 1.0) / (2.0 * q - 1.0)) ** (1.0 - 1.0 / q)
    trap_lhs, mid_lhs = _left_sides(spec)

    trap_closed = (s * (b - a) / (l_ab * g ** (2.0 * d2)) * c
                   * logarithmic_mean(a ** k, b ** k) ** (1.0 / q))
    mid_closed = (s * (b - a) / (2.0 * l_ab * g ** d2) * c
                  * logarithmic_mean(a ** (0.5 * k), b ** (0.5 * k)) ** (1.0 / q)
                  * arithmetic_mean(geometric_mean(a ** -d2, b ** s), geometric_mean(a ** s, b ** -d2)))

    trap_thm, mid_thm, region = _via_theorem(THEOREM_22, spec)
    return (
        PropositionReport(PROPOSITION_32, "trapezoid", trap_lhs, trap_closed, trap_thm, region),
        PropositionReport(PROPOSITION_32, "midpoint", mid_lhs, mid_closed, mid_thm, region),
    )


def proposition_records(proposition: str, spec: PowerFamilySpec, slack: float = DEFAULT_SLACK) -> List[CheckRecord]:
    evaluate = proposition31 if proposition == PROPOSITION_31 else proposition32
    return [report.record(spec, slack) for report in evaluate(spec)]
