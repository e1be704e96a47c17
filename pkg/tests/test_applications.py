import math

import pytest

from geoconvex.checks.applications import (
    PROPOSITION_31,
    PROPOSITION_32,
    PowerFamilySpec,
    proposition31,
    proposition32,
    proposition_records,
)
from geoconvex.checks.bounds import theorem21_bounds
from geoconvex.domain import Interval
from geoconvex.errors import PreconditionError
from geoconvex.expr.handle import FunctionHandle
from geoconvex.numerics.kernels import CaseRegion

POINTS = (0.1, 0.25, 0.5, 1.0)
PAIRS = [(a, b) for a in POINTS for b in POINTS if a < b]
S_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


class TestPowerFamilySpec:
    def test_slopes_and_exponent(self):
        spec = PowerFamilySpec(0.5, 2.0, 0.25, 1.0)
        assert spec.slopes == pytest.approx((2.0, 1.0))
        assert spec.exponent == pytest.approx(1.5)
        assert spec.interval.a == 0.25

    @pytest.mark.parametrize("s, q, a, b", [
        (1.0, 2.0, 0.25, 1.0),
        (0.0, 2.0, 0.25, 1.0),
        (0.5, 0.5, 0.25, 1.0),
        (0.5, 2.0, 0.5, 0.25),
        (0.5, 2.0, 0.25, 1.5),
        (0.5, 2.0, 0.0, 1.0),
    ])
    def test_domain(self, s, q, a, b):
        with pytest.raises(PreconditionError):
            PowerFamilySpec(s, q, a, b)


class TestPropositions:
    @pytest.mark.parametrize("s", S_GRID)
    def test_proposition31_holds_and_matches_theorem(self, s):
        for a, b in PAIRS:
            for q in (1.0, 2.0, 5.0):
                for report in proposition31(PowerFamilySpec(s, q, a, b)):
                    assert report.margin >= -1e-12, report
                    assert report.equivalence_gap <= 1e-9 * max(1.0, report.rhs_closed_form)
                    assert report.case is CaseRegion.BOTH_ABOVE_ONE

    @pytest.mark.parametrize("s", S_GRID)
    def test_proposition32_holds_and_matches_theorem(self, s):
        for a, b in PAIRS:
            for q in (1.5, 2.0, 4.0):
                for report in proposition32(PowerFamilySpec(s, q, a, b)):
                    assert report.margin >= -1e-12, report
                    assert report.equivalence_gap <= 1e-9 * max(1.0, report.rhs_closed_form)

    def test_worked_point(self):
        trap, mid = proposition31(PowerFamilySpec(0.5, 1.0, 0.25, 1.0))
        assert trap.side == "trapezoid" and mid.side == "midpoint"
        assert trap.margin >= 0.0 and mid.margin >= 0.0
        assert trap.equivalence_gap <= 1e-9

    def test_left_sides_are_s_times_function_scale(self, tol):
        s, q, a, b = 0.4, 2.0, 0.2, 0.8
        trap, mid = proposition31(PowerFamilySpec(s, q, a, b))
        f = FunctionHandle.from_source("x^s/s", {"s": s})
        bounds = theorem21_bounds(f, Interval(a, b), s, q, tol)
        assert trap.lhs == pytest.approx(s * bounds.trapezoid_lhs, rel=1e-9)
        assert mid.lhs == pytest.approx(s * bounds.midpoint_lhs, rel=1e-9)

    def test_nearly_degenerate_interval(self):
        b = 0.5
        for report in proposition31(PowerFamilySpec(0.5, 2.0, b - 1e-9, b)):
            assert report.lhs < 1e-8
            assert report.margin >= 0.0

    def test_proposition32_needs_q_above_one(self):
        with pytest.raises(PreconditionError):
            proposition32(PowerFamilySpec(0.5, 1.0, 0.25, 1.0))


def test_records():
    spec = PowerFamilySpec(0.3, 2.0, 0.1, 0.5)
    records = proposition_records(PROPOSITION_32, spec)
    assert [r.check for r in records] == [PROPOSITION_32, PROPOSITION_32]
    assert [r.side for r in records] == ["trapezoid", "midpoint"]
    row = records[0].to_dict()
    assert row["case"] == "BothAboveOne"
    assert (row["a"], row["b"], row["s"], row["q"]) == (0.1, 0.5, 0.3, 2.0)
    assert row["pass"] is True
    assert math.isfinite(row["extra"]["equivalence_gap"])
    assert proposition_records(PROPOSITION_31, spec)[0].check == PROPOSITION_31
