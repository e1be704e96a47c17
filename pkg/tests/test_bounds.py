import logging
import math

import pytest

from geoconvex.checks.bounds import (
    THEOREM_21,
    THEOREM_22,
    ProofChainReport,
    ProofChainRow,
    derivative_preflight,
    endpoint_slopes,
    geometric_chain,
    geometric_convexity_rhs,
    hh_classical,
    lemma_identity_residuals,
    proof_chain,
    q1_reduction_check,
    s1_reduction_check,
    theorem21_bounds,
    theorem22_bounds,
    theorem_rhs,
    weighted_log_integral,
)
from geoconvex.domain import Interval
from geoconvex.errors import PreconditionError, ThetaRangeError
from geoconvex.expr.catalog import LEMMA_CATALOG, get
from geoconvex.expr.handle import FunctionHandle
from geoconvex.numerics.kernels import CaseRegion

E = math.e
FAMILY_POINTS = (0.1, 0.25, 0.5, 1.0)
FAMILY_INTERVALS = [(a, b) for a in FAMILY_POINTS for b in FAMILY_POINTS if a < b]


def fn(source, **params):
    return FunctionHandle.from_source(source, params)


class TestIntegrals:
    def test_weighted_log_integral(self, tol, unit_to_e):
        value, err = weighted_log_integral(fn("x"), unit_to_e, tol)
        assert value == pytest.approx(E - 1.0, rel=1e-13)
        assert err >= 0.0

    def test_classical_hermite_hadamard(self, tol):
        report = hh_classical(fn("x^2"), Interval(0.0, 2.0), tol)
        assert report.midpoint == 1.0
        assert report.mean == pytest.approx(4.0 / 3.0, rel=1e-13)
        assert report.endpoint_average == 2.0
        assert all(r.passed for r in report.records(Interval(0.0, 2.0)))

    def test_classical_fails_for_concave(self, tol):
        interval = Interval(1.0, 4.0)
        records = hh_classical(fn("sqrt(x)"), interval, tol).records(interval)
        assert [r.side for r in records] == ["midpoint", "trapezoid"]
        assert not records[0].passed


class TestGeometricChain:
    def test_power_function_equalities(self, tol):
        report = geometric_chain(fn("x^2"), Interval(0.5, 2.0), tol)
        assert report.t1 == pytest.approx(1.0)
        assert report.t2 == pytest.approx(report.t1, abs=1e-10)
        assert report.t3 == pytest.approx(report.t4, abs=1e-10)
        assert report.t5 == pytest.approx(2.125)
        assert report.is_ordered()

    @pytest.mark.parametrize("name", ["x^-1", "x^0.5", "x", "x^3", "exp", "const"])
    def test_catalog_chain_is_ordered(self, tol, name):
        interval = Interval(0.2, 3.0)
        report = geometric_chain(get(name).handle(), interval, tol)
        assert report.is_ordered()
        records = report.records(interval)
        assert [r.side for r in records] == ["t1<=t2", "t2<=t3", "t3<=t4", "t4<=t5"]

    def test_needs_positive_values(self, tol):
        with pytest.raises(PreconditionError):
            geometric_chain(fn("x - 1"), Interval(0.5, 2.0), tol)


class TestLemmaIdentities:
    @pytest.mark.parametrize("source, a, b", [("x^2", 1.0, 2.0), ("exp(x)", 0.5, 1.5)])
    def test_small_residuals(self, tol, source, a, b):
        residual = lemma_identity_residuals(fn(source), Interval(a, b), tol)
        assert residual.midpoint <= 1e-9
        assert residual.trapezoid <= 1e-9

    @pytest.mark.parametrize("name", LEMMA_CATALOG)
    def test_catalog(self, tol, name):
        interval = Interval(0.1, 4.0)
        records = lemma_identity_residuals(get(name).handle(), interval, tol).records(interval)
        assert all(r.passed for r in records)
        assert all(r.margin <= 0.0 for r in records)


class TestTheoremBounds:
    def test_worked_point(self, tol, unit_to_e):
        report = theorem21_bounds(fn("x"), unit_to_e, 1.0, 1.0, tol)
        assert report.trapezoid_lhs == pytest.approx((3.0 - E) / 2.0, abs=1e-9)
        assert report.trapezoid_rhs == pytest.approx((E - 1.0) / 2.0, abs=1e-9)
        assert report.midpoint_rhs == pytest.approx((math.sqrt(E) - 1.0) ** 2, abs=1e-9)
        assert report.case is CaseRegion.BOTH_BELOW_ONE
        assert report.holds()

    @pytest.mark.parametrize("s", [0.1, 0.3, 0.5, 0.7, 0.9])
    @pytest.mark.parametrize("q", [1.0, 2.0, 5.0])
    def test_theorem21_power_family(self, tol, power_family, s, q):
        for a, b in FAMILY_INTERVALS:
            report = theorem21_bounds(power_family(s), Interval(a, b), s, q, tol)
            assert report.holds(), report
            assert report.case is CaseRegion.BOTH_ABOVE_ONE

    @pytest.mark.parametrize("s", [0.1, 0.3, 0.5, 0.7, 0.9])
    @pytest.mark.parametrize("q", [1.5, 2.0, 4.0])
    def test_theorem22_power_family(self, tol, power_family, s, q):
        for a, b in FAMILY_INTERVALS:
            assert theorem22_bounds(power_family(s), Interval(a, b), s, q, tol).holds()

    @pytest.mark.parametrize("s", [0.25, 0.5, 1.0])
    def test_exponential(self, tol, s):
        f = fn("exp(x)")
        for q in (1.0, 3.0):
            assert theorem21_bounds(f, Interval(0.5, 2.0), s, q, tol).holds()
        assert theorem22_bounds(f, Interval(0.5, 2.0), s, 3.0, tol).holds()

    def test_records(self, tol, power_family):
        report = theorem22_bounds(power_family(0.5), Interval(0.25, 1.0), 0.5, 2.0, tol)
        records = report.records()
        assert [r.side for r in records] == ["trapezoid", "midpoint"]
        assert {r.check for r in records} == {THEOREM_22}
        assert records[0].margin == pytest.approx(report.trapezoid_margin)
        data = report.to_dict()
        assert data["case"] == "BothAboveOne"
        assert set(data["theta"]) == {"theta1", "theta2", "theta3", "theta4"}

    def test_midpoint_rhs_below_trapezoid_rhs(self, tol, power_family):
        report = theorem21_bounds(power_family(0.5), Interval(0.25, 1.0), 0.5, 2.0, tol)
        assert report.midpoint_rhs < report.trapezoid_rhs

    def test_constant_function_bounds_vanish(self, tol):
        report = theorem21_bounds(fn("c", c=2.5), Interval(1.0, 2.0), 0.5, 1.0, tol)
        assert report.trapezoid_rhs == 0.0 and report.midpoint_rhs == 0.0
        assert report.theta is None
        assert report.to_dict()["theta"] is None
        assert report.holds()

    def test_one_vanishing_slope(self, tol):
        with pytest.raises(PreconditionError):
            theorem21_bounds(fn("(x - 1)^2"), Interval(1.0, 2.0), 0.5, 1.0, tol)

    def test_theorem22_needs_q_above_one(self, tol):
        with pytest.raises(PreconditionError):
            theorem22_bounds(fn("exp(x)"), Interval(0.5, 2.0), 0.5, 1.0, tol)

    @pytest.mark.parametrize("s, q", [(0.0, 1.0), (1.2, 1.0), (0.5, 0.9)])
    def test_parameter_ranges(self, tol, s, q):
        with pytest.raises(PreconditionError):
            theorem21_bounds(fn("exp(x)"), Interval(0.5, 2.0), s, q, tol)

    def test_theta_overflow_propagates(self, tol):
        with pytest.raises(ThetaRangeError):
            theorem21_bounds(fn("x"), Interval(1.0, 2.0), 1.0, 5000.0, tol)

    def test_rhs_depends_only_on_slopes(self):
        interval = Interval(0.5, 2.0)
        trap, mid, region, theta = theorem_rhs(THEOREM_21, interval, 3.0, 0.5, 0.5, 2.0)
        assert region is CaseRegion.B_BELOW_A_ABOVE
        assert theta.theta1 * theta.theta2 == pytest.approx(1.0)
        assert (trap, mid) == theorem_rhs(THEOREM_21, interval, 3.0, 0.5, 0.5, 2.0)[:2]

    def test_unknown_theorem(self):
        with pytest.raises(PreconditionError):
            theorem_rhs("thm99", Interval(0.5, 2.0), 1.5, 2.0, 0.5, 2.0)


class TestReductions:
    @pytest.mark.parametrize("source, a, b, q", [("exp(x)", 1.0, 2.0, 2.0), ("x^3", 0.5, 2.0, 3.0)])
    def test_s1_reduction(self, tol, source, a, b, q):
        residuals = s1_reduction_check(fn(source), Interval(a, b), q, tol)
        assert [r.theorem for r in residuals] == [THEOREM_21, THEOREM_22]
        assert max(r.worst() for r in residuals) <= 1e-12

    def test_s1_reduction_at_q_one_skips_holder_form(self, tol):
        residuals = s1_reduction_check(fn("x^2"), Interval(0.5, 2.0), 1.0, tol)
        assert [r.theorem for r in residuals] == [THEOREM_21]

    @pytest.mark.parametrize("name", LEMMA_CATALOG)
    def test_s1_reduction_catalog(self, tol, name):
        for residual in s1_reduction_check(get(name).handle(), Interval(0.5, 2.0), 2.0, tol):
            assert residual.worst() <= 1e-12

    @pytest.mark.parametrize("s", [0.25, 0.5, 1.0])
    def test_q1_reduction(self, tol, s):
        for source in ("x^2", "exp(x)", "x^-1"):
            assert q1_reduction_check(fn(source), Interval(0.5, 2.0), s, tol).worst() <= 1e-12

    def test_geometric_convexity_rhs_with_unit_slopes(self, unit_to_e):
        trap, mid = geometric_convexity_rhs(THEOREM_21, unit_to_e, 1.0, 1.0, 1.0)
        assert trap == pytest.approx((E - 1.0) / 2.0)
        assert mid == pytest.approx((math.sqrt(E) - 1.0) ** 2)

    def test_endpoint_slopes(self):
        assert endpoint_slopes(fn("x^-1"), Interval(0.5, 2.0)) == pytest.approx((4.0, 0.25))


class TestProofChain:
    @pytest.mark.parametrize("theorem, q", [(THEOREM_21, 1.0), (THEOREM_21, 2.0), (THEOREM_22, 2.0)])
    def test_power_family_is_ordered(self, tol, power_family, theorem, q):
        report = proof_chain(power_family(0.5), Interval(0.25, 1.0), 0.5, q, theorem, tol)
        assert report.is_ordered(), report
        assert [row.side for row in report.rows] == ["trapezoid", "midpoint"]

    def test_exponential_is_ordered(self, tol):
        report = proof_chain(fn("exp(x)"), Interval(0.5, 2.0), 0.5, 3.0, THEOREM_21, tol)
        assert report.is_ordered()
        trap = report.row("trapezoid")
        assert trap.steps[0] < trap.steps[1] <= trap.steps[2]

    def test_ends_match_bounds(self, tol, power_family):
        f = power_family(0.3)
        interval = Interval(0.1, 0.5)
        report = proof_chain(f, interval, 0.3, 2.0, THEOREM_21, tol)
        bounds = theorem21_bounds(f, interval, 0.3, 2.0, tol)
        assert report.row("midpoint").steps[0] == bounds.midpoint_lhs
        assert report.row("midpoint").steps[-1] == bounds.midpoint_rhs

    def test_first_break(self):
        row = ProofChainRow("trapezoid", (1.0, 2.0, 1.5, 3.0, 4.0))
        assert row.first_break(0.0) == 1
        assert ProofChainRow("midpoint", (1.0, 1.0, 2.0, 3.0, 4.0)).first_break(0.0) is None
        report = ProofChainReport(THEOREM_21, (row, ProofChainRow("midpoint", (0.0,) * 5)), 0.0)
        assert report.row("trapezoid") is row
        assert not report.is_ordered()
        with pytest.raises(KeyError):
            report.row("left")


class TestPreflight:
    def test_holds_for_power_family(self, power_family):
        assert derivative_preflight(power_family(0.5), Interval(0.25, 1.0), 0.5, 2.0).holds

    def test_failure_is_logged(self, caplog):
        with caplog.at_level(logging.WARNING, logger="geoconvex"):
            verdict = derivative_preflight(fn("x^2"), Interval(0.1, 0.9), 0.5, 1.0)
        assert not verdict.holds
        assert "not 0.5-geometrically convex" in caplog.text
