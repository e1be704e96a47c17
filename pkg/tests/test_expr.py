import math

import numpy as np
import pytest

from geoconvex.domain import Interval
from geoconvex.errors import (
    ExprDomainError,
    ExprSyntaxError,
    PreconditionError,
    UnboundParameterError,
    UnknownFunctionError,
)
from geoconvex.expr import BinOp, Neg, Num, Param, Var, differentiate, evaluate, parse, to_source
from geoconvex.expr.catalog import CATALOG, LEMMA_CATALOG, POWER_EXPONENTS, catalog, get
from geoconvex.expr.handle import FunctionHandle
from geoconvex.expr.nodes import BINARY_OPS, FUNCTIONS, Call, parameters


class TestParse:
    def test_power_binds_tighter_than_unary_minus(self):
        assert parse("-x^2") == Neg(BinOp("^", Var(), Num(2.0)))
        assert evaluate(parse("-x^2"), 3.0) == -9.0

    def test_power_is_right_associative(self):
        assert evaluate(parse("2^3^2"), 1.0) == 512.0

    def test_unary_exponent(self):
        assert evaluate(parse("2^-x"), 1.0) == 0.5

    def test_precedence_of_products_and_sums(self):
        assert evaluate(parse("1 + 2*x - x/4"), 4.0) == pytest.approx(8.0)

    def test_parameters_and_functions(self):
        tree = parse("c*exp(k*x) + ln(x)")
        assert parameters(tree) == {"c", "k"}
        assert evaluate(tree, 1.0, {"c": 2.0, "k": 0.0}) == pytest.approx(2.0)

    def test_scientific_numbers(self):
        assert evaluate(parse("1.5e-3*x"), 1000.0) == pytest.approx(1.5)

    def test_to_source_parses_back(self):
        for source in ("x^s/s", "-x^2 + 3*x", "2*sqrt(x)", "exp(-x)/(1 + x)", "x^-1"):
            tree = parse(source)
            assert parse(to_source(tree)) == tree

    def test_negative_literal_is_a_number(self):
        assert parse("-2.5") == Num(-2.5)
        assert parse("x^-3") == BinOp("^", Var(), Num(-3.0))
        assert parse("-2^2") == Neg(BinOp("^", Num(2.0), Num(2.0)))

    def test_printed_literals(self):
        assert to_source(Num(-1.0)) == "(-1.0)"
        assert to_source(Num(math.inf)) == "1e999"
        assert parse(to_source(Num(-math.inf))) == Num(-math.inf)
        with pytest.raises(ValueError):
            to_source(Num(math.nan))

    def test_random_trees_parse_back(self, rng):
        literals = (0.0, 1.0, -1.0, 2.5, -0.125, 1e-300, -7e22, 5e-324, math.inf, -math.inf)

        def tree(depth):
            kind = int(rng.integers(0, 6 if depth > 0 else 3))
            if kind == 0:
                if rng.random() < 0.5:
                    return Num(float(rng.choice(literals)))
                return Num(float(rng.normal(scale=1e3)))
            if kind == 1:
                return Var()
            if kind == 2:
                return Param(str(rng.choice(["a", "c", "k", "s"])))
            if kind == 3:
                operand = tree(depth - 1)
                # the parser reads -<number> as one literal
                return operand if isinstance(operand, Num) else Neg(operand)
            if kind == 4:
                return BinOp(str(rng.choice(BINARY_OPS)), tree(depth - 1), tree(depth - 1))
            return Call(str(rng.choice(FUNCTIONS)), tree(depth - 1))

        for _ in range(500):
            expr = tree(5)
            assert parse(to_source(expr)) == expr

    @pytest.mark.parametrize("source, offset", [
        ("x +* 2", 3),
        ("(x + 1", 6),
        ("x + 1)", 5),
        ("x $ 2", 2),
        ("x +", 3),
    ])
    def test_syntax_errors_carry_offset(self, source, offset):
        with pytest.raises(ExprSyntaxError) as info:
            parse(source)
        assert info.value.offset == offset
        assert info.value.to_record()["offset"] == offset

    def test_empty_expression(self):
        with pytest.raises(ExprSyntaxError):
            parse("   ")

    def test_unknown_function(self):
        with pytest.raises(UnknownFunctionError) as info:
            parse("1 + sinh(x)")
        assert info.value.offset == 4

    def test_bare_function_name_is_an_error(self):
        with pytest.raises(ExprSyntaxError):
            parse("exp + 1")


class TestEvaluate:
    def test_vectorized(self):
        xs = np.array([1.0, 2.0, 4.0])
        np.testing.assert_allclose(evaluate(parse("x^2 + 1"), xs), [2.0, 5.0, 17.0])

    def test_scalar_in_scalar_out(self):
        assert isinstance(evaluate(parse("x"), 2.0), float)

    def test_unbound_parameter(self):
        with pytest.raises(UnboundParameterError) as info:
            evaluate(parse("x^s"), 2.0)
        assert info.value.name == "s"

    @pytest.mark.parametrize("source, x", [
        ("ln(x)", 0.0),
        ("sqrt(x)", -1.0),
        ("1/x", 0.0),
        ("x^0.5", -2.0),
        ("exp(x)", 1000.0),
    ])
    def test_domain_errors(self, source, x):
        with pytest.raises(ExprDomainError):
            evaluate(parse(source), x)

    def test_domain_error_is_numerical(self):
        with pytest.raises(ExprDomainError) as info:
            evaluate(parse("ln(x)"), np.array([1.0, -1.0]))
        assert info.value.exit_code == 3


class TestDifferentiate:
    @pytest.mark.parametrize("source, params", [
        ("x^3", {}),
        ("x^s/s", {"s": 0.3}),
        ("exp(2*x)*x", {}),
        ("ln(x)/x", {}),
        ("2*sqrt(x)", {}),
        ("x^x", {}),
        ("2^x", {}),
        ("1/(1 + x^2)", {}),
        ("-x^2 + c*x", {"c": 1.5}),
    ])
    def test_matches_central_difference(self, source, params):
        tree = parse(source)
        d = differentiate(tree)
        xs = np.linspace(0.5, 2.5, 9)
        h = 1e-6
        numeric = (evaluate(tree, xs + h, params) - evaluate(tree, xs - h, params)) / (2 * h)
        np.testing.assert_allclose(evaluate(d, xs, params), numeric, rtol=1e-6, atol=1e-8)

    def test_constants_fold(self):
        assert differentiate(parse("3*x")) == Num(3.0)
        assert differentiate(parse("c")) == Num(0.0)
        assert differentiate(parse("x + 5")) == Num(1.0)

    def test_parameter_exponent_keeps_parameter(self):
        d = differentiate(parse("x^s"))
        assert Param("s") in _leaves(d)


def _leaves(node):
    if not node.children:
        return [node]
    return [leaf for child in node.children for leaf in _leaves(child)]


class TestFunctionHandle:
    def test_symbolic_derivative(self):
        f = FunctionHandle.from_source("x^s/s", {"s": 0.5})
        assert f(4.0) == pytest.approx(4.0)
        assert f.prime(4.0) == pytest.approx(0.5)
        assert not f.derivative_overridden

    def test_derivative_override(self):
        f = FunctionHandle.from_source("x^2", derivative="3*x")
        assert f.prime(2.0) == 6.0
        assert f.derivative_overridden

    def test_abs_prime(self):
        f = FunctionHandle.from_source("1/x")
        assert f.abs_prime(2.0) == pytest.approx(0.25)
        np.testing.assert_allclose(f.abs_prime(np.array([1.0, 2.0])), [1.0, 0.25])

    def test_with_params_leaves_original_untouched(self):
        f = FunctionHandle.from_source("c*x", {"c": 1.0})
        g = f.with_params(c=3.0)
        assert f(2.0) == 2.0
        assert g(2.0) == 6.0

    def test_require_positive(self):
        FunctionHandle.from_source("exp(x)").require_positive(Interval(0.5, 2.0))
        with pytest.raises(PreconditionError):
            FunctionHandle.from_source("ln(x)").require_positive(Interval(0.5, 2.0))

    def test_describe(self):
        described = FunctionHandle.from_source("x^2").describe()
        assert described["f"] == "x^2"
        assert parse(described["df"]) == BinOp("*", Num(2.0), Var())


class TestCatalog:
    def test_every_entry_evaluates(self):
        for name, entry in catalog().items():
            f = entry.handle()
            assert math.isfinite(f(0.5)), name
            assert math.isfinite(f.prime(0.5)), name

    def test_lemma_catalog_is_a_subset(self):
        assert set(LEMMA_CATALOG) <= set(CATALOG)
        assert set(POWER_EXPONENTS) <= set(LEMMA_CATALOG)

    def test_power_exponents_match_sources(self):
        for name, p in POWER_EXPONENTS.items():
            assert get(name).handle()(2.0) == pytest.approx(2.0 ** p)

    def test_power_family_params_can_be_overridden(self):
        f = get("power-family").handle(s=0.25)
        assert f(16.0) == pytest.approx(8.0)

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            get("cosh")
