import math

import numpy as np
import pytest

from geoconvex.errors import PreconditionError
from geoconvex.numerics.means import (
    ARITHMETIC,
    GEOMETRIC,
    LOGARITHMIC,
    MeanFamily,
    MeanKind,
    arithmetic_mean,
    geometric_mean,
    logarithmic_mean,
    mean,
    means_chain,
    p_logarithmic_mean,
)


def test_known_values():
    assert arithmetic_mean(1.0, 4.0) == 2.5
    assert geometric_mean(1.0, 4.0) == 2.0
    assert logarithmic_mean(1.0, math.e) == pytest.approx(math.e - 1.0, rel=1e-15)


def test_p_logarithmic_special_cases():
    a, b = 0.7, 5.2
    assert p_logarithmic_mean(a, b, 1.0) == pytest.approx(arithmetic_mean(a, b), rel=1e-14)
    assert p_logarithmic_mean(a, b, -2.0) == pytest.approx(geometric_mean(a, b), rel=1e-14)
    assert p_logarithmic_mean(a, b, 2.0) == pytest.approx(math.sqrt((b ** 3 - a ** 3) / (3.0 * (b - a))), rel=1e-14)


def test_p_logarithmic_approaches_logarithmic_mean():
    assert p_logarithmic_mean(2.0, 3.0, -1.0 + 1e-7) == pytest.approx(logarithmic_mean(2.0, 3.0), rel=1e-6)


@pytest.mark.parametrize("kind", [ARITHMETIC, GEOMETRIC, LOGARITHMIC, MeanKind(MeanFamily.P_LOGARITHMIC, 3.0)])
def test_symmetric_and_idempotent(kind):
    assert mean(kind, 0.3, 7.0) == mean(kind, 7.0, 0.3)
    assert mean(kind, 2.5, 2.5) == pytest.approx(2.5, rel=1e-15)


def test_logarithmic_mean_near_diagonal():
    a = 1.0
    b = 1.0 + 1e-12
    assert logarithmic_mean(a, b) == pytest.approx(1.0 + 5e-13, rel=1e-15)
    assert a <= logarithmic_mean(a, b) <= b


def test_classical_ordering(rng):
    for a, b in 10.0 ** rng.uniform(-3, 3, size=(500, 2)):
        chain = means_chain(a, b)
        assert chain.ordered, (a, b)
        assert chain.to_dict() == {"G": chain.g, "L": chain.l, "A": chain.a, "ordered": True}


def test_p_logarithmic_mean_increases_with_p():
    a, b = 0.5, 8.0
    values = [p_logarithmic_mean(a, b, p) for p in (-3.0, -2.0, -0.5, 0.5, 1.0, 2.0, 4.0)]
    assert all(x < y for x, y in zip(values, values[1:]))


@pytest.mark.parametrize("a, b", [(0.0, 1.0), (-1.0, 2.0), (1.0, math.inf), (math.nan, 1.0)])
def test_arguments_must_be_positive(a, b):
    with pytest.raises(PreconditionError):
        logarithmic_mean(a, b)


class TestMeanKind:
    def test_parse(self):
        assert MeanKind.parse("a") == ARITHMETIC
        assert MeanKind.parse(" L ") == LOGARITHMIC
        kind = MeanKind.parse("lp", 2)
        assert kind.family is MeanFamily.P_LOGARITHMIC
        assert kind.label == "L2"
        assert GEOMETRIC.label == "G"

    @pytest.mark.parametrize("label, p", [("Lp", None), ("Lp", 0.0), ("Lp", -1.0), ("A", 2.0), ("H", None)])
    def test_invalid(self, label, p):
        with pytest.raises(PreconditionError):
            MeanKind.parse(label, p)

    def test_dispatch(self):
        assert mean(MeanKind.parse("Lp", 1.0), 1.0, 3.0) == pytest.approx(2.0, rel=1e-15)
        assert mean(GEOMETRIC, 2.0, 8.0) == pytest.approx(4.0, rel=1e-15)
