"""Arithmetic, geometric, logarithmic and p-logarithmic means of two positive numbers.

All four are symmetric, so arguments are put in order before evaluating. The
logarithmic and p-logarithmic means are extended to a == b by continuity.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from ..errors import PreconditionError


class MeanFamily(enum.Enum):
    ARITHMETIC = "A"
    GEOMETRIC = "G"
    LOGARITHMIC = "L"
    P_LOGARITHMIC = "Lp"


@dataclass(frozen=True)
class MeanKind:
    family: MeanFamily
    p: Optional[float] = None

    def __post_init__(self):
        if self.family is MeanFamily.P_LOGARITHMIC:
            if self.p is None or not math.isfinite(self.p):
                raise PreconditionError("the p-logarithmic mean needs a finite p")
            if self.p in (-1.0, 0.0):
                raise PreconditionError(f"the p-logarithmic mean is undefined for p={self.p!r}")
        elif self.p is not None:
            raise PreconditionError(f"{self.family.value} takes no p")

    @classmethod
    def parse(cls, label: str, p: Optional[float] = None) -> "MeanKind":
        """'A', 'G', 'L' or 'Lp' (case-insensitive)."""
        for family in MeanFamily:
            if family.value.lower() == label.strip().lower():
                return cls(family, float(p) if p is not None else None)
        raise PreconditionError(f"unknown mean {label!r}; expected one of A, G, L, Lp")

    @property
    def label(self) -> str:
        if self.family is MeanFamily.P_LOGARITHMIC:
            return f"L{self.p:g}"
        return self.family.value


ARITHMETIC = MeanKind(MeanFamily.ARITHMETIC)
GEOMETRIC = MeanKind(MeanFamily.GEOMETRIC)
LOGARITHMIC = MeanKind(MeanFamily.LOGARITHMIC)


def _ordered(a: float, b: float) -> Tuple[float, float]:
    a, b = float(a), float(b)
    if not (a > 0.0 and b > 0.0 and math.isfinite(a) and math.isfinite(b)):
        raise PreconditionError(f"means need positive finite arguments, got {a!r}, {b!r}")
    return (a, b) if a <= b else (b, a)


def arithmetic_mean(a: float, b: float) -> float:
    a, b = _ordered(a, b)
    return 0.5 * a + 0.5 * b


def geometric_mean(a: float, b: float) -> float:
    a, b = _ordered(a, b)
    return math.sqrt(a) * math.sqrt(b)


def logarithmic_mean(a: float, b: float) -> float:
    a, b = _ordered(a, b)
    if a == b:
        return a
    # log1p keeps ln(b/a) accurate when b is within a few ulp of a
    return (b - a) / math.log1p((b - a) / a)


def p_logarithmic_mean(a: float, b: float, p: float) -> float:
    if p in (-1.0, 0.0) or not math.isfinite(p):
        raise PreconditionError(f"the p-logarithmic mean is undefined for p={p!r}")
    a, b = _ordered(a, b)
    if a == b:
        return a
    # b^(p+1) - a^(p+1) = a^(p+1) * expm1((p+1) ln(b/a))
    k = p + 1.0
    log_ratio = math.log1p((b - a) / a)
    ratio = math.expm1(k * log_ratio) / (k * (b - a) / a)
    return a * ratio ** (1.0 / p)


def mean(kind: MeanKind, a: float, b: float) -> float:
    if kind.family is MeanFamily.ARITHMETIC:
        return arithmetic_mean(a, b)
    if kind.family is MeanFamily.GEOMETRIC:
        return geometric_mean(a, b)
    if kind.family is MeanFamily.LOGARITHMIC:
        return logarithmic_mean(a, b)
    return p_logarithmic_mean(a, b, kind.p)


@dataclass(frozen=True)
class MeansChain:
    g: float
    l: float  # noqa: E741
    a: float
    ordered: bool

    def to_dict(self):
        return {"G": self.g, "L": self.l, "A": self.a, "ordered": self.ordered}


def means_chain(a: float, b: float, slack: float = 1e-12) -> MeansChain:
    """G(a, b) <= L(a, b) <= A(a, b), checked with an absolute ``slack``."""
    g, l, am = geometric_mean(a, b), logarithmic_mean(a, b), arithmetic_mean(a, b)  # noqa: E741
    return MeansChain(g, l, am, g <= l + slack and l <= am + slack)
