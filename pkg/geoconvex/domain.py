"""Closed intervals on the half-line."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError


@dataclass(frozen=True)
class Interval:
    """[a, b] with 0 <= a < b < inf.

    a = 0 is admitted for the ordinary and second-sense convexity checks;
    everything multiplicative (geometric checks, bounds) calls ``require_positive``.
    """

    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise PreconditionError(f"interval endpoints must be finite, got [{a}, {b}]")
        if not 0.0 <= a < b:
            raise PreconditionError(f"interval needs 0 <= a < b, got [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def log_ratio(self) -> float:
        """ln(b/a)."""
        self.require_positive()
        return math.log(self.b) - math.log(self.a)

    @property
    def geometric_midpoint(self) -> float:
        self.require_positive()
        return math.sqrt(self.a * self.b)

    def require_positive(self) -> "Interval":
        if self.a <= 0.0:
            raise PreconditionError(f"interval must lie in (0, inf), got [{self.a}, {self.b}]")
        return self

    def logspace(self, n: int) -> np.ndarray:
        self.require_positive()
        points = np.geomspace(self.a, self.b, n)
        points[0], points[-1] = self.a, self.b
        return points

    def linspace(self, n: int) -> np.ndarray:
        return np.linspace(self.a, self.b, n)
