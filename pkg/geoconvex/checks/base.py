"""Shared types and helpers for the convexity, bound and proposition checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from ..config import DEFAULT_SLACK
from ..errors import PreconditionError

DEFAULT_T_VALUES = (0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0)


@dataclass(frozen=True)
class SampleGrid:
    """Deterministic sampling plan: ``points`` per axis and a fixed set of t-values."""

    points: int = 17
    t_values: Tuple[float, ...] = DEFAULT_T_VALUES
    slack: float = DEFAULT_SLACK

    def __post_init__(self):
        if int(self.points) < 3:
            raise PreconditionError(f"a sample grid needs at least 3 points per axis, got {self.points!r}")
        ts = tuple(float(t) for t in self.t_values)
        if not ts or any(not 0.0 <= t <= 1.0 for t in ts):
            raise PreconditionError(f"t-values must lie in [0, 1], got {ts!r}")
        if list(ts) != sorted(ts):
            raise PreconditionError(f"t-values must be sorted, got {ts!r}")
        if not (self.slack >= 0.0 and math.isfinite(self.slack)):
            raise PreconditionError(f"slack must be non-negative, got {self.slack!r}")
        object.__setattr__(self, "t_values", ts)

    def ts(self) -> np.ndarray:
        return np.asarray(self.t_values, dtype=np.float64)


@dataclass(frozen=True)
class ConvexityVerdict:
    holds: bool
    worst_margin: float
    witness: Optional[Tuple[float, float, float]] = None
    definition: str = ""
    s: float = 1.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "definition": self.definition,
            "s": self.s,
            "holds": self.holds,
            "worst_margin": self.worst_margin,
            "witness": list(self.witness) if self.witness else None,
        }


@dataclass(frozen=True)
class CheckRecord:
    """One row of a sweep report: a single inequality (or identity) at one grid point."""

    check: str
    side: str
    lhs: float
    rhs: float
    margin: float
    passed: bool
    a: float = math.nan
    b: float = math.nan
    s: float = math.nan
    q: float = math.nan
    case: str = ""
    err_estimate: float = 0.0
    extra: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        # numpy comparisons yield numpy.bool_, which json cannot encode
        object.__setattr__(self, "passed", bool(self.passed))

    def to_dict(self) -> Dict[str, Any]:
        record = {
            "check": self.check,
            "a": self.a,
            "b": self.b,
            "s": self.s,
            "q": self.q,
            "side": self.side,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "case": self.case,
            "pass": self.passed,
            "err_estimate": self.err_estimate,
        }
        if self.extra:
            record["extra"] = dict(self.extra)
        return record


def margin_passes(margin: float, err_estimate: float = 0.0, slack: float = DEFAULT_SLACK) -> bool:
    """margin >= -(slack + err_estimate); NaN never passes."""
    return bool(margin >= -(slack + abs(err_estimate)))


def worst_index(margins: np.ndarray) -> Tuple[int, ...]:
    """Index of the smallest margin; ties resolve to the first in C order."""
    flat = int(np.argmin(margins))
    return tuple(int(i) for i in np.unravel_index(flat, margins.shape))


def margin_summary(margins: Iterable[float]) -> Dict[str, Any]:
    """Count, worst and mean margin of a batch of records."""
    values = np.asarray(list(margins), dtype=np.float64)
    if values.size == 0:
        return {"count": 0, "worst_margin": None, "mean_margin": None}
    return {
        "count": int(values.size),
        "worst_margin": float(np.min(values)),
        "mean_margin": float(np.mean(values)),
    }


def require_s(s: float) -> float:
    s = float(s)
    if not 0.0 < s <= 1.0:
        raise PreconditionError(f"s must lie in (0, 1], got {s!r}")
    return s


def require_q(q: float, strict: bool = False) -> float:
    q = float(q)
    if not math.isfinite(q) or q < 1.0 or (strict and q == 1.0):
        bound = "> 1" if strict else ">= 1"
        raise PreconditionError(f"q must be a finite number {bound}, got {q!r}")
    return q


def require_s_grid(s_grid: Sequence[float]) -> Tuple[float, ...]:
    return tuple(require_s(s) for s in s_grid)
