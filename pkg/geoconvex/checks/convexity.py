"""Sample-based convexity classification.

Each checker evaluates the defining inequality of its class on a tensor grid
(x, y, t) and reports the smallest RHS - LHS margin. A verdict fails only when
that margin is below -slack; the grid point where the minimum occurs is kept
as a witness.

  convex (ordinary):        f(t x + (1-t) y)  <= t f(x) + (1-t) f(y)
  s-convex, second sense:   f(t x + (1-t) y)  <= t^s f(x) + (1-t)^s f(y)
  geometrically convex:     f(x^t y^(1-t))    <= f(x)^t f(y)^(1-t)
  s-geometrically convex:   f(x^t y^(1-t))    <= f(x)^(t^s) f(y)^((1-t)^s)
"""
from __future__ import annotations

import logging
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..domain import Interval
from ..errors import PreconditionError
from .base import ConvexityVerdict, SampleGrid, require_s, require_s_grid, worst_index

log = logging.getLogger(__name__)

Fn = Callable[[np.ndarray], np.ndarray]


def _verdict(margins: np.ndarray, xs: np.ndarray, ts: np.ndarray, grid: SampleGrid,
             definition: str, s: float) -> ConvexityVerdict:
    i, j, k = worst_index(margins)
    worst = float(margins[i, j, k])
    holds = worst >= -grid.slack
    witness = None if holds else (float(xs[i]), float(xs[j]), float(ts[k]))
    if witness:
        log.debug("%s (s=%g) violated at x=%g y=%g t=%g, margin %.3g", definition, s, *witness, worst)
    return ConvexityVerdict(holds, worst, witness, definition, s)


def s_geometric_margin(f: Fn, x: float, y: float, t: float, s: float) -> float:
    """RHS - LHS of the s-geometric inequality at one point."""
    lhs = float(f(np.asarray(x, dtype=np.float64) ** t * np.asarray(y, dtype=np.float64) ** (1.0 - t)))
    return float(f(x)) ** (t ** s) * float(f(y)) ** ((1.0 - t) ** s) - lhs


def s_convex_margin(f: Fn, x: float, y: float, t: float, s: float) -> float:
    """RHS - LHS of the second-sense s-convexity inequality at one point."""
    lhs = float(f(t * x + (1.0 - t) * y))
    return t ** s * float(f(x)) + (1.0 - t) ** s * float(f(y)) - lhs


def check_s_geometric(f: Fn, interval: Interval, s: float, grid: Optional[SampleGrid] = None) -> ConvexityVerdict:
    """Test f(x^t y^(1-t)) <= f(x)^(t^s) f(y)^((1-t)^s) over log-spaced x, y."""
    s = require_s(s)
    grid = grid or SampleGrid()
    xs = interval.logspace(grid.points)
    ts = grid.ts()
    fx = np.asarray(f(xs), dtype=np.float64)
    if np.any(fx <= 0.0):
        raise PreconditionError(f"f must be positive on [{interval.a}, {interval.b}] for a geometric check")

    X, Y, T = xs[:, None, None], xs[None, :, None], ts[None, None, :]
    mixed = X ** T * Y ** (1.0 - T)
    lhs = np.asarray(f(mixed.ravel()), dtype=np.float64).reshape(mixed.shape)
    rhs = fx[:, None, None] ** (T ** s) * fx[None, :, None] ** ((1.0 - T) ** s)
    return _verdict(rhs - lhs, xs, ts, grid, "s-geometric" if s < 1.0 else "geometric", s)


def check_s_convex_second_sense(f: Fn, interval: Interval, s: float,
                                grid: Optional[SampleGrid] = None) -> ConvexityVerdict:
    """Test f(t x + (1-t) y) <= t^s f(x) + (1-t)^s f(y) over linearly spaced x, y."""
    s = require_s(s)
    grid = grid or SampleGrid()
    xs = interval.linspace(grid.points)
    ts = grid.ts()
    fx = np.asarray(f(xs), dtype=np.float64)

    X, Y, T = xs[:, None, None], xs[None, :, None], ts[None, None, :]
    mixed = T * X + (1.0 - T) * Y
    lhs = np.asarray(f(mixed.ravel()), dtype=np.float64).reshape(mixed.shape)
    rhs = T ** s * fx[:, None, None] + (1.0 - T) ** s * fx[None, :, None]
    return _verdict(rhs - lhs, xs, ts, grid, "s-convex" if s < 1.0 else "convex", s)


def check_convex(f: Fn, interval: Interval, grid: Optional[SampleGrid] = None) -> ConvexityVerdict:
    return check_s_convex_second_sense(f, interval, 1.0, grid)


def check_geometric(f: Fn, interval: Interval, grid: Optional[SampleGrid] = None) -> ConvexityVerdict:
    return check_s_geometric(f, interval, 1.0, grid)


def s_profile(f: Fn, interval: Interval, grid: Optional[SampleGrid] = None,
              s_grid: Sequence[float] = (0.25, 0.5, 0.75, 1.0)) -> List[Tuple[float, ConvexityVerdict]]:
    """Independent s-geometric verdicts for each s; no monotonicity in s is assumed."""
    grid = grid or SampleGrid()
    return [(s, check_s_geometric(f, interval, s, grid)) for s in require_s_grid(s_grid)]
