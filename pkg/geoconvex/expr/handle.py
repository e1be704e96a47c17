"""FunctionHandle: a function and its derivative built from one text string."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Mapping, Optional

import numpy as np

from ..domain import Interval
from ..errors import PreconditionError
from .differentiate import differentiate
from .evaluate import ArrayLike, evaluate
from .nodes import ExprNode, to_source
from .parser import parse

POSITIVITY_POINTS = 33


@dataclass(frozen=True)
class FunctionHandle:
    value: ExprNode
    derivative: ExprNode
    bindings: Dict[str, float] = field(default_factory=dict)
    domain: Optional[Interval] = None
    source: str = ""
    derivative_overridden: bool = False

    @classmethod
    def from_source(
        cls,
        source: str,
        params: Optional[Mapping[str, float]] = None,
        derivative: Optional[str] = None,
        domain: Optional[Interval] = None,
    ) -> "FunctionHandle":
        """Parse ``source``; the derivative is symbolic unless ``derivative`` overrides it."""
        tree = parse(source)
        d_tree = parse(derivative) if derivative else differentiate(tree)
        return cls(
            value=tree,
            derivative=d_tree,
            bindings={k: float(v) for k, v in (params or {}).items()},
            domain=domain,
            source=source,
            derivative_overridden=derivative is not None,
        )

    def __call__(self, x: ArrayLike) -> ArrayLike:
        return evaluate(self.value, x, self.bindings)

    def prime(self, x: ArrayLike) -> ArrayLike:
        return evaluate(self.derivative, x, self.bindings)

    def abs_prime(self, x: ArrayLike) -> ArrayLike:
        return np.abs(self.prime(x)) if np.ndim(x) else abs(self.prime(x))

    def with_params(self, **params: float) -> "FunctionHandle":
        merged = dict(self.bindings)
        merged.update({k: float(v) for k, v in params.items()})
        return replace(self, bindings=merged)

    def require_positive(self, interval: Interval, points: int = POSITIVITY_POINTS) -> None:
        """Sample log-spaced points of ``interval``; f must be strictly positive there."""
        xs = interval.logspace(points)
        values = self(xs)
        if np.any(values <= 0):
            bad = xs[values <= 0][0]
            raise PreconditionError(f"f must be positive on [{interval.a}, {interval.b}], f({bad!r}) <= 0")

    def describe(self) -> Dict[str, object]:
        return {
            "f": self.source or to_source(self.value),
            "df": to_source(self.derivative),
            "params": dict(sorted(self.bindings.items())),
        }
