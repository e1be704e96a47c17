"""Named test functions shared by sweeps, the verify suite and the tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

from ..domain import Interval
from .handle import FunctionHandle


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    source: str
    params: Dict[str, float] = field(default_factory=dict)
    domain: Optional[Interval] = None
    geometrically_convex: bool = False

    def handle(self, **params: float) -> FunctionHandle:
        bound = dict(self.params)
        bound.update(params)
        return FunctionHandle.from_source(self.source, params=bound, domain=self.domain)


CATALOG: Dict[str, CatalogEntry] = {
    entry.name: entry
    for entry in (
        CatalogEntry("x^-1", "x^-1", geometrically_convex=True),
        CatalogEntry("x^0.5", "x^0.5", geometrically_convex=True),
        CatalogEntry("x", "x", geometrically_convex=True),
        CatalogEntry("x^2", "x^2", geometrically_convex=True),
        CatalogEntry("x^3", "x^3", geometrically_convex=True),
        CatalogEntry("exp", "exp(x)", geometrically_convex=True),
        CatalogEntry("2sqrt", "2*sqrt(x)", geometrically_convex=True),
        CatalogEntry("const", "c", {"c": 2.5}, geometrically_convex=True),
        CatalogEntry("power-family", "x^s/s", {"s": 0.5}, Interval(1e-3, 1.0)),
    )
}

# f with an identity-checkable derivative; the constant is excluded from the
# bound reductions because its derivative vanishes.
LEMMA_CATALOG = ("x^-1", "x^0.5", "x", "x^2", "x^3", "exp", "2sqrt")
POWER_EXPONENTS = {"x^-1": -1.0, "x^0.5": 0.5, "x": 1.0, "x^2": 2.0, "x^3": 3.0}


def catalog() -> Dict[str, CatalogEntry]:
    return dict(CATALOG)


def get(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog function {name!r}; known: {', '.join(CATALOG)}") from None
