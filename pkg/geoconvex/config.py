"""Tolerances, environment overrides and JSON spec persistence."""
from __future__ import annotations

import json
import logging
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import PreconditionError, SpecError

log = logging.getLogger(__name__)

TOLERANCE_ENV = "GEOCONVEX_TOL"
DEFAULT_ABS_TOL = 1e-10
DEFAULT_REL_TOL = 1e-10
DEFAULT_MAX_SUBDIVISIONS = 2 ** 20
DEFAULT_SLACK = 1e-12


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = DEFAULT_ABS_TOL
    rel_tol: float = DEFAULT_REL_TOL
    max_subdivisions: int = DEFAULT_MAX_SUBDIVISIONS

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise PreconditionError(f"{name} must be positive and finite, got {value!r}")
        if int(self.max_subdivisions) < 1:
            raise PreconditionError(f"max_subdivisions must be >= 1, got {self.max_subdivisions!r}")

    def target(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))

    def tightened(self, factor: float) -> "Tolerance":
        return Tolerance(self.abs_tol / factor, self.rel_tol / factor, self.max_subdivisions)

    def to_dict(self) -> Dict[str, Any]:
        return {"abs": self.abs_tol, "rel": self.rel_tol, "max_subdivisions": self.max_subdivisions}

    @classmethod
    def from_dict(cls, data: Dict[str, Any], base: Optional["Tolerance"] = None) -> "Tolerance":
        base = base or default_tolerance()
        unknown = set(data) - {"abs", "rel", "max_subdivisions"}
        if unknown:
            raise SpecError(f"unknown tolerance keys: {', '.join(sorted(unknown))}")
        try:
            return cls(
                float(data.get("abs", base.abs_tol)),
                float(data.get("rel", base.rel_tol)),
                int(data.get("max_subdivisions", base.max_subdivisions)),
            )
        except (TypeError, ValueError) as exc:
            raise SpecError(f"invalid tolerance: {exc}") from exc


def default_tolerance() -> Tolerance:
    """Library defaults, with both tolerances replaced by $GEOCONVEX_TOL when set."""
    raw = os.environ.get(TOLERANCE_ENV)
    if not raw:
        return Tolerance()
    try:
        value = float(raw)
        return Tolerance(value, value)
    except (ValueError, PreconditionError):
        log.warning("ignoring %s=%r: not a positive float", TOLERANCE_ENV, raw)
        return Tolerance()


def load_json(path: Path) -> Dict[str, Any]:
    path = Path(path)
    if not path.exists():
        raise SpecError(f"spec file not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SpecError(f"spec file {path} must hold a JSON object")
    return data


def save_json(path: Path, data: Dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")
