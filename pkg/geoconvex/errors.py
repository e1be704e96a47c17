"""Exception hierarchy shared by every geoconvex module.

Each class carries the CLI exit code it maps to, so the command layer can turn
any failure into a machine-readable record without a lookup table.
"""
from __future__ import annotations

from typing import Any, Dict, Optional

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class GeoconvexError(Exception):
    exit_code = EXIT_USAGE

    def to_record(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "message": str(self),
            "exit_code": self.exit_code,
        }


class SpecError(GeoconvexError):
    """Malformed sweep spec, config file or CLI input."""


class PreconditionError(GeoconvexError, ValueError):
    """An operation was called outside its documented domain."""


class ExprSyntaxError(GeoconvexError):
    def __init__(self, message: str, offset: int, source: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.source = source

    def to_record(self) -> Dict[str, Any]:
        record = super().to_record()
        record["offset"] = self.offset
        return record


class UnknownFunctionError(ExprSyntaxError):
    pass


class UnboundParameterError(GeoconvexError):
    def __init__(self, name: str):
        super().__init__(f"parameter '{name}' is not bound")
        self.name = name


class NumericalError(GeoconvexError):
    exit_code = EXIT_NUMERICAL


class ExprDomainError(NumericalError, ArithmeticError):
    def __init__(self, message: str, x: Optional[float] = None):
        super().__init__(message if x is None else f"{message} (x={x!r})")
        self.x = x


class KernelDomainError(NumericalError, ValueError):
    pass


class ThetaRangeError(NumericalError, OverflowError):
    pass


class QuadratureError(NumericalError):
    """Raised only when a caller demands a converged integral."""

    def __init__(self, message: str, result: Any = None):
        super().__init__(message)
        self.result = result
