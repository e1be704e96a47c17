"""Vectorized evaluation of expression trees.

``evaluate`` accepts a scalar or a numpy array for x. Arrays let the quadrature
engine evaluate all nodes of a refinement sweep in one call.
"""
from __future__ import annotations

from typing import Mapping, Union

import numpy as np

from ..errors import ExprDomainError, UnboundParameterError
from .nodes import BinOp, Call, ExprNode, Neg, Num, Param, Var, parameters

ArrayLike = Union[float, np.ndarray]


def _check(mask: np.ndarray, message: str, x: np.ndarray) -> None:
    if np.any(mask):
        bad = np.broadcast_to(x, mask.shape)[mask]
        raise ExprDomainError(message, float(bad[0]) if bad.size else None)


def _eval(node: ExprNode, x: np.ndarray, bindings: Mapping[str, float]) -> np.ndarray:
    if isinstance(node, Num):
        return np.full_like(x, node.value)
    if isinstance(node, Var):
        return x
    if isinstance(node, Param):
        return np.full_like(x, float(bindings[node.name]))
    if isinstance(node, Neg):
        return -_eval(node.operand, x, bindings)
    if isinstance(node, BinOp):
        left = _eval(node.left, x, bindings)
        right = _eval(node.right, x, bindings)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            _check(right == 0.0, "division by zero", x)
            return left / right
        # power
        _check((left < 0) & (right != np.round(right)), "negative base with non-integer exponent", x)
        _check((left == 0) & (right < 0), "zero raised to a negative power", x)
        return np.power(left, right)
    if isinstance(node, Call):
        arg = _eval(node.arg, x, bindings)
        if node.func == "ln":
            _check(arg <= 0, "ln of non-positive value", x)
            return np.log(arg)
        if node.func == "exp":
            return np.exp(arg)
        if node.func == "sqrt":
            _check(arg < 0, "sqrt of negative value", x)
            return np.sqrt(arg)
        if node.func == "abs":
            return np.abs(arg)
        if node.func == "sign":
            _check(arg == 0, "derivative of abs undefined at 0", x)
            return np.sign(arg)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(node: ExprNode, x: ArrayLike, bindings: Mapping[str, float] = None) -> ArrayLike:
    """Evaluate ``node`` at ``x`` with the given parameter bindings.

    Raises UnboundParameterError before touching any value if a parameter is
    missing, and ExprDomainError on ln/sqrt of invalid arguments, division by
    zero, or any non-finite result.
    """
    bindings = bindings or {}
    for name in sorted(parameters(node)):
        if name not in bindings:
            raise UnboundParameterError(name)
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    with np.errstate(all="ignore"):
        result = _eval(node, xs, bindings)
    _check(~np.isfinite(result), "non-finite result", xs)
    return float(result[0]) if scalar else result
