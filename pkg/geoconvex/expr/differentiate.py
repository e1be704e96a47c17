"""Symbolic differentiation with respect to x.

The builders below fold numeric constants and drop additive/multiplicative
identities; no other simplification is attempted.
"""
from __future__ import annotations

from .nodes import BinOp, Call, ExprNode, Neg, Num, Param, Var, depends_on_x

ZERO = Num(0.0)
ONE = Num(1.0)


def _is_num(node: ExprNode, value: float = None) -> bool:
    return isinstance(node, Num) and (value is None or node.value == value)


def neg(a: ExprNode) -> ExprNode:
    if _is_num(a):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def add(a: ExprNode, b: ExprNode) -> ExprNode:
    if _is_num(a) and _is_num(b):
        return Num(a.value + b.value)
    if _is_num(a, 0.0):
        return b
    if _is_num(b, 0.0):
        return a
    return BinOp("+", a, b)


def sub(a: ExprNode, b: ExprNode) -> ExprNode:
    if _is_num(a) and _is_num(b):
        return Num(a.value - b.value)
    if _is_num(b, 0.0):
        return a
    if _is_num(a, 0.0):
        return neg(b)
    return BinOp("-", a, b)


def mul(a: ExprNode, b: ExprNode) -> ExprNode:
    if _is_num(a) and _is_num(b):
        return Num(a.value * b.value)
    if _is_num(a, 0.0) or _is_num(b, 0.0):
        return ZERO
    if _is_num(a, 1.0):
        return b
    if _is_num(b, 1.0):
        return a
    return BinOp("*", a, b)


def div(a: ExprNode, b: ExprNode) -> ExprNode:
    if _is_num(b, 1.0):
        return a
    if _is_num(a, 0.0) and not _is_num(b, 0.0):
        return ZERO
    if _is_num(a) and _is_num(b) and b.value != 0.0:
        return Num(a.value / b.value)
    return BinOp("/", a, b)


def power(a: ExprNode, b: ExprNode) -> ExprNode:
    if _is_num(b, 0.0):
        return ONE
    if _is_num(b, 1.0):
        return a
    return BinOp("^", a, b)


def differentiate(node: ExprNode) -> ExprNode:
    """Return a tree computing d(node)/dx."""
    if isinstance(node, (Num, Param)):
        return ZERO
    if isinstance(node, Var):
        return ONE
    if isinstance(node, Neg):
        return neg(differentiate(node.operand))
    if isinstance(node, BinOp):
        f, g = node.left, node.right
        if node.op == "+":
            return add(differentiate(f), differentiate(g))
        if node.op == "-":
            return sub(differentiate(f), differentiate(g))
        if node.op == "*":
            return add(mul(differentiate(f), g), mul(f, differentiate(g)))
        if node.op == "/":
            numerator = sub(mul(differentiate(f), g), mul(f, differentiate(g)))
            return div(numerator, power(g, Num(2.0)))
        return _differentiate_power(f, g)
    if isinstance(node, Call):
        inner = differentiate(node.arg)
        arg = node.arg
        if node.func == "ln":
            return div(inner, arg)
        if node.func == "exp":
            return mul(node, inner)
        if node.func == "sqrt":
            return div(inner, mul(Num(2.0), node))
        if node.func == "abs":
            return mul(Call("sign", arg), inner)
        if node.func == "sign":
            return ZERO
    raise TypeError(f"not an expression node: {node!r}")


def _differentiate_power(f: ExprNode, g: ExprNode) -> ExprNode:
    if not depends_on_x(g):
        # g * f^(g-1) * f'
        return mul(mul(g, power(f, sub(g, ONE))), differentiate(f))
    if not depends_on_x(f):
        # f^g * ln(f) * g'
        return mul(mul(BinOp("^", f, g), Call("ln", f)), differentiate(g))
    # f^g = exp(g ln f)  ->  f^g * (g' ln f + g f'/f)
    inner = add(mul(differentiate(g), Call("ln", f)), div(mul(g, differentiate(f)), f))
    return mul(BinOp("^", f, g), inner)
