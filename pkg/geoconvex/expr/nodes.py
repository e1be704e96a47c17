"""Immutable expression tree nodes and the canonical serializer."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple, Union

BINARY_OPS = ("+", "-", "*", "/", "^")
# "sign" is produced by differentiating abs; it is accepted by the parser so that
# printed derivatives parse back.
FUNCTIONS = ("ln", "exp", "sqrt", "abs", "sign")


@dataclass(frozen=True)
class Num:
    value: float

    @property
    def children(self) -> Tuple["ExprNode", ...]:
        return ()


@dataclass(frozen=True)
class Var:
    """The integration variable x."""

    @property
    def children(self) -> Tuple["ExprNode", ...]:
        return ()


@dataclass(frozen=True)
class Param:
    name: str

    @property
    def children(self) -> Tuple["ExprNode", ...]:
        return ()


@dataclass(frozen=True)
class Neg:
    operand: "ExprNode"

    @property
    def children(self) -> Tuple["ExprNode", ...]:
        return (self.operand,)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "ExprNode"
    right: "ExprNode"

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown binary operator {self.op!r}")

    @property
    def children(self) -> Tuple["ExprNode", ...]:
        return (self.left, self.right)


@dataclass(frozen=True)
class Call:
    func: str
    arg: "ExprNode"

    def __post_init__(self):
        if self.func not in FUNCTIONS:
            raise ValueError(f"unknown function {self.func!r}")

    @property
    def children(self) -> Tuple["ExprNode", ...]:
        return (self.arg,)


ExprNode = Union[Num, Var, Param, Neg, BinOp, Call]


def depends_on_x(node: ExprNode) -> bool:
    if isinstance(node, Var):
        return True
    return any(depends_on_x(child) for child in node.children)


def parameters(node: ExprNode) -> frozenset:
    """Names of every parameter leaf in the tree."""
    if isinstance(node, Param):
        return frozenset((node.name,))
    names: frozenset = frozenset()
    for child in node.children:
        names |= parameters(child)
    return names


def to_source(node: ExprNode) -> str:
    """Canonical, fully parenthesized text form; parses back to the same tree."""
    if isinstance(node, Num):
        value = float(node.value)
        if math.isnan(value):
            raise ValueError("NaN has no source form")
        text = "1e999" if math.isinf(value) else repr(abs(value))
        return f"(-{text})" if math.copysign(1.0, value) < 0 else text
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Param):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, BinOp):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")
