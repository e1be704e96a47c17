"""Function mini-language: parse, evaluate and differentiate one-variable expressions."""

from .differentiate import differentiate
from .evaluate import evaluate
from .handle import FunctionHandle
from .nodes import BinOp, Call, ExprNode, Neg, Num, Param, Var, to_source
from .parser import parse

__all__ = [
    'parse',
    'evaluate',
    'differentiate',
    'to_source',
    'FunctionHandle',
    'ExprNode',
    'Num',
    'Var',
    'Param',
    'Neg',
    'BinOp',
    'Call',
]
