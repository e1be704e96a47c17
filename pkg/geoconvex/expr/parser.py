"""Lexer and recursive-descent parser for the function mini-language.

Grammar (precedence low to high: + - , * / , unary -, ^ right-assoc)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := primary ("^" unary)?
    primary := NUMBER | "x" | IDENT "(" expr ")" | IDENT | "(" expr ")"

So ``-x^2`` is ``-(x^2)`` and ``2^-x`` is ``2^(-x)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List

from ..errors import ExprSyntaxError, UnknownFunctionError
from .nodes import FUNCTIONS, BinOp, Call, ExprNode, Neg, Num, Param, Var

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z]+)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # number | ident | op | end
    text: str
    offset: int


def tokenize(source: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            raise ExprSyntaxError(f"unexpected character {source[pos]!r}", pos, source)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(Token("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _at_op(self, *ops: str) -> bool:
        return self.current.kind == "op" and self.current.text in ops

    def _error(self, message: str, token: Token = None) -> ExprSyntaxError:
        token = token or self.current
        return ExprSyntaxError(message, token.offset, self.source)

    def _expect_close(self, opening: Token) -> None:
        if self._at_op(")"):
            self._advance()
            return
        if self.current.kind == "end":
            raise self._error(f"unbalanced parenthesis opened at offset {opening.offset}")
        raise self._error(f"expected ')' but found {self.current.text!r}")

    def parse(self) -> ExprNode:
        if self.current.kind == "end":
            raise self._error("empty expression")
        node = self.expr()
        if self.current.kind != "end":
            if self._at_op(")"):
                raise self._error("unbalanced parenthesis ')'")
            raise self._error(f"unexpected token {self.current.text!r}")
        return node

    def expr(self) -> ExprNode:
        node = self.term()
        while self._at_op("+", "-"):
            op = self._advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> ExprNode:
        node = self.unary()
        while self._at_op("*", "/"):
            op = self._advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> ExprNode:
        if self._at_op("-"):
            self._advance()
            operand = self.unary()
            # -<number> is a single literal
            return Num(-operand.value) if isinstance(operand, Num) else Neg(operand)
        return self.power()

    def power(self) -> ExprNode:
        base = self.primary()
        if self._at_op("^"):
            self._advance()
            return BinOp("^", base, self.unary())
        return base

    def primary(self) -> ExprNode:
        token = self.current
        if token.kind == "number":
            self._advance()
            return Num(float(token.text))
        if token.kind == "ident":
            self._advance()
            if self._at_op("("):
                if token.text not in FUNCTIONS:
                    raise UnknownFunctionError(f"unknown function {token.text!r}", token.offset, self.source)
                opening = self._advance()
                arg = self.expr()
                self._expect_close(opening)
                return Call(token.text, arg)
            if token.text == "x":
                return Var()
            if token.text in FUNCTIONS:
                raise self._error(f"function {token.text!r} needs a parenthesized argument", token)
            return Param(token.text)
        if self._at_op("("):
            opening = self._advance()
            node = self.expr()
            self._expect_close(opening)
            return node
        if token.kind == "end":
            raise self._error("unexpected end of input")
        raise self._error(f"unexpected token {token.text!r}")


def parse(source: str) -> ExprNode:
    """Parse ``source`` into an immutable expression tree."""
    if not isinstance(source, str) or not source.strip():
        raise ExprSyntaxError("empty expression", 0, source if isinstance(source, str) else "")
    return _Parser(source).parse()
