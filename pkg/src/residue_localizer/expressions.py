#!/usr/bin/env python3
"""
Expression grammar shared by class and invariant-polynomial parsing

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' INT)*
    atom   := RATIONAL | IDENT | '(' expr ')'

Rational literals are ``p`` or ``p/q``; there is no division operator.
The tree is evaluated against caller-supplied callbacks, so the same
parser builds ClassExpr values and sympy Chern-ring polynomials.
"""
import logging
import re
from dataclasses import dataclass
from typing import Callable, List, Optional, TypeVar, Union

from .errors import ExpressionParseError
from .scalars import Rational, parse_rational

logger = logging.getLogger(__name__)

T = TypeVar("T")

# Groups of increasing binding power; unary minus sits between '*' and '^'
OPERATORS = [
    [("+", "left"), ("-", "left")],
    [("*", "left")],
    [("neg", "prefix")],
    [("^", "left")],
]
OPERATOR_PREC = {name: idx for idx, group in enumerate(OPERATORS) for name, _ in group}
BINARY_OPERATORS = {"+", "-", "*", "^"}

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+(?:\s*/\s*\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # number | ident | op
    text: str
    pos: int


@dataclass(frozen=True)
class Number:
    value: Rational


@dataclass(frozen=True)
class Symbol:
    name: str


@dataclass(frozen=True)
class Negate:
    operand: "Node"


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Power:
    base: "Node"
    exponent: int


Node = Union[Number, Symbol, Negate, BinaryOp, Power]


def tokenize(source: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    stripped_end = len(source.rstrip())
    while pos < stripped_end:
        match = _TOKEN.match(source, pos)
        if not match:
            offset = pos + len(source[pos:]) - len(source[pos:].lstrip())
            raise ExpressionParseError(f"unexpected character {source[offset]!r} at position {offset}")
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.index = 0

    def peek(self) -> Optional[Token]:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return None

    def advance(self) -> Token:
        token = self.peek()
        if token is None:
            raise ExpressionParseError(f"unexpected end of input in {self.source!r}")
        self.index += 1
        return token

    def atom(self) -> Node:
        token = self.advance()
        if token.kind == "number":
            return Number(parse_rational(token.text))
        if token.kind == "ident":
            return Symbol(token.text)
        if token.text == "-":
            return Negate(self.expression(OPERATOR_PREC["neg"]))
        if token.text == "(":
            inner = self.expression(0)
            closing = self.peek()
            if closing is None or closing.text != ")":
                raise ExpressionParseError(f"expected ')' to close '(' at position {token.pos}")
            self.index += 1
            return inner
        raise ExpressionParseError(f"unexpected {token.text!r} at position {token.pos}")

    def exponent(self) -> int:
        token = self.advance()
        if token.text == "-":
            raise ExpressionParseError(f"negative exponent at position {token.pos}")
        if token.kind != "number" or "/" in token.text:
            raise ExpressionParseError(
                f"exponent must be a nonnegative integer literal, got {token.text!r} at position {token.pos}"
            )
        return int(token.text)

    def expression(self, min_prec: int) -> Node:
        lhs = self.atom()
        while True:
            token = self.peek()
            if token is None or token.kind != "op" or token.text not in BINARY_OPERATORS:
                return lhs
            prec = OPERATOR_PREC[token.text]
            if prec < min_prec:
                return lhs
            self.index += 1
            if token.text == "^":
                lhs = Power(lhs, self.exponent())
                continue
            lhs = BinaryOp(token.text, lhs, self.expression(prec + 1))

    def parse(self) -> Node:
        if not self.tokens:
            raise ExpressionParseError("empty expression")
        tree = self.expression(0)
        rest = self.peek()
        if rest is not None:
            raise ExpressionParseError(f"unexpected {rest.text!r} at position {rest.pos}")
        return tree


def parse_expression(source: str) -> Node:
    """Parse ``source`` into an expression tree"""
    return _Parser(source).parse()


def evaluate(node: Node, number: Callable[[Rational], T], symbol: Callable[[str], T]) -> T:
    """Fold the tree with +, -, * and ** on the values the callbacks return"""
    if isinstance(node, Number):
        return number(node.value)
    if isinstance(node, Symbol):
        return symbol(node.name)
    if isinstance(node, Negate):
        return -evaluate(node.operand, number, symbol)
    if isinstance(node, Power):
        return evaluate(node.base, number, symbol) ** node.exponent
    left = evaluate(node.left, number, symbol)
    right = evaluate(node.right, number, symbol)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right


def symbols(node: Node) -> List[str]:
    """Identifier names in order of first appearance"""
    seen: List[str] = []

    def walk(current: Node) -> None:
        if isinstance(current, Symbol):
            if current.name not in seen:
                seen.append(current.name)
        elif isinstance(current, Negate):
            walk(current.operand)
        elif isinstance(current, Power):
            walk(current.base)
        elif isinstance(current, BinaryOp):
            walk(current.left)
            walk(current.right)

    walk(node)
    return seen
