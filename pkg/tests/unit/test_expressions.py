#!/usr/bin/env python3
"""
Unit tests for the shared expression grammar
"""
import pytest
from sympy.polys.domains import QQ

from residue_localizer.errors import ExpressionParseError
from residue_localizer.expressions import (
    BinaryOp,
    Negate,
    Number,
    Power,
    Symbol,
    evaluate,
    parse_expression,
    symbols,
    tokenize,
)

pytestmark = pytest.mark.unit


def integer_value(source, env=None):
    env = env or {}
    return evaluate(parse_expression(source), lambda v: v, lambda name: env[name])


def test_rational_literal_is_one_token():
    tokens = tokenize("3/2*x")
    assert [t.kind for t in tokens] == ["number", "op", "ident"]
    assert tokens[0].text == "3/2"


def test_unary_minus_binds_looser_than_power():
    assert parse_expression("-x^2") == Negate(Power(Symbol("x"), 2))


def test_precedence_and_associativity():
    tree = parse_expression("a - b - c")
    assert tree == BinaryOp("-", BinaryOp("-", Symbol("a"), Symbol("b")), Symbol("c"))
    assert integer_value("1 + 2*3") == 7
    assert integer_value("(1 + 2)*3") == 9
    assert integer_value("2^3^2") == 64


def test_rational_coefficients():
    assert parse_expression("1/2") == Number(QQ(1, 2))
    assert integer_value("1/2*x + 1/2*x", {"x": QQ(3)}) == QQ(3)


def test_negation_inside_product():
    assert integer_value("2*-x", {"x": 5}) == -10


@pytest.mark.parametrize("source, message", [
    ("", "empty expression"),
    ("   ", "empty expression"),
    ("x^-1", "negative exponent"),
    ("x^(2)", "nonnegative integer literal"),
    ("x^1/2", "nonnegative integer literal"),
    ("(x + 1", r"expected '\)'"),
    ("x $ y", "unexpected character '\\$'"),
    ("x y", "unexpected 'y' at position 2"),
    ("x +", "unexpected end of input"),
])
def test_errors(source, message):
    with pytest.raises(ExpressionParseError, match=message):
        parse_expression(source)


def test_symbols_in_first_appearance_order():
    assert symbols(parse_expression("b*a + b^2 - c")) == ["b", "a", "c"]
