from __future__ import annotations

import random
from fractions import Fraction

import pytest

from algebra.poly import Polynomial
from algebra.poly_grammar import (
    MalformedRationalError,
    PolynomialSyntaxError,
    UnknownVariableError,
    format_polynomial,
    parse_polynomial,
)
from utils.utils_errors import EXIT_USAGE
from utils.utils_gen_instances import random_polynomial


def test_parse_mixed_rational_term():
    f = parse_polynomial("x1^2 - 2/3*x2*x3", 3)
    assert f.coefficient((2, 0, 0)) == 1
    assert f.coefficient((0, 1, 1)) == Fraction(-2, 3)
    assert len(f) == 2


def test_parse_zero():
    assert parse_polynomial("0", 3).is_zero()
    assert parse_polynomial("x - x", 2).is_zero()


def test_trailing_operator_reports_position():
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_polynomial("x1 +", 3)
    assert info.value.position == 4
    assert info.value.exit_code == EXIT_USAGE


def test_aliases_match_indexed_names():
    assert parse_polynomial("x*y + z", 3) == parse_polynomial("x1*x2 + x3", 3)
    assert parse_polynomial("x^2 - y", 2) == parse_polynomial("x1^2 - x2", 2)


@pytest.mark.parametrize("text, nvars", [("x4", 3), ("x0", 2), ("y", 1), ("z", 2), ("x", 4)])
def test_unknown_variables(text, nvars):
    with pytest.raises(UnknownVariableError):
        parse_polynomial(text, nvars)


@pytest.mark.parametrize("text", ["1/0", "1/ x", "3/"])
def test_malformed_rationals(text):
    with pytest.raises(MalformedRationalError):
        parse_polynomial(text, 3)


@pytest.mark.parametrize("text", ["x1^", "x1^0", "2 x1", "x1 ** 2", "(x1)", "", "x1 + + x2 - ", "x1 * "])
def test_syntax_errors(text):
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial(text, 3)


def test_whitespace_is_insignificant():
    assert parse_polynomial("  x1 ^ 2 *  x2 -  3 / 4 ", 3) == parse_polynomial("x1^2*x2 - 3/4", 3)


def test_signs_and_repeated_factors():
    assert parse_polynomial("-x1", 2) == -Polynomial.variable(0, 2)
    assert parse_polynomial("-3/4", 2) == Polynomial.constant(Fraction(-3, 4), 2)
    assert parse_polynomial("+x1*x1*x2^2", 2) == parse_polynomial("x1^2*x2^2", 2)
    assert parse_polynomial("2*x1 + 3*x1", 2) == parse_polynomial("5*x1", 2)


def test_format_is_canonical():
    f = parse_polynomial("x3 - 2/4*x1*x2 + x1^2", 3)
    assert format_polynomial(f) == "x1^2 - 1/2*x1*x2 + x3"


@pytest.mark.parametrize("seed", range(5))
def test_formatted_text_parses_back(seed):
    rng = random.Random(seed)
    nvars = rng.choice([2, 3, 4, 5])
    f = random_polynomial(rng, nvars, 3, terms=6)
    assert parse_polynomial(format_polynomial(f), nvars) == f
