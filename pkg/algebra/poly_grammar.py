"""
poly_grammar.py - text grammar for polynomials.

Grammar (whitespace insignificant):

    polynomial := term (("+" | "-") term)*
    term       := ["+" | "-"] (coefficient ["*" power ("*" power)*] | power ("*" power)*)
    coefficient:= INT ["/" INT]
    power      := variable ["^" INT]
    variable   := "x" INT          (1 <= INT <= nvars)
                | "x" | "y" | "z"  (aliases for x1, x2, x3 when nvars <= 3)

Errors carry the 0-based character offset in the input text.
format_polynomial emits the canonical form, which parses back to the same
polynomial.
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
from __future__ import annotations

from fractions import Fraction
from typing import Optional

# Imports from local modules
from algebra.poly import Monomial, Polynomial
from utils.utils_errors import UsageError

#####################################
# Errors
#####################################


class PolynomialSyntaxError(UsageError):
    """Grammar violation at a character position."""

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}" + (f" in '{text}'" if text else ""))
        self.position = position
        self.text = text


class UnknownVariableError(PolynomialSyntaxError):
    pass


class MalformedRationalError(PolynomialSyntaxError):
    pass


ALIASES = {"x": 0, "y": 1, "z": 2}

#####################################
# Recursive-Descent Parser
#####################################


class _Cursor:
    def __init__(self, text: str, nvars: int):
        self.text = text
        self.nvars = nvars
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> Optional[str]:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        return ch

    def fail(self, message: str, position: Optional[int] = None, kind=PolynomialSyntaxError):
        return kind(message, self.pos if position is None else position, self.text)

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.fail("expected an integer")
        return int(self.text[start:self.pos])


def _parse_coefficient(cur: _Cursor) -> Fraction:
    start = cur.pos
    numerator = cur.integer()
    if cur.peek() != "/":
        return Fraction(numerator)
    cur.take()
    if cur.peek() is None or not cur.peek().isdigit():
        raise cur.fail("malformed rational: expected a denominator", kind=MalformedRationalError)
    denominator = cur.integer()
    if denominator == 0:
        raise cur.fail("malformed rational: zero denominator", position=start, kind=MalformedRationalError)
    return Fraction(numerator, denominator)


def _parse_variable(cur: _Cursor) -> int:
    cur.skip_ws()
    start = cur.pos
    ch = cur.take()
    nxt = cur.text[cur.pos] if cur.pos < len(cur.text) else ""
    if ch == "x" and nxt.isdigit():
        index = cur.integer()
        if not 1 <= index <= cur.nvars:
            raise cur.fail(f"unknown variable x{index}", position=start, kind=UnknownVariableError)
        return index - 1
    if cur.nvars > 3:
        raise cur.fail(f"alias '{ch}' needs at most 3 variables; use x1..x{cur.nvars}",
                       position=start, kind=UnknownVariableError)
    if ALIASES[ch] >= cur.nvars:
        raise cur.fail(f"unknown variable {ch}", position=start, kind=UnknownVariableError)
    return ALIASES[ch]


def _parse_power(cur: _Cursor, exponents: list[int]) -> None:
    ch = cur.peek()
    if ch is None or ch not in ALIASES:
        raise cur.fail("expected a variable")
    var = _parse_variable(cur)
    power = 1
    if cur.peek() == "^":
        cur.take()
        if cur.peek() is None or not cur.peek().isdigit():
            raise cur.fail("expected a positive integer exponent")
        exp_pos = cur.pos
        power = cur.integer()
        if power < 1:
            raise cur.fail("exponent must be a positive integer", position=exp_pos)
    exponents[var] += power


def _parse_term(cur: _Cursor) -> tuple[Monomial, Fraction]:
    sign = 1
    if cur.peek() in ("+", "-"):
        sign = -1 if cur.take() == "-" else 1
    ch = cur.peek()
    if ch is None:
        raise cur.fail("expected a term")
    coeff = Fraction(1)
    exponents = [0] * cur.nvars
    if ch.isdigit():
        coeff = _parse_coefficient(cur)
        if cur.peek() != "*":
            return tuple(exponents), sign * coeff
        cur.take()
    elif ch not in ALIASES:
        raise cur.fail(f"unexpected character '{ch}'")
    _parse_power(cur, exponents)
    while cur.peek() == "*":
        cur.take()
        _parse_power(cur, exponents)
    return tuple(exponents), sign * coeff


def parse_polynomial(text: str, nvars: int) -> Polynomial:
    """Parse text in the polynomial grammar into a Polynomial in nvars variables."""
    cur = _Cursor(text, nvars)
    terms: dict[Monomial, Fraction] = {}

    def accumulate(term: tuple[Monomial, Fraction]) -> None:
        monomial, coeff = term
        terms[monomial] = terms.get(monomial, Fraction(0)) + coeff

    accumulate(_parse_term(cur))
    while True:
        ch = cur.peek()
        if ch is None:
            break
        if ch not in "+-":
            raise cur.fail(f"unexpected character '{ch}'")
        sign = -1 if cur.take() == "-" else 1
        monomial, coeff = _parse_term(cur)
        accumulate((monomial, sign * coeff))
    return Polynomial(terms, nvars)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: graded-lex term order, x1..xℓ names, reduced rationals."""
    return str(f)
