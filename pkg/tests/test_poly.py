from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from algebra.poly import (
    LinearForm,
    NotDivisibleError,
    Polynomial,
    VariableCountError,
    content_primitive,
    gcd,
    gcd_all,
    homogeneous_monomials,
    pseudo_remainder,
    reduce_mod_linear,
)
from conftest import poly, same_up_to_scalar, sympy_symbols, to_sympy
from utils.utils_gen_instances import random_homogeneous, random_polynomial


def form(text: str, nvars: int = 3) -> LinearForm:
    return LinearForm.from_polynomial(poly(text, nvars))


# --- ring structure -------------------------------------------------------


def test_add_cancels_and_prunes():
    assert poly("x + y") + poly("x - y") == poly("2*x")
    assert poly("x^2*y") + poly("-x^2*y") == 0
    assert len(poly("x^2*y") + poly("-x^2*y")) == 0


def test_add_zero_is_identity():
    f = poly("x^2 - 3/4*y*z + 1")
    assert f + Polynomial.zero(3) == f


def test_mul_examples():
    assert poly("x - y") * poly("x + y") == poly("x^2 - y^2")
    f = poly("x*y + z")
    assert f * Polynomial.one(3) == f
    assert (poly("x + y") ** 3 * poly("z^2")).degree() == 5


def test_mismatched_variable_counts_raise():
    with pytest.raises(VariableCountError):
        poly("x1", 2) + poly("x1", 3)
    with pytest.raises(VariableCountError):
        poly("x1", 2) * poly("x1", 3)


def test_scalar_arithmetic():
    f = poly("x + 1")
    assert f * Fraction(1, 2) == poly("1/2*x + 1/2")
    assert 2 * f == poly("2*x + 2")
    assert f - 1 == poly("x")
    assert 1 - f == poly("-x")


@pytest.mark.parametrize("seed", range(10))
def test_ring_axioms_on_random_polynomials(seed):
    rng = random.Random(seed)
    f, g, h = (random_polynomial(rng, 3, 3) for _ in range(3))
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero()
    assert (f * g).degree() == f.degree() + g.degree()


def test_printing_is_canonical():
    f = poly("x1^2 - 2/3*x2*x3")
    assert str(f) == "x1^2 - 2/3*x2*x3"
    assert str(poly("x3 + x1 + x2")) == "x1 + x2 + x3"
    assert str(Polynomial.zero(2)) == "0"
    assert str(poly("-1")) == "-1"


def test_homogeneous_monomials_are_grlex_descending():
    assert homogeneous_monomials(3, 1) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert len(homogeneous_monomials(3, 2)) == 6
    assert homogeneous_monomials(2, -1) == ()


def test_leading_term_and_monic():
    f = poly("3*x*y + 6*x^2 - z")
    assert f.leading_term() == ((2, 0, 0), Fraction(6))
    assert f.monic() == poly("x^2 + 1/2*x*y - 1/6*z")
    with pytest.raises(ValueError):
        Polynomial.zero(3).leading_term()


# --- division --------------------------------------------------------------


def test_exact_divide_examples():
    assert poly("x^2 - y^2").exact_divide(poly("x - y")) == poly("x + y")
    assert poly("x*y*z").exact_divide(poly("y")) == poly("x*z")
    assert Polynomial.zero(3).exact_divide(poly("x + z")) == 0


def test_exact_divide_rejects_non_divisor():
    with pytest.raises(NotDivisibleError):
        poly("x^2 + y").exact_divide(poly("x"))
    assert poly("x^2 + y").try_divide(poly("x")) is None


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        poly("x").exact_divide(Polynomial.zero(3))


@pytest.mark.parametrize("seed", range(10))
def test_exact_divide_inverts_multiplication(seed):
    rng = random.Random(100 + seed)
    f = random_polynomial(rng, 3, 3)
    g = random_polynomial(rng, 3, 2)
    assert (f * g).exact_divide(g) == f
    assert g.divides(f * g)


# --- calculus and substitution --------------------------------------------


def test_partial_derivative():
    f = poly("x^3*y + 2*y*z - 5")
    assert f.partial_derivative(0) == poly("3*x^2*y")
    assert f.partial_derivative(1) == poly("x^3 + 2*z")
    assert poly("7").partial_derivative(2) == 0
    with pytest.raises(IndexError):
        f.partial_derivative(3)


def test_substitute():
    f = poly("x^2 + y*z")
    assert f.substitute(2, poly("x + y")) == poly("x^2 + x*y + y^2")


# --- reduction modulo a linear form ----------------------------------------


def test_reduce_mod_linear_examples():
    assert reduce_mod_linear(poly("x^2 + z^2"), form("z - x")) == poly("2*x^2")
    g = poly("x + y + z")
    assert reduce_mod_linear(g, LinearForm.from_polynomial(g)).is_zero()
    assert reduce_mod_linear(poly("x*y + z*(x + y)"), form("z")) == poly("x*y")


def test_reduce_mod_linear_default_pivot_is_highest_index():
    assert form("x + 2*y").default_pivot() == 1
    reduced = reduce_mod_linear(poly("y^2"), form("x + 2*y"))
    assert reduced == poly("1/4*x^2")
    assert 1 not in reduced.variables()


def test_reduce_mod_linear_explicit_pivot():
    reduced = reduce_mod_linear(poly("x*y"), form("x - y"), pivot=0)
    assert reduced == poly("y^2")
    with pytest.raises(ValueError):
        reduce_mod_linear(poly("x"), form("x"), pivot=1)


@pytest.mark.parametrize("seed", range(10))
def test_reduce_mod_linear_is_a_ring_map_killing_the_form(seed):
    rng = random.Random(200 + seed)
    g = form("x - 2*y + 3*z")
    f = random_homogeneous(rng, 3, 3, density=0.6)
    h = random_homogeneous(rng, 3, 2, density=0.6)
    q = random_homogeneous(rng, 3, 2, density=0.6)
    lifted = f + g.as_polynomial() * q
    assert reduce_mod_linear(lifted, g) == reduce_mod_linear(f, g)
    assert reduce_mod_linear(f * h, g) == reduce_mod_linear(f, g) * reduce_mod_linear(h, g)
    reduced = reduce_mod_linear(f, g)
    assert reduced.is_zero() or (reduced.is_homogeneous() and reduced.degree() == 3)


# --- content, primitive part and gcd ---------------------------------------


def test_content_primitive_examples():
    content, primitive = content_primitive(poly("x^2*y + x*y^2"), 0)
    assert content == poly("y")
    assert primitive == poly("x^2 + x*y")

    content, primitive = content_primitive(poly("x^2 + 1"), 0)
    assert content == 1
    assert primitive == poly("x^2 + 1")

    content, primitive = content_primitive(poly("y^2*z"), 0)
    assert content == poly("y^2*z")
    assert primitive == 1


def test_content_of_zero_raises():
    with pytest.raises(ValueError):
        content_primitive(Polynomial.zero(3), 0)


def test_gcd_examples():
    assert gcd(poly("x^2 - y^2"), poly("x^2 + 2*x*y + y^2")) == poly("x + y")
    assert gcd(poly("x*y"), poly("x*z")) == poly("x")
    assert gcd(poly("x + 1"), poly("y")) == 1
    assert gcd(poly("2*x^2 + 2*x*y"), Polynomial.zero(3)) == poly("x^2 + x*y")
    assert gcd(Polynomial.zero(3), Polynomial.zero(3)).is_zero()


def test_gcd_is_symmetric_and_scale_invariant():
    f, g = poly("x^3*y - x*y^3"), poly("3*x^2*y + 3*x*y^2")
    assert gcd(f, g) == gcd(g, f)
    assert gcd(f.scale(Fraction(-5, 7)), g) == gcd(f, g)
    assert gcd(f, g) == poly("x^2*y + x*y^2")


def test_gcd_all_ignores_zeros():
    assert gcd_all([Polynomial.zero(3), poly("x*y"), poly("x^2")]) == poly("x")
    with pytest.raises(ValueError):
        gcd_all([])


@pytest.mark.parametrize("seed", range(200))
def test_gcd_of_planted_common_factor(seed):
    rng = random.Random(seed)
    nvars = rng.choice([1, 2, 3])
    h = random_polynomial(rng, nvars, 2, terms=3)
    a = random_polynomial(rng, nvars, 2, terms=3)
    b = random_polynomial(rng, nvars, 2, terms=3)
    ours = gcd(h * a, h * b)

    expected = sympy.gcd(to_sympy(h * a), to_sympy(h * b))
    assert same_up_to_scalar(to_sympy(ours), expected, nvars)
    assert ours.leading_coefficient() == 1
    if sympy.gcd(to_sympy(a), to_sympy(b)).is_number:
        assert same_up_to_scalar(to_sympy(ours), to_sympy(h), nvars)


@pytest.mark.parametrize("seed", range(10))
def test_pseudo_remainder_matches_sympy(seed):
    rng = random.Random(300 + seed)
    f = random_polynomial(rng, 2, 4, terms=5)
    g = random_polynomial(rng, 2, 2, terms=3)
    if g.degree_in(0) < 1:
        g = g + poly("x1", 2)
    x1 = sympy_symbols(2)[0]
    theirs = sympy.prem(to_sympy(f), to_sympy(g), x1)
    assert sympy.expand(to_sympy(pseudo_remainder(f, g, 0)) - theirs) == 0
