"""
poly.py - exact sparse multivariate polynomials over the rationals.

A Polynomial is an immutable map from exponent tuples (monomials) to
nonzero Fractions, tagged with its number of variables. Terms are kept
in graded lexicographic order (x1 > x2 > ... > xℓ) whenever an order is
needed, so equal polynomials always print and compare identically.

Also here:
- LinearForm, the coefficient vector of a homogeneous degree-1 form.
- reduce_mod_linear, the quotient map S -> S/(g) realized as substitution.
- content_primitive and gcd: recursive content/primitive decomposition
  with a subresultant polynomial remainder sequence in the main variable.
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Optional, Union

# Imports from local modules
from utils.utils_errors import ContractViolation

#####################################
# Types and Errors
#####################################

Monomial = tuple[int, ...]
Scalar = Union[int, Fraction]


class VariableCountError(ContractViolation):
    """Two operands live in polynomial rings with different variable counts."""

    def __init__(self, left: int, right: int):
        super().__init__(f"variable-count mismatch: {left} vs {right}")
        self.left = left
        self.right = right


class NotDivisibleError(ArithmeticError):
    """Raised by exact_divide when the divisor does not divide the dividend."""


def grlex_key(monomial: Monomial) -> tuple[int, Monomial]:
    """Sort key: larger key means larger monomial in graded lex order."""
    return (sum(monomial), monomial)


@lru_cache(maxsize=None)
def homogeneous_monomials(nvars: int, degree: int) -> tuple[Monomial, ...]:
    """All monomials of the given total degree, largest first (grlex)."""
    if degree < 0:
        return ()
    if nvars == 1:
        return ((degree,),)
    out: list[Monomial] = []
    for first in range(degree, -1, -1):
        for rest in homogeneous_monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


def _add_monomials(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


#####################################
# Polynomial
#####################################


class Polynomial:
    """Immutable sparse polynomial in nvars variables with Fraction coefficients."""

    __slots__ = ("_terms", "_nvars", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None, nvars: int = 1):
        if nvars < 1:
            raise ValueError(f"nvars must be positive, got {nvars}")
        clean: dict[Monomial, Fraction] = {}
        for monomial, coeff in (terms or {}).items():
            monomial = tuple(int(e) for e in monomial)
            if len(monomial) != nvars or any(e < 0 for e in monomial):
                raise ValueError(f"bad monomial {monomial} for {nvars} variables")
            value = Fraction(coeff)
            if value:
                clean[monomial] = clean.get(monomial, Fraction(0)) + value
        self._terms = {m: c for m, c in clean.items() if c}
        self._nvars = nvars
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction], nvars: int) -> "Polynomial":
        # terms must already be pruned of zeros and well-shaped
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._nvars = nvars
        obj._hash = None
        return obj

    # --- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw({}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "Polynomial":
        return cls.constant(1, nvars)

    @classmethod
    def constant(cls, value: Scalar, nvars: int) -> "Polynomial":
        value = Fraction(value)
        return cls._raw({(0,) * nvars: value} if value else {}, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int) -> "Polynomial":
        """The coordinate x_{index+1} (index is 0-based)."""
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls._raw({tuple(exps): Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, exponents: Monomial, coeff: Scalar = 1) -> "Polynomial":
        return cls({tuple(exponents): coeff}, len(exponents))

    # --- basic accessors ----------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in graded lex order, leading term first."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(tuple(monomial), Fraction(0))

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get((0,) * self._nvars, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def degree_in(self, var: int) -> int:
        """Degree in x_{var+1}; -1 for the zero polynomial."""
        return max((m[var] for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def variables(self) -> set[int]:
        """0-based indices of the variables that actually occur."""
        return {i for m in self._terms for i, e in enumerate(m) if e}

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        monomial = max(self._terms, key=grlex_key)
        return monomial, self._terms[monomial]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def monic(self) -> "Polynomial":
        """Scale so the graded-lex leading coefficient is 1 (zero stays zero)."""
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    # --- ring structure -----------------------------------------------

    def _coerce(self, other: object) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            if other._nvars != self._nvars:
                raise VariableCountError(self._nvars, other._nvars)
            return other
        if isinstance(other, (int, Rational)):
            return Polynomial.constant(Fraction(other), self._nvars)
        return None

    def __add__(self, other: object) -> "Polynomial":
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        terms = dict(self._terms)
        for m, c in g._terms.items():
            value = terms.get(m, 0) + c
            if value:
                terms[m] = value
            else:
                terms.pop(m, None)
        return Polynomial._raw(terms, self._nvars)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()}, self._nvars)

    def __sub__(self, other: object) -> "Polynomial":
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        return self + (-g)

    def __rsub__(self, other: object) -> "Polynomial":
        return (-self) + other

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = Fraction(factor)
        if not factor:
            return Polynomial.zero(self._nvars)
        return Polynomial._raw({m: c * factor for m, c in self._terms.items()}, self._nvars)

    def __mul__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.scale(other)
        g = self._coerce(other)
        if g is None:
            return NotImplemented
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in g._terms.items():
                m = _add_monomials(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return Polynomial._raw({m: c for m, c in terms.items() if c}, self._nvars)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.one(self._nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._nvars == other._nvars and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    # --- division -----------------------------------------------------

    def try_divide(self, divisor: "Polynomial") -> Optional["Polynomial"]:
        """Exact quotient self / divisor, or None when divisor does not divide self."""
        coerced = self._coerce(divisor)
        if coerced is None:
            raise TypeError(f"cannot divide a polynomial by {type(divisor).__name__}")
        divisor = coerced
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_m, lead_c = divisor.leading_term()
        remainder = dict(self._terms)
        quotient: dict[Monomial, Fraction] = {}
        while remainder:
            m = max(remainder, key=grlex_key)
            if any(a < b for a, b in zip(m, lead_m)):
                return None
            q_m = tuple(a - b for a, b in zip(m, lead_m))
            q_c = remainder[m] / lead_c
            quotient[q_m] = q_c
            for d_m, d_c in divisor._terms.items():
                target = _add_monomials(q_m, d_m)
                value = remainder.get(target, 0) - q_c * d_c
                if value:
                    remainder[target] = value
                else:
                    remainder.pop(target, None)
        return Polynomial._raw(quotient, self._nvars)

    def exact_divide(self, divisor: "Polynomial") -> "Polynomial":
        quotient = self.try_divide(divisor)
        if quotient is None:
            raise NotDivisibleError(f"{divisor} does not divide {self}")
        return quotient

    def divides(self, other: "Polynomial") -> bool:
        return self._coerce(other).try_divide(self) is not None

    # --- calculus and substitution ------------------------------------

    def partial_derivative(self, var: int) -> "Polynomial":
        """Formal derivative with respect to x_{var+1}."""
        if not 0 <= var < self._nvars:
            raise IndexError(f"variable index {var} out of range for {self._nvars} variables")
        terms: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            if m[var]:
                lowered = m[:var] + (m[var] - 1,) + m[var + 1:]
                terms[lowered] = c * m[var]
        return Polynomial._raw(terms, self._nvars)

    def coefficients_in(self, var: int) -> list["Polynomial"]:
        """View as univariate in x_{var+1}: list c_0..c_n with self = sum c_k x^k."""
        buckets: dict[int, dict[Monomial, Fraction]] = {}
        for m, c in self._terms.items():
            stripped = m[:var] + (0,) + m[var + 1:]
            buckets.setdefault(m[var], {})[stripped] = c
        top = max(buckets, default=-1)
        return [Polynomial._raw(buckets.get(k, {}), self._nvars) for k in range(top + 1)]

    @staticmethod
    def from_coefficients(coeffs: Iterable["Polynomial"], var: int, nvars: int) -> "Polynomial":
        result = Polynomial.zero(nvars)
        x = Polynomial.variable(var, nvars)
        power = Polynomial.one(nvars)
        for c in coeffs:
            if c:
                result = result + c * power
            power = power * x
        return result

    def substitute(self, var: int, value: "Polynomial") -> "Polynomial":
        """Replace x_{var+1} by the polynomial value."""
        value = self._coerce(value)
        result = Polynomial.zero(self._nvars)
        power = Polynomial.one(self._nvars)
        for k, coeff in enumerate(self.coefficients_in(var)):
            if k:
                power = power * value
            if coeff:
                result = result + coeff * power
        return result

    # --- printing -----------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for index, (m, c) in enumerate(self.terms()):
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            factors = [f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in enumerate(m) if e]
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = f"{magnitude}*" + "*".join(factors)
            if index == 0:
                pieces.append(f"-{body}" if sign == "-" else body)
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial('{self}', nvars={self._nvars})"


#####################################
# Linear Forms
#####################################


@dataclass(frozen=True)
class LinearForm:
    """Coefficients (a_1, ..., a_ℓ) of the form a_1 x_1 + ... + a_ℓ x_ℓ."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(Fraction(a) for a in self.coefficients))

    @property
    def nvars(self) -> int:
        return len(self.coefficients)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def as_polynomial(self) -> Polynomial:
        n = self.nvars
        terms = {}
        for i, a in enumerate(self.coefficients):
            if a:
                exps = [0] * n
                exps[i] = 1
                terms[tuple(exps)] = a
        return Polynomial._raw(terms, n)

    def default_pivot(self) -> int:
        """Highest-index variable with a nonzero coefficient."""
        for i in range(self.nvars - 1, -1, -1):
            if self.coefficients[i]:
                return i
        raise ValueError("the zero linear form has no pivot variable")

    @classmethod
    def from_polynomial(cls, poly: Polynomial) -> "LinearForm":
        if poly.is_zero():
            return cls((Fraction(0),) * poly.nvars)
        if poly.degree() != 1 or not poly.is_homogeneous():
            raise ValueError(f"{poly} is not a homogeneous linear form")
        coeffs = []
        for i in range(poly.nvars):
            exps = [0] * poly.nvars
            exps[i] = 1
            coeffs.append(poly.coefficient(tuple(exps)))
        return cls(tuple(coeffs))

    def __str__(self) -> str:
        return str(self.as_polynomial())


#####################################
# Quotient Map Modulo a Linear Form
#####################################


def reduce_mod_linear(f: Polynomial, g: LinearForm, pivot: Optional[int] = None) -> Polynomial:
    """
    Representative of f in S/(g) ≅ K[variables other than the pivot].

    x_pivot is replaced by -(g - c*x_pivot)/c where c is the pivot coefficient.
    The default pivot is the highest-index variable with nonzero coefficient.
    """
    if g.nvars != f.nvars:
        raise VariableCountError(f.nvars, g.nvars)
    if pivot is None:
        pivot = g.default_pivot()
    c = g.coefficients[pivot]
    if not c:
        raise ValueError(f"pivot coefficient of x{pivot + 1} in {g} is zero")
    replacement = Polynomial.zero(f.nvars)
    for j, a in enumerate(g.coefficients):
        if j != pivot and a:
            replacement = replacement + Polynomial.variable(j, f.nvars).scale(-a / c)
    return f.substitute(pivot, replacement)


#####################################
# Content, Primitive Part, GCD
#####################################


def content_primitive(f: Polynomial, main: int) -> tuple[Polynomial, Polynomial]:
    """
    Split f = content * primitive viewing f as univariate in x_{main+1}.

    The content is the monic gcd of the coefficient polynomials; the
    primitive part absorbs the remaining rational scalar.
    """
    if f.is_zero():
        raise ValueError("content of the zero polynomial is undefined")
    coeffs = [c for c in f.coefficients_in(main) if c]
    content = reduce(_gcd_nonzero, coeffs).monic()
    return content, f.exact_divide(content)


def gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic greatest common divisor; gcd(f, 0) = monic f, gcd(0, 0) = 0."""
    if f.nvars != g.nvars:
        raise VariableCountError(f.nvars, g.nvars)
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    return _gcd_nonzero(f, g).monic()


def gcd_all(polys: Iterable[Polynomial]) -> Polynomial:
    """Iterated gcd of several polynomials (zeros are ignored)."""
    polys = list(polys)
    if not polys:
        raise ValueError("gcd of an empty list")
    return reduce(gcd, polys)


def _gcd_nonzero(f: Polynomial, g: Polynomial) -> Polynomial:
    # gcd up to a rational unit; both arguments nonzero
    if f.is_constant() or g.is_constant():
        return Polynomial.one(f.nvars)
    main = min(f.variables() | g.variables())
    f_content, f_prim = content_primitive(f, main)
    g_content, g_prim = content_primitive(g, main)
    return _gcd_nonzero(f_content, g_content) * _primitive_gcd(f_prim, g_prim, main)


def pseudo_remainder(f: Polynomial, g: Polynomial, var: int) -> Polynomial:
    """prem(f, g) in x_{var+1}: lc(g)^(deg f - deg g + 1) * f reduced modulo g."""
    if g.is_zero():
        raise ZeroDivisionError("pseudo-division by the zero polynomial")
    rem = _prem(f.coefficients_in(var), g.coefficients_in(var))
    return Polynomial.from_coefficients(rem, var, f.nvars)


def _strip(coeffs: list[Polynomial]) -> list[Polynomial]:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return coeffs


def _prem(a: list[Polynomial], b: list[Polynomial]) -> list[Polynomial]:
    n = len(b) - 1
    lead_b = b[-1]
    remaining = len(a) - len(b) + 1
    r = _strip(list(a))
    if remaining < 0:
        return r
    while r and len(r) - 1 >= n:
        lead_r = r[-1]
        shift = len(r) - 1 - n
        r = [c * lead_b for c in r]
        for k, bc in enumerate(b):
            r[k + shift] = r[k + shift] - lead_r * bc
        r = _strip(r)
        remaining -= 1
    factor = lead_b ** remaining
    return [c * factor for c in r]


def _primitive_gcd(a: Polynomial, b: Polynomial, main: int) -> Polynomial:
    # subresultant PRS for two polynomials primitive in x_{main+1}
    nvars = a.nvars
    if a.degree_in(main) <= 0 or b.degree_in(main) <= 0:
        return Polynomial.one(nvars)
    if a.degree_in(main) < b.degree_in(main):
        a, b = b, a
    big, small = a.coefficients_in(main), b.coefficients_in(main)
    g = h = Polynomial.one(nvars)
    while True:
        delta = len(big) - len(small)
        rem = _prem(big, small)
        if not rem:
            break
        if len(rem) == 1:
            return Polynomial.one(nvars)
        big = small
        divisor = g * h ** delta
        small = [c.exact_divide(divisor) for c in rem]
        g = big[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = (g ** delta).exact_divide(h ** (delta - 1))
    last = Polynomial.from_coefficients(small, main, nvars)
    return content_primitive(last, main)[1]
