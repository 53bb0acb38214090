"""
derivation.py - polynomial derivations θ = Σ θ(x_j) ∂_j and membership in D(A).

The degree of a derivation is the polynomial degree of its components,
so the Euler derivation has degree 1 and the exponents of a free
arrangement add up to |A|.

Derivation file format: header `vars: ℓ`, then one block of ℓ lines per
derivation, `dK: <polynomial>` giving θ(x_K); blocks are separated by
blank lines and `#` starts a comment.
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

# Imports from local modules
from algebra.poly import Polynomial, VariableCountError
from algebra.poly_grammar import PolynomialSyntaxError, parse_polynomial
from arrangements.arrangement import Arrangement, parse_header
from utils.utils_errors import ContractViolation, UsageError

#####################################
# Errors
#####################################


class NotLogarithmicError(ContractViolation):
    def __init__(self, row: int, hyperplane: int):
        super().__init__(
            f"derivation #{row + 1} is not logarithmic: θ(α) is not divisible by α "
            f"for hyperplane #{hyperplane + 1}"
        )
        self.row = row
        self.hyperplane = hyperplane


class NonHomogeneousError(ContractViolation):
    def __init__(self, row: int, reason: str = "components are not homogeneous of one degree"):
        super().__init__(f"derivation #{row + 1}: {reason}")
        self.row = row


class DerivationFormatError(UsageError):
    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


#####################################
# Derivation
#####################################


@dataclass(frozen=True)
class Derivation:
    """Component j is θ(x_{j+1})."""

    components: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("a derivation needs at least one component")
        for c in comps:
            if c.nvars != len(comps):
                raise VariableCountError(len(comps), c.nvars)

    @classmethod
    def zero(cls, nvars: int) -> "Derivation":
        return cls(tuple(Polynomial.zero(nvars) for _ in range(nvars)))

    @classmethod
    def partial(cls, index: int, nvars: int, coefficient: Optional[Polynomial] = None) -> "Derivation":
        """coefficient · ∂_{index+1}."""
        coefficient = coefficient if coefficient is not None else Polynomial.one(nvars)
        comps = [Polynomial.zero(nvars)] * nvars
        comps[index] = coefficient
        return cls(tuple(comps))

    @property
    def nvars(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def is_homogeneous(self) -> bool:
        degrees = {c.degree() for c in self.components if c}
        return len(degrees) <= 1 and all(c.is_homogeneous() for c in self.components)

    def degree(self) -> Optional[int]:
        """Common degree of the nonzero components; None for the zero derivation."""
        degrees = [c.degree() for c in self.components if c]
        return max(degrees) if degrees else None

    def scale(self, factor: Polynomial) -> "Derivation":
        return Derivation(tuple(factor * c for c in self.components))

    def __add__(self, other: "Derivation") -> "Derivation":
        if other.nvars != self.nvars:
            raise VariableCountError(self.nvars, other.nvars)
        return Derivation(tuple(a + b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "Derivation":
        return Derivation(tuple(-c for c in self.components))

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + (-other)

    def apply(self, f: Polynomial) -> Polynomial:
        """θ(f) = Σ_j ∂f/∂x_j · θ(x_j)."""
        if f.nvars != self.nvars:
            raise VariableCountError(self.nvars, f.nvars)
        result = Polynomial.zero(self.nvars)
        for j, comp in enumerate(self.components):
            if comp:
                result = result + f.partial_derivative(j) * comp
        return result

    def __str__(self) -> str:
        return ", ".join(f"d{j + 1}: {c}" for j, c in enumerate(self.components))


def apply(theta: Derivation, f: Polynomial) -> Polynomial:
    return theta.apply(f)


def euler(nvars: int) -> Derivation:
    """θ_E = Σ x_i ∂_i."""
    if nvars < 1:
        raise ValueError("the Euler derivation needs at least one variable")
    return Derivation(tuple(Polynomial.variable(i, nvars) for i in range(nvars)))


def q_partial(arrangement: Arrangement, index: int) -> Derivation:
    """Q(A)·∂_{index+1}, logarithmic for every arrangement."""
    return Derivation.partial(index, arrangement.nvars, arrangement.defining_polynomial)


@dataclass(frozen=True)
class LogarithmicCheck:
    ok: bool
    witness: Optional[int] = None  # first offending hyperplane (0-based)

    def __bool__(self) -> bool:
        return self.ok


def is_logarithmic(theta: Derivation, arrangement: Arrangement) -> LogarithmicCheck:
    """
    Test α_H | θ(α_H) for every hyperplane.

    Args:
        theta (Derivation): The derivation to test.
        arrangement (Arrangement): Hyperplanes in arrangement order.

    Returns:
        LogarithmicCheck: ok, or the first failing hyperplane.
    """
    if theta.nvars != arrangement.nvars:
        raise VariableCountError(arrangement.nvars, theta.nvars)
    for index, form in enumerate(arrangement.forms()):
        if theta.apply(form).try_divide(form) is None:
            return LogarithmicCheck(False, index)
    return LogarithmicCheck(True)


def require_logarithmic(thetas: Sequence[Derivation], arrangement: Arrangement) -> None:
    for row, theta in enumerate(thetas):
        check = is_logarithmic(theta, arrangement)
        if not check.ok:
            raise NotLogarithmicError(row, check.witness)


def require_homogeneous(thetas: Sequence[Derivation]) -> list[int]:
    """Degrees of the inputs; raises NonHomogeneousError otherwise."""
    degrees = []
    for row, theta in enumerate(thetas):
        if theta.is_zero():
            raise NonHomogeneousError(row, "the zero derivation has no degree")
        if not theta.is_homogeneous():
            raise NonHomogeneousError(row)
        degrees.append(theta.degree())
    return degrees


def combine(coeffs: Sequence[Polynomial], thetas: Sequence[Derivation]) -> Derivation:
    """Σ f_i θ_i."""
    if len(coeffs) != len(thetas):
        raise ValueError(f"{len(coeffs)} coefficients for {len(thetas)} derivations")
    if not thetas:
        raise ValueError("combine needs at least one derivation")
    nvars = thetas[0].nvars
    totals = [Polynomial.zero(nvars) for _ in range(nvars)]
    for f, theta in zip(coeffs, thetas):
        if theta.nvars != nvars:
            raise VariableCountError(nvars, theta.nvars)
        if not f:
            continue
        for j, comp in enumerate(theta.components):
            if comp:
                totals[j] = totals[j] + f * comp
    return Derivation(tuple(totals))


#####################################
# File Format
#####################################


def parse_derivations(text: str, nvars: Optional[int] = None) -> list[Derivation]:
    """Parse the derivation file format; nvars, when given, must match the header."""
    blocks: list[list[tuple[int, str]]] = [[]]
    header: Optional[int] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        if raw.lstrip().startswith("#"):
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            if blocks[-1]:
                blocks.append([])
            continue
        if header is None:
            header = parse_header(line, number)
            continue
        blocks[-1].append((number, line))
    if header is None:
        raise DerivationFormatError("empty derivation file")
    if nvars is not None and header != nvars:
        raise DerivationFormatError(f"file declares {header} variables, arrangement has {nvars}")

    derivations = []
    for block in (b for b in blocks if b):
        comps: dict[int, Polynomial] = {}
        for number, line in block:
            key, sep, body = line.partition(":")
            key = key.strip()
            if not sep or not key.startswith("d") or not key[1:].isdigit():
                raise DerivationFormatError(f"expected 'dK: <polynomial>', got '{line}'", number)
            k = int(key[1:])
            if not 1 <= k <= header or k - 1 in comps:
                raise DerivationFormatError(f"bad or repeated component '{key}'", number)
            try:
                comps[k - 1] = parse_polynomial(body, header)
            except PolynomialSyntaxError as e:
                raise DerivationFormatError(str(e), number) from e
        if len(comps) != header:
            raise DerivationFormatError(
                f"derivation block needs {header} components, found {len(comps)}", block[0][0]
            )
        derivations.append(Derivation(tuple(comps[j] for j in range(header))))
    if not derivations:
        raise DerivationFormatError("no derivations listed")
    return derivations


def format_derivations(thetas: Sequence[Derivation]) -> str:
    """
    Write derivations in the .der file format.

    Args:
        thetas (Sequence[Derivation]): At least one derivation, all in the same ring.

    Returns:
        str: A 'vars: ℓ' header and one dK block per derivation.
    """
    if not thetas:
        raise ValueError("nothing to format")
    lines = [f"vars: {thetas[0].nvars}", ""]
    for theta in thetas:
        lines.extend(f"d{j + 1}: {c}" for j, c in enumerate(theta.components))
        lines.append("")
    return "\n".join(lines)
