"""
arrangement.py - central hyperplane arrangements.

An Arrangement is an ordered list of linear forms in ℓ >= 2 variables.
Forms keep their input order and scaling; certificates refer to
hyperplanes by position. Validation rejects zero forms and proportional
pairs (reduced arrangements only).

Arrangement file format:

    # comment lines start with '#'
    vars: 3
    x1
    x2
    x1 + x2 + x3
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

# Imports from local modules
from algebra.poly import LinearForm, Polynomial
from algebra.poly_grammar import PolynomialSyntaxError, parse_polynomial
from algebra.rational_matrix import RationalMatrix
from utils.utils_errors import ContractViolation, UsageError

#####################################
# Errors
#####################################


class ValidationError(ContractViolation):
    """The arrangement is not a valid reduced central arrangement."""


class ZeroFormError(ValidationError):
    def __init__(self, index: int):
        super().__init__(f"hyperplane #{index + 1} has the zero linear form")
        self.index = index


class ProportionalPairError(ValidationError):
    def __init__(self, first: int, second: int):
        super().__init__(f"hyperplanes #{first + 1} and #{second + 1} are proportional")
        self.first = first
        self.second = second


class ArrangementFormatError(UsageError):
    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


#####################################
# Arrangement
#####################################


@dataclass(frozen=True)
class Arrangement:
    nvars: int
    hyperplanes: tuple[LinearForm, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "hyperplanes", tuple(self.hyperplanes))
        if self.nvars < 2:
            raise ValidationError(f"an arrangement needs at least 2 variables, got {self.nvars}")
        for h in self.hyperplanes:
            if h.nvars != self.nvars:
                raise ValidationError(f"form {h} has {h.nvars} coefficients, expected {self.nvars}")

    @classmethod
    def from_polynomials(cls, forms: list[Polynomial]) -> "Arrangement":
        if not forms:
            raise ValidationError("an arrangement needs at least one hyperplane")
        return cls(forms[0].nvars, tuple(LinearForm.from_polynomial(f) for f in forms))

    @classmethod
    def from_strings(cls, nvars: int, forms: list[str]) -> "Arrangement":
        return cls(nvars, tuple(LinearForm.from_polynomial(parse_polynomial(f, nvars)) for f in forms))

    def __len__(self) -> int:
        return len(self.hyperplanes)

    @property
    def size(self) -> int:
        """|A|."""
        return len(self.hyperplanes)

    def validate(self) -> "Arrangement":
        """Raise ZeroFormError / ProportionalPairError; returns self when valid."""
        for i, h in enumerate(self.hyperplanes):
            if h.is_zero():
                raise ZeroFormError(i)
        for i, j in combinations(range(self.size), 2):
            a, b = self.hyperplanes[i].coefficients, self.hyperplanes[j].coefficients
            if all(a[p] * b[q] == a[q] * b[p] for p, q in combinations(range(self.nvars), 2)):
                raise ProportionalPairError(i, j)
        return self

    @cached_property
    def defining_polynomial(self) -> Polynomial:
        """Q(A), the product of the forms in input order."""
        q = Polynomial.one(self.nvars)
        for h in self.hyperplanes:
            q = q * h.as_polynomial()
        return q

    def rank(self) -> int:
        if not self.hyperplanes:
            return 0
        return RationalMatrix([h.coefficients for h in self.hyperplanes]).rank()

    def is_essential(self) -> bool:
        return self.rank() == self.nvars

    def forms(self) -> list[Polynomial]:
        return [h.as_polynomial() for h in self.hyperplanes]


def defining_polynomial(arrangement: Arrangement) -> Polynomial:
    return arrangement.validate().defining_polynomial


def validate(arrangement: Arrangement) -> Arrangement:
    return arrangement.validate()


def is_essential(arrangement: Arrangement) -> bool:
    return arrangement.validate().is_essential()


#####################################
# File Format
#####################################


def parse_header(line: str, line_no: int) -> int:
    key, _, value = line.partition(":")
    if key.strip() != "vars" or not value.strip().isdigit():
        raise ArrangementFormatError(f"expected header 'vars: N', got '{line}'", line_no)
    nvars = int(value)
    if nvars < 1:
        raise ArrangementFormatError(f"need at least one variable, got vars: {nvars}", line_no)
    return nvars


def content_lines(text: str) -> list[tuple[int, str]]:
    """Non-blank, non-comment lines with their 1-based line numbers."""
    out = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((number, line))
    return out


def parse_arrangement(text: str) -> Arrangement:
    """Parse the arrangement file format; the result is not yet validated."""
    lines = content_lines(text)
    if not lines:
        raise ArrangementFormatError("empty arrangement file")
    header_no, header = lines[0]
    nvars = parse_header(header, header_no)
    forms = []
    for number, line in lines[1:]:
        try:
            poly = parse_polynomial(line, nvars)
        except PolynomialSyntaxError as e:
            raise ArrangementFormatError(str(e), number) from e
        if not poly.is_zero() and (poly.degree() != 1 or not poly.is_homogeneous()):
            raise ArrangementFormatError(f"'{line}' is not a homogeneous linear form", number)
        forms.append(LinearForm.from_polynomial(poly))
    if not forms:
        raise ArrangementFormatError("no hyperplanes listed", header_no)
    return Arrangement(nvars, tuple(forms))


def format_arrangement(arrangement: Arrangement) -> str:
    lines = [f"vars: {arrangement.nvars}"]
    lines.extend(str(h) for h in arrangement.hyperplanes)
    return "\n".join(lines) + "\n"
