"""
minors.py - derivation matrices and their signed maximal minors.

For rows θ_1..θ_p (p >= ℓ) the derivation matrix has entry (i, j) equal to
θ_i(x_j). For an ℓ-subset I of the rows:

    Δ_I = (-1)^σ(I) det M_I,   σ(I) = Σ_k (i_k - k),   Δ_I = g_I · Q(A)

For exactly ℓ+1 rows the coefficients g_i = (-1)^i det M_i / Q (M_i omits
row i, i counted from 1) satisfy Σ g_i θ_i = 0.

Index sets passed through the Python API are 0-based tuples; σ(I) takes
the same value in either convention.
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

# Imports from local modules
from algebra.poly import Polynomial
from arrangements.arrangement import Arrangement
from arrangements.derivation import Derivation, combine, require_logarithmic
from utils.utils_errors import ContractViolation, UsageError
from utils.utils_logger import logger

PolynomialMatrix = Sequence[Sequence[Polynomial]]

COFACTOR_LIMIT = 4

#####################################
# Errors
#####################################


class DerivationCountError(UsageError):
    def __init__(self, expected: str, got: int):
        super().__init__(f"expected {expected} derivations, got {got}")
        self.got = got


class NotDivisibleByQError(ContractViolation):
    def __init__(self, indices: Sequence[int]):
        label = ",".join(str(i + 1) for i in indices)
        super().__init__(f"Q(A) does not divide the minor on rows {{{label}}}")
        self.indices = tuple(indices)


class AllMinorsZeroError(ContractViolation):
    def __init__(self):
        super().__init__("every maximal minor vanishes: the derivation matrix has rank < ℓ")


class DegenerateFrameError(ContractViolation):
    def __init__(self):
        super().__init__("det M[θ_1..θ_ℓ] = 0: the frame does not span a rank-ℓ submodule")


class RelationCheckError(ContractViolation):
    """A computed relation failed to combine to zero."""


#####################################
# Determinants
#####################################


def _check_square(matrix: PolynomialMatrix) -> int:
    n = len(matrix)
    if n == 0:
        raise ValueError("determinant of an empty matrix")
    if any(len(row) != n for row in matrix):
        raise ValueError(f"determinant needs a square matrix, got {n} rows of lengths "
                         f"{sorted({len(r) for r in matrix})}")
    return n


def cofactor_determinant(matrix: PolynomialMatrix) -> Polynomial:
    """Laplace expansion along the first row."""
    n = _check_square(matrix)
    if n == 1:
        return matrix[0][0]
    nvars = matrix[0][0].nvars
    total = Polynomial.zero(nvars)
    for j, entry in enumerate(matrix[0]):
        if not entry:
            continue
        minor = [row[:j] + row[j + 1:] for row in (list(r) for r in matrix[1:])]
        term = entry * cofactor_determinant(minor)
        total = total - term if j % 2 else total + term
    return total


def bareiss_determinant(matrix: PolynomialMatrix) -> Polynomial:
    """Fraction-free elimination over S; every division is exact."""
    n = _check_square(matrix)
    work = [list(row) for row in matrix]
    nvars = work[0][0].nvars
    sign = 1
    previous = Polynomial.one(nvars)
    for k in range(n - 1):
        if not work[k][k]:
            swap = next((i for i in range(k + 1, n) if work[i][k]), None)
            if swap is None:
                return Polynomial.zero(nvars)
            work[k], work[swap] = work[swap], work[k]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (work[i][j] * pivot - work[i][k] * work[k][j]).exact_divide(previous)
        previous = pivot
    det = work[n - 1][n - 1]
    return det if sign > 0 else -det


def determinant(matrix: PolynomialMatrix) -> Polynomial:
    """Cofactor expansion up to COFACTOR_LIMIT, Bareiss above it."""
    if _check_square(matrix) <= COFACTOR_LIMIT:
        return cofactor_determinant(matrix)
    return bareiss_determinant(matrix)


def sign_exponent(indices: Sequence[int], nvars: int, nrows: Optional[int] = None) -> int:
    """σ(I) = Σ_k (i_k - k) for a strictly increasing index set of size ℓ."""
    indices = tuple(indices)
    if len(indices) != nvars:
        raise ValueError(f"index set {indices} must have exactly {nvars} elements")
    if any(b <= a for a, b in zip(indices, indices[1:])):
        raise ValueError(f"index set {indices} is not strictly increasing")
    if indices and (indices[0] < 0 or (nrows is not None and indices[-1] >= nrows)):
        raise ValueError(f"index set {indices} out of range")
    return sum(i - k for k, i in enumerate(indices))


#####################################
# Derivation Matrix
#####################################


@dataclass(frozen=True)
class DerivationMatrix:
    rows: tuple[Derivation, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows:
            raise DerivationCountError("at least one", 0)
        nvars = self.rows[0].nvars
        if any(r.nvars != nvars for r in self.rows):
            raise UsageError("derivations have different variable counts")

    @property
    def nvars(self) -> int:
        return self.rows[0].nvars

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.rows[i].components[j]

    def submatrix(self, indices: Sequence[int]) -> list[list[Polynomial]]:
        return [list(self.rows[i].components) for i in indices]

    def minor(self, indices: Sequence[int]) -> Polynomial:
        """Unsigned det M_I."""
        return determinant(self.submatrix(indices))


@dataclass(frozen=True)
class MinorProfile:
    indices: tuple[int, ...]
    sign_exponent: int
    minor: Polynomial  # signed Δ_I
    coefficient: Polynomial  # g_I

    @property
    def label(self) -> str:
        return "{" + ",".join(str(i + 1) for i in self.indices) + "}"


def _divide_by_q(delta: Polynomial, q: Polynomial, indices: Sequence[int]) -> Polynomial:
    quotient = delta.try_divide(q)
    if quotient is None:
        raise NotDivisibleByQError(indices)
    return quotient


def _prepare(rows: Sequence[Derivation], arrangement: Arrangement) -> DerivationMatrix:
    arrangement.validate()
    matrix = DerivationMatrix(tuple(rows))
    if matrix.nvars != arrangement.nvars:
        raise UsageError(f"derivations have {matrix.nvars} variables, arrangement has {arrangement.nvars}")
    require_logarithmic(matrix.rows, arrangement)
    return matrix


def minor_profiles(
    rows: Sequence[Derivation], arrangement: Arrangement, require_rank: bool = True
) -> list[MinorProfile]:
    """
    Maximal minors of a p × ℓ derivation matrix, p >= ℓ.

    Args:
        rows (Sequence[Derivation]): Logarithmic derivations, one matrix row each.
        arrangement (Arrangement): Supplies Q; every minor must be divisible by it.
        require_rank (bool): Raise AllMinorsZeroError when every minor vanishes.

    Returns:
        list[MinorProfile]: ℓ-subsets in lexicographic order with Δ_I, σ(I) and g_I = Δ_I / Q.
    """
    matrix = _prepare(rows, arrangement)
    nvars = matrix.nvars
    if matrix.nrows < nvars:
        raise DerivationCountError(f"at least {nvars}", matrix.nrows)
    q = arrangement.defining_polynomial
    profiles = []
    for indices in combinations(range(matrix.nrows), nvars):
        sigma = sign_exponent(indices, nvars, matrix.nrows)
        det = matrix.minor(indices)
        delta = -det if sigma % 2 else det
        profiles.append(MinorProfile(indices, sigma, delta, _divide_by_q(delta, q, indices)))
    logger.debug(f"computed {len(profiles)} maximal minors of a {matrix.nrows}x{nvars} matrix")
    if require_rank and all(p.minor.is_zero() for p in profiles):
        raise AllMinorsZeroError()
    return profiles


def spog_coefficients(thetas: Sequence[Derivation], arrangement: Arrangement) -> tuple[Polynomial, ...]:
    """(g_1, ..., g_{ℓ+1}) for exactly ℓ+1 logarithmic rows."""
    matrix = _prepare(thetas, arrangement)
    if matrix.nrows != matrix.nvars + 1:
        raise DerivationCountError(f"exactly {matrix.nvars + 1}", matrix.nrows)
    q = arrangement.defining_polynomial
    coefficients = []
    for omitted in range(matrix.nrows):
        kept = [i for i in range(matrix.nrows) if i != omitted]
        det = matrix.minor(kept)
        # (-1)^i with i counted from 1
        signed = det if omitted % 2 else -det
        coefficients.append(_divide_by_q(signed, q, kept))
    return tuple(coefficients)


def coefficients_from_profiles(profiles: Sequence[MinorProfile], nrows: int, nvars: int) -> tuple[Polynomial, ...]:
    """
    Read the relation coefficients off a minor table.

    Args:
        profiles (Sequence[MinorProfile]): The table from minor_profiles for ℓ+1 rows.
        nrows (int): Number of rows; must be nvars + 1.
        nvars (int): ℓ.

    Returns:
        tuple[Polynomial, ...]: g_i = (-1)^(ℓ+1) g_I where I is every row but i.
    """
    if nrows != nvars + 1:
        raise ValueError(f"relation coefficients need exactly {nvars + 1} rows, got {nrows}")
    by_omitted = {next(i for i in range(nrows) if i not in p.indices): p.coefficient for p in profiles}
    return tuple(by_omitted[i] if nvars % 2 else -by_omitted[i] for i in range(nrows))


def verify_syzygy(gs: Sequence[Polynomial], thetas: Sequence[Derivation]) -> bool:
    """True iff Σ g_i θ_i is the zero derivation."""
    if len(gs) != len(thetas):
        raise ValueError(f"{len(gs)} coefficients for {len(thetas)} derivations")
    return combine(gs, thetas).is_zero()


#####################################
# Cramer Coefficients
#####################################


@dataclass(frozen=True)
class CramerRelation:
    """f_1 θ_1 + ... + f_ℓ θ_ℓ + g_{ℓ+1} η = 0."""

    coefficients: tuple[Polynomial, ...]
    frame_coefficient: Polynomial

    def as_tuple(self) -> tuple[Polynomial, ...]:
        return self.coefficients + (self.frame_coefficient,)


def cramer_coefficients(
    frame: Sequence[Derivation], eta: Derivation, arrangement: Arrangement
) -> CramerRelation:
    """
    Coefficients f_i = Γ_i / Q of η against the frame θ_1..θ_ℓ, where
    Γ_i = (-1)^i det M[θ_1, .., θ̂_i, .., θ_ℓ, η].
    """
    frame = tuple(frame)
    rows = frame + (eta,)
    matrix = _prepare(rows, arrangement)
    nvars = matrix.nvars
    if len(frame) != nvars:
        raise DerivationCountError(f"a frame of exactly {nvars}", len(frame))
    q = arrangement.defining_polynomial

    frame_det = matrix.minor(range(nvars))
    if frame_det.is_zero():
        raise DegenerateFrameError()
    frame_signed = frame_det if nvars % 2 else -frame_det
    frame_coefficient = _divide_by_q(frame_signed, q, tuple(range(nvars)))

    coefficients = []
    for omitted in range(nvars):
        kept = [i for i in range(nvars + 1) if i != omitted]
        gamma = matrix.minor(kept)
        gamma = gamma if omitted % 2 else -gamma
        coefficients.append(_divide_by_q(gamma, q, kept))

    relation = CramerRelation(tuple(coefficients), frame_coefficient)
    if not verify_syzygy(relation.as_tuple(), rows):
        raise RelationCheckError("Cramer relation does not combine to zero")
    return relation
