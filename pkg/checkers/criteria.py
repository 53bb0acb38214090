"""
criteria.py - freeness and SPOG decision procedures with certificates.

check_saito
    ℓ logarithmic derivations form a basis of D(A) iff det M = c·Q(A) with
    c a nonzero constant. Also cross-reports whether Σ deg θ_i = |A|.

check_spog
    ℓ+1 logarithmic derivations with coefficients g_i = (-1)^i det M_i / Q.
    If some g_i is a nonzero linear form (the pivot), every other g_j is
    zero or of positive degree, and the other g_j have no nontrivial common
    divisor modulo the pivot, the inputs are a minimal generating set with
    the single relation Σ g_i θ_i = 0, provided pd D(A) <= 1. That proviso
    holds automatically for ℓ <= 3; for larger ℓ it must be assumed or
    backed by bounded oracle evidence.

necessity_check and betti_degree_check verify the converse bookkeeping on
oracle-produced generators and resolutions.

Modulo-divisor reading: a divisor h is homogeneous with nonconstant residue
modulo the linear form; when every residue vanishes the linear form itself
counts as a common divisor.
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

# Imports from local modules
from algebra.poly import LinearForm, Polynomial, gcd_all, reduce_mod_linear
from arrangements.arrangement import Arrangement
from arrangements.derivation import Derivation, require_homogeneous, require_logarithmic
from arrangements.minors import (
    AllMinorsZeroError,
    DerivationCountError,
    DerivationMatrix,
    RelationCheckError,
    spog_coefficients,
    verify_syzygy,
)
from oracle.graded_oracle import default_degree_bound, submodule_generates, syzygy_space
from utils.utils_logger import logger

PD1_ASSUMED = "assumed by caller"

MODULO_INTERPRETATION = (
    "divisor h taken homogeneous with nonconstant residue modulo the pivot form; "
    "all-zero residues count as a nontrivial divisor (the pivot form itself)"
)

#####################################
# Saito's Criterion
#####################################


class SaitoVerdict(str, Enum):
    FREE = "Free"
    NOT_CONCLUSIVE = "NotConclusive"


@dataclass(frozen=True)
class SaitoCertificate:
    arrangement: Arrangement
    derivations: tuple[Derivation, ...]
    verdict: SaitoVerdict
    constant: Optional[Fraction]
    exponents: tuple[int, ...]
    determinant: Polynomial

    @property
    def is_free(self) -> bool:
        return self.verdict is SaitoVerdict.FREE

    @property
    def degree_sum(self) -> int:
        return sum(self.exponents)

    @property
    def degree_sum_matches(self) -> bool:
        return self.degree_sum == self.arrangement.size


def check_saito(arrangement: Arrangement, thetas: Sequence[Derivation]) -> SaitoCertificate:
    """
    Decide whether ℓ logarithmic derivations form a basis of D(A).

    Args:
        arrangement (Arrangement): The arrangement; validated here.
        thetas (Sequence[Derivation]): Exactly ℓ homogeneous logarithmic derivations.

    Returns:
        SaitoCertificate: Free with the constant c when det M = c·Q, NotConclusive otherwise.

    Raises:
        DerivationCountError: Wrong number of derivations (exit 2).
        ContractViolation: Non-homogeneous or non-logarithmic input (exit 3).
    """
    arrangement.validate()
    thetas = tuple(thetas)
    if len(thetas) != arrangement.nvars:
        raise DerivationCountError(f"exactly {arrangement.nvars}", len(thetas))
    degrees = require_homogeneous(thetas)
    require_logarithmic(thetas, arrangement)

    det = DerivationMatrix(thetas).minor(range(arrangement.nvars))
    quotient = det.exact_divide(arrangement.defining_polynomial)
    if quotient and quotient.is_constant():
        verdict, constant = SaitoVerdict.FREE, quotient.constant_value()
    else:
        verdict, constant = SaitoVerdict.NOT_CONCLUSIVE, None
    logger.info(f"Saito check on |A| = {arrangement.size}: {verdict.value}, exponents {tuple(degrees)}")
    return SaitoCertificate(arrangement, thetas, verdict, constant, tuple(degrees), det)


#####################################
# Primitivity and Divisors Modulo a Linear Form
#####################################


def primitivity(fs: Sequence[Polynomial]) -> bool:
    """True iff the entries have no nonconstant common divisor."""
    nonzero = [f for f in fs if f]
    if not nonzero:
        raise ValueError("primitivity of an all-zero tuple is undefined")
    return gcd_all(nonzero).is_constant()


class ModuloOutcome(str, Enum):
    NO_NONTRIVIAL_DIVISOR = "NoNontrivialDivisor"
    COMMON_DIVISOR = "CommonDivisor"
    ALL_ZERO_RESIDUES = "AllZeroResidues"


@dataclass(frozen=True)
class ModuloDivisorReport:
    outcome: ModuloOutcome
    divisor: Optional[Polynomial]
    residues: tuple[Polynomial, ...]
    pivot_variable: int
    interpretation: str = MODULO_INTERPRETATION

    @property
    def has_nontrivial_divisor(self) -> bool:
        return self.outcome is not ModuloOutcome.NO_NONTRIVIAL_DIVISOR


def common_divisor_modulo(
    gs: Sequence[Polynomial], form: LinearForm, pivot: Optional[int] = None
) -> ModuloDivisorReport:
    """Look for a common divisor of the gs in S/(form) ≅ Q[ℓ-1 variables]."""
    if form.is_zero():
        raise ValueError("common divisor modulo the zero linear form")
    if pivot is None:
        pivot = form.default_pivot()
    residues = tuple(reduce_mod_linear(g, form, pivot) for g in gs)
    if not any(residues):
        return ModuloDivisorReport(ModuloOutcome.ALL_ZERO_RESIDUES, form.as_polynomial(), residues, pivot)
    divisor = gcd_all([r for r in residues if r])
    if divisor.is_constant():
        return ModuloDivisorReport(ModuloOutcome.NO_NONTRIVIAL_DIVISOR, None, residues, pivot)
    return ModuloDivisorReport(ModuloOutcome.COMMON_DIVISOR, divisor, residues, pivot)


def is_linear(f: Polynomial) -> bool:
    return bool(f) and f.is_homogeneous() and f.degree() == 1


def is_positive_degree(f: Polynomial) -> bool:
    """f ∈ S_{>0}: zero or homogeneous of positive degree."""
    return not f or (f.is_homogeneous() and f.degree() > 0)


@dataclass(frozen=True)
class PivotSearch:
    pivot: Optional[int]
    modulo: Optional[ModuloDivisorReport]
    candidates: tuple[int, ...]


def find_pivot(gs: Sequence[Polynomial]) -> PivotSearch:
    """First index with g ∈ S_1 \\ {0} whose companions pass the modulo-divisor test."""
    candidates = tuple(i for i, g in enumerate(gs) if is_linear(g))
    last_report = None
    for i in candidates:
        others = [g for j, g in enumerate(gs) if j != i]
        if not all(is_positive_degree(g) for g in others):
            continue
        report = common_divisor_modulo(others, LinearForm.from_polynomial(gs[i]))
        last_report = report
        if not report.has_nontrivial_divisor:
            return PivotSearch(i, report, candidates)
    return PivotSearch(None, last_report, candidates)


def relation_degree(gs: Sequence[Polynomial], degrees: Sequence[int]) -> Optional[int]:
    """deg g_i + deg θ_i for the first nonzero coefficient."""
    for g, d in zip(gs, degrees):
        if g:
            return g.degree() + d
    return None


#####################################
# Oracle Cross-Check
#####################################


@dataclass(frozen=True)
class OracleVerification:
    d_max: int
    generates: bool
    first_failing_degree: Optional[int]
    minimal: bool
    redundant_index: Optional[int]
    relation_degree: Optional[int]
    syzygy_dimension: int

    @property
    def passed(self) -> bool:
        return self.generates and self.minimal and self.syzygy_dimension == 1


def oracle_verify_spog(
    arrangement: Arrangement, thetas: Sequence[Derivation], d_max: Optional[int] = None
) -> OracleVerification:
    """Generation, minimality and uniqueness of the relation, all up to degree d_max."""
    thetas = tuple(thetas)
    degrees = require_homogeneous(thetas)
    if d_max is None:
        d_max = default_degree_bound(arrangement, degrees)
    logger.info(f"oracle verification of {len(thetas)} generators up to degree {d_max}")

    generation = submodule_generates(arrangement, thetas, d_max)
    redundant = None
    for i in range(len(thetas)):
        rest = thetas[:i] + thetas[i + 1:]
        if rest and submodule_generates(arrangement, rest, d_max).generates:
            redundant = i
            break

    first_degree, dimension = None, 0
    for degree in range(min(degrees), d_max + 1):
        basis = syzygy_space(thetas, degree)
        if basis:
            first_degree, dimension = degree, len(basis)
            break

    return OracleVerification(
        d_max,
        generation.generates,
        generation.first_failing_degree,
        redundant is None,
        redundant,
        first_degree,
        dimension,
    )


#####################################
# SPOG Criterion
#####################################


class SpogVerdict(str, Enum):
    SPOG = "SPOG"
    SPOG_CONDITIONAL_ON_PD1 = "SPOGConditionalOnPd1"
    FAIL = "Fail"


class FailReason(str, Enum):
    SAITO_APPLIES = "SaitoApplies"
    NO_LINEAR_PIVOT = "NoLinearPivot"
    COMMON_DIVISOR = "CommonDivisorModuloPivot"
    ORACLE_DISAGREES = "OracleDisagrees"


@dataclass(frozen=True)
class SpogCertificate:
    arrangement: Arrangement
    derivations: tuple[Derivation, ...]
    verdict: SpogVerdict
    coefficients: tuple[Polynomial, ...]
    degrees: tuple[int, ...]
    relation_degree: Optional[int]
    primitive: bool
    pd_basis: str
    fail_reason: Optional[FailReason] = None
    pivot: Optional[int] = None
    modulo: Optional[ModuloDivisorReport] = None
    saito: Optional[SaitoCertificate] = None
    saito_omitted_row: Optional[int] = None
    oracle: Optional[OracleVerification] = field(default=None)

    @property
    def is_positive(self) -> bool:
        return self.verdict is SpogVerdict.SPOG


def _pd_basis(nvars: int, pd1_assumed: bool, oracle: Optional[OracleVerification]) -> tuple[bool, str]:
    if nvars <= 3:
        return True, "reflexivity (ℓ <= 3)"
    if oracle is not None and oracle.passed:
        return True, f"oracle evidence up to degree {oracle.d_max}"
    if pd1_assumed:
        return True, PD1_ASSUMED
    return False, "not certified"


def check_spog(
    arrangement: Arrangement,
    thetas: Sequence[Derivation],
    pd1_assumed: bool = False,
    oracle_verify: bool = False,
    d_max: Optional[int] = None,
) -> SpogCertificate:
    """
    Run the minor criterion on ℓ+1 logarithmic derivations.

    Args:
        arrangement (Arrangement): The arrangement; validated here.
        thetas (Sequence[Derivation]): Exactly ℓ+1 homogeneous logarithmic derivations.
        pd1_assumed (bool): Accept pd D(A) <= 1 without evidence when ℓ > 3.
        oracle_verify (bool): Cross-check a positive result with the graded oracle.
        d_max (Optional[int]): Degree bound for the oracle; defaults to max deg θ_i + |A|.

    Returns:
        SpogCertificate: SPOG, SPOGConditionalOnPd1 or Fail with its reason.
        A failing oracle check turns any positive result into Fail(OracleDisagrees).

    Raises:
        DerivationCountError: Wrong number of derivations (exit 2).
        AllMinorsZeroError: The rows have rank below ℓ (exit 3).
    """
    arrangement.validate()
    thetas = tuple(thetas)
    nvars = arrangement.nvars
    if len(thetas) != nvars + 1:
        raise DerivationCountError(f"exactly {nvars + 1}", len(thetas))
    degrees = tuple(require_homogeneous(thetas))
    require_logarithmic(thetas, arrangement)

    gs = spog_coefficients(thetas, arrangement)
    if not any(gs):
        raise AllMinorsZeroError()
    if not verify_syzygy(gs, thetas):
        raise RelationCheckError("minor coefficients do not give a relation")
    rel_degree = relation_degree(gs, degrees)
    primitive = primitivity(gs)
    base = dict(
        arrangement=arrangement,
        derivations=thetas,
        coefficients=gs,
        degrees=degrees,
        relation_degree=rel_degree,
        primitive=primitive,
    )

    constant_index = next((i for i, g in enumerate(gs) if g and g.is_constant()), None)
    if constant_index is not None:
        rest = thetas[:constant_index] + thetas[constant_index + 1:]
        saito = check_saito(arrangement, rest)
        logger.info(f"g_{constant_index + 1} is a nonzero constant: Saito applies")
        return SpogCertificate(
            verdict=SpogVerdict.FAIL,
            pd_basis="not needed",
            fail_reason=FailReason.SAITO_APPLIES,
            saito=saito,
            saito_omitted_row=constant_index,
            **base,
        )

    search = find_pivot(gs)
    if search.pivot is None:
        reason = FailReason.COMMON_DIVISOR if search.modulo is not None else FailReason.NO_LINEAR_PIVOT
        logger.info(f"SPOG check failed: {reason.value}")
        return SpogCertificate(
            verdict=SpogVerdict.FAIL, pd_basis="not needed", fail_reason=reason, modulo=search.modulo, **base
        )

    oracle = oracle_verify_spog(arrangement, thetas, d_max) if oracle_verify else None
    if oracle is not None and not oracle.passed:
        logger.warning("minor criterion succeeded but the oracle disagrees within its degree bound")
        return SpogCertificate(
            verdict=SpogVerdict.FAIL,
            pd_basis="oracle check failed",
            fail_reason=FailReason.ORACLE_DISAGREES,
            pivot=search.pivot,
            modulo=search.modulo,
            oracle=oracle,
            **base,
        )
    certified, basis = _pd_basis(nvars, pd1_assumed, oracle)
    verdict = SpogVerdict.SPOG if certified else SpogVerdict.SPOG_CONDITIONAL_ON_PD1
    logger.info(f"SPOG check: {verdict.value}, pivot #{search.pivot + 1}, relation degree {rel_degree}")
    return SpogCertificate(
        verdict=verdict, pd_basis=basis, pivot=search.pivot, modulo=search.modulo, oracle=oracle, **base
    )


#####################################
# Necessity and Degree Bookkeeping
#####################################


@dataclass(frozen=True)
class NecessityReport:
    relation_is_syzygy: bool
    proportional: bool
    constant: Optional[Fraction]
    failing_index: Optional[int]
    pivot: Optional[int]
    modulo: Optional[ModuloDivisorReport]
    degree_law: bool
    degree_failures: tuple[int, ...]

    @property
    def passed(self) -> bool:
        modulo_ok = self.modulo is None or not self.modulo.has_nontrivial_divisor
        return self.relation_is_syzygy and self.proportional and modulo_ok and self.degree_law


def _proportionality(gs: Sequence[Polynomial], fs: Sequence[Polynomial]) -> tuple[Optional[Fraction], Optional[int]]:
    """Single c with g_i = c f_i for all i, or the first index where that fails."""
    constant = None
    for i, (g, f) in enumerate(zip(gs, fs)):
        if not f:
            if g:
                return None, i
            continue
        if constant is None:
            ratio = g.try_divide(f)
            if ratio is None or not ratio or not ratio.is_constant():
                return None, i
            constant = ratio.constant_value()
        elif g != f * constant:
            return None, i
    if constant is None:
        return None, 0
    return constant, None


def necessity_check(
    arrangement: Arrangement, generators: Sequence[Derivation], relation: Sequence[Polynomial]
) -> NecessityReport:
    """Check Δ_i = c·f_i·Q, the modulo-divisor condition and the degree law for a known relation."""
    generators = tuple(generators)
    relation = tuple(relation)
    if len(relation) != len(generators):
        raise ValueError(f"{len(relation)} relation coefficients for {len(generators)} generators")
    degrees = require_homogeneous(generators)
    gs = spog_coefficients(generators, arrangement)

    constant, failing = _proportionality(gs, relation)

    pivot, modulo = None, None
    if any(relation) and all(is_positive_degree(f) for f in relation):
        last = len(relation) - 1
        order = ([last] if is_linear(relation[last]) else []) + [
            i for i in range(last) if is_linear(relation[i])
        ]
        for i in order:
            others = [f for j, f in enumerate(relation) if j != i]
            report = common_divisor_modulo(others, LinearForm.from_polynomial(relation[i]))
            pivot, modulo = i, report
            if not report.has_nontrivial_divisor:
                break

    total = sum(degrees)
    degree_failures = tuple(
        i for i, f in enumerate(relation)
        if f and (not f.is_homogeneous() or total - degrees[i] - f.degree() != arrangement.size)
    )
    report = NecessityReport(
        verify_syzygy(relation, generators),
        failing is None,
        constant,
        failing,
        pivot,
        modulo,
        not degree_failures,
        degree_failures,
    )
    logger.info(f"necessity check: passed={report.passed}, c = {constant}")
    return report


def betti_degree_check(size: int, groups: Sequence[Sequence[int]]) -> bool:
    """|A| = Σ_j (-1)^j Σ_i d_i^j over the homological positions j."""
    alternating = sum((-1) ** j * sum(group) for j, group in enumerate(groups))
    return alternating == size
