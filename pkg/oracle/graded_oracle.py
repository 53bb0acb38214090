"""
graded_oracle.py - brute-force graded linear algebra for D(A).

Every computation here works one degree at a time over exact rationals:

- derivation_space solves the logarithmic conditions on the coefficients
  of ℓ unknown degree-d polynomials.
- minimal_generators applies graded Nakayama: degree-d generators are a
  complement of x_1..x_ℓ times D(A)_{d-1} inside D(A)_d.
- syzygy_space and ideal_graded_dimension are kernels and spans of the
  obvious evaluation maps.
- resolution_evidence combines them into a bounded check of the shape of
  a length-one free resolution.

Nothing here uses the minor engine; the criteria module cross-checks
against these results.

Derivations of degree d are flattened to vectors of length ℓ·dim S_d:
component j occupies slot j, monomials in graded lex order (largest first).
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

# Imports from local modules
from algebra.poly import Monomial, Polynomial, homogeneous_monomials, reduce_mod_linear
from algebra.rational_matrix import RationalMatrix, SpanBuilder, Vector, normalize_vector
from arrangements.arrangement import Arrangement
from arrangements.derivation import Derivation, require_homogeneous, require_logarithmic
from utils.utils_logger import logger

#####################################
# Vector Helpers
#####################################


def dim_s(nvars: int, degree: int) -> int:
    """dim S_d for S = Q[x_1..x_ℓ]; zero in negative degrees."""
    if degree < 0:
        return 0
    return math.comb(degree + nvars - 1, nvars - 1)


@lru_cache(maxsize=None)
def _monomial_index(nvars: int, degree: int) -> dict[Monomial, int]:
    return {m: k for k, m in enumerate(homogeneous_monomials(nvars, degree))}


def polynomial_vector(f: Polynomial, degree: int) -> list[Fraction]:
    """Coordinates of a homogeneous polynomial in the monomial basis of S_d."""
    index = _monomial_index(f.nvars, degree)
    v = [Fraction(0)] * len(index)
    for m, c in f.terms():
        if sum(m) != degree:
            raise ValueError(f"{f} is not homogeneous of degree {degree}")
        v[index[m]] = c
    return v


def vector_polynomial(vector: Sequence[Fraction], nvars: int, degree: int) -> Polynomial:
    monomials = homogeneous_monomials(nvars, degree)
    return Polynomial({m: c for m, c in zip(monomials, vector) if c}, nvars)


def derivation_vector(theta: Derivation, degree: int) -> list[Fraction]:
    v: list[Fraction] = []
    for comp in theta.components:
        v.extend(polynomial_vector(comp, degree))
    return v


def vector_derivation(vector: Sequence[Fraction], nvars: int, degree: int) -> Derivation:
    size = dim_s(nvars, degree)
    return Derivation(tuple(
        vector_polynomial(vector[j * size:(j + 1) * size], nvars, degree) for j in range(nvars)
    ))


def _times_variable(theta: Derivation, var: int) -> Derivation:
    return theta.scale(Polynomial.variable(var, theta.nvars))


#####################################
# Graded Pieces of D(A)
#####################################


@dataclass(frozen=True)
class GradedBasis:
    degree: int
    basis: tuple[Derivation, ...]
    vectors: tuple[Vector, ...] = field(repr=False, default=())

    @property
    def dimension(self) -> int:
        return len(self.basis)


def derivation_space(arrangement: Arrangement, degree: int) -> GradedBasis:
    """Q-basis of D(A)_d, each vector normalized to a leading coordinate of 1."""
    arrangement.validate()
    nvars = arrangement.nvars
    if degree < 0:
        return GradedBasis(degree, ())
    monomials = homogeneous_monomials(nvars, degree)
    size = len(monomials)
    ncols = nvars * size

    conditions: list[list[Fraction]] = []
    for form in arrangement.hyperplanes:
        # θ(α) = Σ a_j θ_j for a linear form α, reduced into S/(α)
        reduced = [reduce_mod_linear(Polynomial.monomial(m), form) for m in monomials]
        rows: dict[Monomial, list[Fraction]] = {}
        for j, a in enumerate(form.coefficients):
            if not a:
                continue
            for k, r in enumerate(reduced):
                for m, c in r.terms():
                    row = rows.setdefault(m, [Fraction(0)] * ncols)
                    row[j * size + k] += a * c
        conditions.extend(rows.values())

    vectors = RationalMatrix(conditions, ncols=ncols).kernel()
    logger.debug(f"D(A)_{degree}: {len(conditions)} conditions on {ncols} unknowns, dimension {len(vectors)}")
    return GradedBasis(
        degree,
        tuple(vector_derivation(v, nvars, degree) for v in vectors),
        tuple(vectors),
    )


def graded_dimensions(arrangement: Arrangement, d_max: int) -> list[int]:
    """[dim D(A)_0, ..., dim D(A)_{d_max}]."""
    return [derivation_space(arrangement, d).dimension for d in range(d_max + 1)]


#####################################
# Minimal Generators
#####################################


@dataclass(frozen=True)
class GeneratorBlock:
    degree: int
    representatives: tuple[Derivation, ...]

    @property
    def count(self) -> int:
        return len(self.representatives)


@dataclass(frozen=True)
class MinimalGenerators:
    d_max: int
    blocks: tuple[GeneratorBlock, ...]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(b.degree for b in self.blocks for _ in b.representatives)

    @property
    def generators(self) -> tuple[Derivation, ...]:
        return tuple(g for b in self.blocks for g in b.representatives)


def _lower_degree_image(previous: Sequence[Vector], nvars: int, degree: int) -> SpanBuilder:
    span = SpanBuilder(nvars * dim_s(nvars, degree))
    for v in previous:
        theta = vector_derivation(v, nvars, degree - 1)
        for var in range(nvars):
            span.add(derivation_vector(_times_variable(theta, var), degree))
    return span


def minimal_generators(arrangement: Arrangement, d_max: int) -> MinimalGenerators:
    """Graded Nakayama up to degree d_max."""
    if d_max < 1:
        raise ValueError(f"d_max must be at least 1, got {d_max}")
    nvars = arrangement.nvars
    logger.info(f"minimal generators of D(A), |A| = {arrangement.size}, up to degree {d_max}")
    blocks = []
    previous: tuple[Vector, ...] = ()
    for degree in range(d_max + 1):
        space = derivation_space(arrangement, degree)
        span = _lower_degree_image(previous, nvars, degree) if previous else SpanBuilder(
            nvars * dim_s(nvars, degree))
        new = []
        if span.dimension < space.dimension:
            for theta, v in zip(space.basis, space.vectors):
                if span.add(v):
                    new.append(theta)
        if new:
            blocks.append(GeneratorBlock(degree, tuple(new)))
            logger.debug(f"degree {degree}: {len(new)} new generators")
        previous = space.vectors
    result = MinimalGenerators(d_max, tuple(blocks))
    logger.info(f"generator degrees {result.degrees}")
    return result


#####################################
# Generation
#####################################


@dataclass(frozen=True)
class GenerationReport:
    generates: bool
    first_failing_degree: Optional[int]
    d_max: int
    span_dimensions: tuple[int, ...]
    space_dimensions: tuple[int, ...]


def default_degree_bound(arrangement: Arrangement, degrees: Sequence[int]) -> int:
    """max(deg θ_i) + |A|."""
    return max(degrees, default=0) + arrangement.size


def submodule_generates(
    arrangement: Arrangement, generators: Sequence[Derivation], d_max: Optional[int] = None
) -> GenerationReport:
    """Compare the span of S·G with D(A) degree by degree up to d_max."""
    generators = tuple(generators)
    degrees = require_homogeneous(generators) if generators else []
    require_logarithmic(generators, arrangement)
    if d_max is None:
        d_max = default_degree_bound(arrangement, degrees)
    nvars = arrangement.nvars

    span_dims, space_dims = [], []
    previous: list[Vector] = []
    failing = None
    for degree in range(d_max + 1):
        span = _lower_degree_image(previous, nvars, degree) if previous else SpanBuilder(
            nvars * dim_s(nvars, degree))
        for theta, d in zip(generators, degrees):
            if d == degree:
                span.add(derivation_vector(theta, degree))
        space_dim = derivation_space(arrangement, degree).dimension
        span_dims.append(span.dimension)
        space_dims.append(space_dim)
        if span.dimension != space_dim and failing is None:
            failing = degree
            logger.debug(f"generation fails in degree {degree}: {span.dimension} < {space_dim}")
        previous = span.basis()
    return GenerationReport(failing is None, failing, d_max, tuple(span_dims), tuple(space_dims))


#####################################
# Syzygies
#####################################


def _syzygy_unknowns(degrees: Sequence[int], nvars: int, degree: int) -> list[tuple[int, Monomial]]:
    return [(i, m) for i, d in enumerate(degrees) for m in homogeneous_monomials(nvars, degree - d)]


def syzygy_space(generators: Sequence[Derivation], degree: int) -> list[tuple[Polynomial, ...]]:
    """Basis of {(f_i) : Σ f_i θ_i = 0, deg f_i = degree - deg θ_i}."""
    generators = tuple(generators)
    if not generators:
        return []
    degrees = require_homogeneous(generators)
    nvars = generators[0].nvars
    unknowns = _syzygy_unknowns(degrees, nvars, degree)
    if not unknowns:
        return []
    columns = [
        derivation_vector(generators[i].scale(Polynomial.monomial(m)), degree) for i, m in unknowns
    ]
    nrows = nvars * dim_s(nvars, degree)
    matrix = RationalMatrix([[col[r] for col in columns] for r in range(nrows)], ncols=len(columns))
    basis = []
    for v in matrix.kernel():
        coeffs = [Polynomial.zero(nvars) for _ in generators]
        for (i, m), c in zip(unknowns, v):
            if c:
                coeffs[i] = coeffs[i] + Polynomial.monomial(m, c)
        basis.append(tuple(coeffs))
    logger.debug(f"syzygies in degree {degree}: dimension {len(basis)}")
    return basis


def _syzygy_vector(coeffs: Sequence[Polynomial], degrees: Sequence[int], degree: int) -> list[Fraction]:
    v: list[Fraction] = []
    for f, d in zip(coeffs, degrees):
        if degree - d >= 0:
            v.extend(polynomial_vector(f, degree - d))
    return v


#####################################
# Ideals
#####################################


def ideal_graded_dimension(gens: Sequence[Polynomial], degree: int) -> int:
    """dim_Q of the degree-d piece of the ideal generated by homogeneous gens."""
    gens = [g for g in gens if g]
    if not gens or degree < 0:
        return 0
    nvars = gens[0].nvars
    span = SpanBuilder(dim_s(nvars, degree))
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError(f"ideal generator {g} is not homogeneous")
        shift = degree - g.degree()
        for m in homogeneous_monomials(nvars, shift):
            span.add(polynomial_vector(g * Polynomial.monomial(m), degree))
    return span.dimension


#####################################
# Hilbert Functions and Resolution Evidence
#####################################


def free_hilbert_value(nvars: int, degrees: Sequence[int], degree: int) -> int:
    """Σ_i dim S_{d - e_i}: graded dimension of a free module with generators in degrees e_i."""
    return sum(dim_s(nvars, degree - e) for e in degrees)


def spog_hilbert_value(nvars: int, gen_degrees: Sequence[int], relation_degree: int, degree: int) -> int:
    return free_hilbert_value(nvars, gen_degrees, degree) - dim_s(nvars, degree - relation_degree)


@dataclass(frozen=True)
class ResolutionEvidence:
    d_max: int
    generator_degrees: tuple[int, ...]
    relation_degrees: tuple[int, ...]
    dimensions: tuple[int, ...]
    predicted: tuple[int, ...]
    generators: tuple[Derivation, ...] = field(repr=False, default=())
    relations: tuple[tuple[Polynomial, ...], ...] = field(repr=False, default=())

    @property
    def hilbert_consistent(self) -> bool:
        """True when generators and one layer of relations reproduce every dim D(A)_d."""
        return self.dimensions == self.predicted


def resolution_evidence(arrangement: Arrangement, d_max: int) -> ResolutionEvidence:
    """Minimal generators, minimal first syzygies and a Hilbert-function comparison up to d_max."""
    nvars = arrangement.nvars
    gens = minimal_generators(arrangement, d_max)
    generators, degrees = gens.generators, gens.degrees

    relations: list[tuple[Polynomial, ...]] = []
    relation_degrees: list[int] = []
    previous: list[tuple[Polynomial, ...]] = []
    for degree in range(d_max + 1):
        if not generators:
            break
        width = len(_syzygy_unknowns(degrees, nvars, degree))
        if width == 0:
            previous = []
            continue
        span = SpanBuilder(width)
        for syz in previous:
            for var in range(nvars):
                x = Polynomial.variable(var, nvars)
                span.add(_syzygy_vector(tuple(x * f for f in syz), degrees, degree))
        current = syzygy_space(generators, degree)
        if span.dimension < len(current):
            for syz in current:
                if span.add(_syzygy_vector(syz, degrees, degree)):
                    relations.append(syz)
                    relation_degrees.append(degree)
        previous = current

    dims = tuple(graded_dimensions(arrangement, d_max))
    predicted = tuple(
        free_hilbert_value(nvars, degrees, d) - free_hilbert_value(nvars, relation_degrees, d)
        for d in range(d_max + 1)
    )
    evidence = ResolutionEvidence(
        d_max, tuple(degrees), tuple(relation_degrees), dims, predicted, tuple(generators), tuple(relations)
    )
    logger.info(
        f"resolution evidence up to degree {d_max}: generators {evidence.generator_degrees}, "
        f"relations {evidence.relation_degrees}, consistent={evidence.hilbert_consistent}"
    )
    return evidence
