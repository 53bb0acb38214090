"""
utils_gen_instances.py - seeded random instances for property tests and fixtures.

Every function takes a random.Random so results are reproducible from a
seed. Run as a script to write a random arrangement file:

    python -m utils.utils_gen_instances --seed 7 --vars 3 --size 5 --out data/random5.arr
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
import argparse
import pathlib
import random
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

# Imports from local modules
from algebra.poly import LinearForm, Polynomial, homogeneous_monomials
from arrangements.arrangement import Arrangement, ValidationError, format_arrangement
from arrangements.derivation import Derivation, combine, q_partial
from arrangements.minors import DerivationMatrix
from utils.utils_logger import logger

#####################################
# Random Polynomials
#####################################


def random_rational(rng: random.Random, bound: int = 3, allow_fractions: bool = True) -> Fraction:
    """Nonzero rational with numerator (and denominator) at most bound."""
    numerator = 0
    while numerator == 0:
        numerator = rng.randint(-bound, bound)
    denominator = rng.randint(1, bound) if allow_fractions else 1
    return Fraction(numerator, denominator)


def random_homogeneous(
    rng: random.Random, nvars: int, degree: int, density: float = 0.5, bound: int = 3
) -> Polynomial:
    """Random homogeneous polynomial; may be zero when density is small."""
    if degree < 0:
        return Polynomial.zero(nvars)
    terms = {m: random_rational(rng, bound) for m in homogeneous_monomials(nvars, degree) if rng.random() < density}
    return Polynomial(terms, nvars)


def random_nonzero_homogeneous(rng: random.Random, nvars: int, degree: int, **kwargs) -> Polynomial:
    while True:
        f = random_homogeneous(rng, nvars, degree, **kwargs)
        if f:
            return f


def random_polynomial(rng: random.Random, nvars: int, max_degree: int, terms: int = 4, bound: int = 3) -> Polynomial:
    monomials = [m for d in range(max_degree + 1) for m in homogeneous_monomials(nvars, d)]
    chosen = rng.sample(monomials, min(terms, len(monomials)))
    return Polynomial({m: random_rational(rng, bound) for m in chosen}, nvars)


#####################################
# Random Arrangements
#####################################


def random_linear_form(rng: random.Random, nvars: int, bound: int = 3) -> LinearForm:
    while True:
        coeffs = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(nvars))
        if any(coeffs):
            return LinearForm(coeffs)


def random_arrangement(rng: random.Random, nvars: int, size: int, bound: int = 3) -> Arrangement:
    """Essential reduced arrangement: coordinate hyperplanes plus random forms."""
    if size < nvars:
        raise ValueError(f"an essential arrangement in {nvars} variables needs at least {nvars} hyperplanes")
    forms = [LinearForm(tuple(Fraction(int(i == j)) for j in range(nvars))) for i in range(nvars)]
    attempts = 0
    while len(forms) < size:
        attempts += 1
        if attempts > 1000:
            raise RuntimeError("could not draw enough non-proportional forms; raise the bound")
        candidate = random_linear_form(rng, nvars, bound)
        try:
            Arrangement(nvars, tuple(forms + [candidate])).validate()
        except ValidationError:
            continue
        forms.append(candidate)
    order = list(range(size))
    rng.shuffle(order)
    return Arrangement(nvars, tuple(forms[i] for i in order))


#####################################
# Random Logarithmic Derivations
#####################################


def logarithmic_pool(arrangement: Arrangement, generators: Sequence[Derivation] = ()) -> list[Derivation]:
    """Given generators together with every Q·∂_j."""
    return list(generators) + [q_partial(arrangement, j) for j in range(arrangement.nvars)]


def random_logarithmic(
    rng: random.Random, pool: Sequence[Derivation], degree: int, density: float = 0.6, bound: int = 2
) -> Optional[Derivation]:
    """Random homogeneous S-combination of pool members of degree <= degree, or None."""
    usable = [theta for theta in pool if theta.degree() is not None and theta.degree() <= degree]
    if not usable:
        return None
    nvars = usable[0].nvars
    for _ in range(20):
        coeffs = [random_homogeneous(rng, nvars, degree - theta.degree(), density, bound) for theta in usable]
        theta = combine(coeffs, usable)
        if not theta.is_zero():
            return theta
    return None


def random_logarithmic_family(
    rng: random.Random,
    arrangement: Arrangement,
    count: int,
    generators: Sequence[Derivation] = (),
    max_degree: Optional[int] = None,
) -> list[Derivation]:
    """count nonzero homogeneous logarithmic derivations built from the pool."""
    pool = logarithmic_pool(arrangement, generators)
    low = min(theta.degree() for theta in pool)
    high = max_degree if max_degree is not None else arrangement.size
    family: list[Derivation] = []
    while len(family) < count:
        theta = random_logarithmic(rng, pool, rng.randint(low, max(low, high)))
        if theta is not None:
            family.append(theta)
    return family


def has_full_rank(rows: Sequence[Derivation]) -> bool:
    """True when some ℓ-subset of rows has a nonzero determinant."""
    matrix = DerivationMatrix(tuple(rows))
    return any(matrix.minor(I) for I in combinations(range(matrix.nrows), matrix.nvars))


#####################################
# Main Function
#####################################


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(description="Write a seeded random arrangement file.")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--vars", type=int, default=3)
    parser.add_argument("--size", type=int, default=5)
    parser.add_argument("--bound", type=int, default=3)
    parser.add_argument("--out", type=pathlib.Path, required=True)
    args = parser.parse_args(argv)

    rng = random.Random(args.seed)
    arrangement = random_arrangement(rng, args.vars, args.size, args.bound)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(f"# random arrangement, seed {args.seed}\n" + format_arrangement(arrangement), encoding="utf-8")
    logger.info(f"Wrote {args.out} with |A| = {arrangement.size}")
    return 0


#####################################
# Conditional Execution
#####################################

if __name__ == "__main__":
    raise SystemExit(main())
