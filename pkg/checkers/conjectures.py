"""
conjectures.py - exploratory checks of two open statements about SPOG-type modules.

Both explorers are report-only: they compare oracle data with a prediction
and never gate an exit code.

- resolution shape: every minimal relation degree e_j should be d_i + 1
  for a distinct generator degree d_i.
- generic ideal: the ideal J(G) spanned by the maximal minors of a
  generating set should equal S_{>=k}·Q with k = (ℓ-1)(|A|-ℓ-1).
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional, Sequence

# Imports from external packages
import pandas as pd

# Imports from local modules
from arrangements.arrangement import Arrangement
from arrangements.derivation import Derivation, require_homogeneous, require_logarithmic
from arrangements.minors import DerivationMatrix
from oracle.graded_oracle import (
    ResolutionEvidence,
    dim_s,
    ideal_graded_dimension,
    minimal_generators,
    resolution_evidence,
)
from utils.utils_logger import logger

#####################################
# Resolution Shape
#####################################


class ShapeOutcome(str, Enum):
    CONSISTENT = "consistent"
    INCONSISTENT = "inconsistent"
    VACUOUS = "vacuous"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ResolutionShapeReport:
    outcome: ShapeOutcome
    d_max: int
    generator_degrees: tuple[int, ...]
    relation_degrees: tuple[int, ...]
    pairing: tuple[tuple[int, Optional[int]], ...]
    note: str


def explore_conjecture_resolution_shape(
    arrangement: Arrangement,
    evidence: Optional[ResolutionEvidence] = None,
    d_max: Optional[int] = None,
) -> ResolutionShapeReport:
    """
    Compare oracle resolution data with the expected relation degrees.

    Args:
        arrangement (Arrangement): The arrangement.
        evidence (Optional[ResolutionEvidence]): Precomputed evidence; computed when absent.
        d_max (Optional[int]): Degree bound for computing evidence; defaults to |A| + 1.

    Returns:
        ResolutionShapeReport: Report only; never affects an exit code.
    """
    if evidence is None:
        evidence = resolution_evidence(arrangement, d_max if d_max is not None else arrangement.size + 1)
    gens, rels = evidence.generator_degrees, evidence.relation_degrees

    if not evidence.hilbert_consistent:
        return ResolutionShapeReport(
            ShapeOutcome.INCONCLUSIVE, evidence.d_max, gens, rels, (),
            f"generators and one relation layer do not reproduce dim D(A)_d up to degree {evidence.d_max}",
        )
    if not rels:
        return ResolutionShapeReport(
            ShapeOutcome.VACUOUS, evidence.d_max, gens, rels, (), "no relations; vacuous"
        )

    available = Counter(gens)
    pairing = []
    for e in sorted(rels):
        if available[e - 1] > 0:
            available[e - 1] -= 1
            pairing.append((e, e - 1))
        else:
            pairing.append((e, None))
    consistent = all(d is not None for _, d in pairing)
    outcome = ShapeOutcome.CONSISTENT if consistent else ShapeOutcome.INCONSISTENT
    note = "; ".join(
        f"relation degree {e} = {d} + 1" if d is not None else f"relation degree {e} unmatched"
        for e, d in pairing
    )
    logger.info(f"resolution shape: {outcome.value} ({note})")
    return ResolutionShapeReport(outcome, evidence.d_max, gens, rels, tuple(pairing), note)


#####################################
# Generic Ideal of Maximal Minors
#####################################


@dataclass(frozen=True)
class IdealDegreeRow:
    degree: int
    observed: int
    predicted: int

    @property
    def agrees(self) -> bool:
        return self.observed == self.predicted


@dataclass(frozen=True)
class GenericIdealReport:
    k: int
    d_max: int
    generator_count: int
    minor_count: int
    rows: tuple[IdealDegreeRow, ...]

    @property
    def agrees(self) -> bool:
        return all(r.agrees for r in self.rows)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {"degree": r.degree, "dim J(G)_d": r.observed, "dim (S_>=k Q)_d": r.predicted, "agrees": r.agrees}
                for r in self.rows
            ]
        )


def predicted_k(arrangement: Arrangement) -> int:
    """k = (ℓ-1)(|A|-ℓ-1), never below zero."""
    return max(0, (arrangement.nvars - 1) * (arrangement.size - arrangement.nvars - 1))


def explore_conjecture_generic_ideal(
    arrangement: Arrangement,
    generators: Optional[Sequence[Derivation]] = None,
    d_max: Optional[int] = None,
) -> GenericIdealReport:
    """
    Compare dim J(G)_d of the maximal-minor ideal with dim (S_{>=k}·Q)_d.

    Args:
        arrangement (Arrangement): The arrangement; validated here.
        generators (Optional[Sequence[Derivation]]): Homogeneous logarithmic generators;
            oracle minimal generators up to degree |A| when absent.
        d_max (Optional[int]): Last degree tabulated; raised to k + |A| when lower.

    Returns:
        GenericIdealReport: One row per degree 0..d_max.
    """
    arrangement.validate()
    nvars, size = arrangement.nvars, arrangement.size
    k = predicted_k(arrangement)
    floor = k + size
    if d_max is None:
        d_max = floor + 4
    elif d_max < floor:
        logger.warning(f"degree bound {d_max} is below k + |A| = {floor}; raising it")
        d_max = floor

    if generators is None:
        generators = minimal_generators(arrangement, size).generators
    generators = tuple(generators)
    require_homogeneous(generators)
    require_logarithmic(generators, arrangement)

    minors = []
    if len(generators) >= nvars:
        matrix = DerivationMatrix(generators)
        minors = [m for m in (matrix.minor(I) for I in combinations(range(len(generators)), nvars)) if m]
    logger.info(f"generic ideal: k = {k}, {len(minors)} nonzero maximal minors, degrees up to {d_max}")

    rows = tuple(
        IdealDegreeRow(
            d,
            ideal_graded_dimension(minors, d),
            dim_s(nvars, d - size) if d - size >= k else 0,
        )
        for d in range(d_max + 1)
    )
    return GenericIdealReport(k, d_max, len(generators), len(minors), rows)
