"""
rational_matrix.py - dense exact linear algebra over the rationals.

RationalMatrix stores Fractions in a numpy object array (exact Python
numbers, never floats). Rank and kernel come from fraction-free row
echelon form: each row is scaled to integers, elimination uses
cross-multiplication, and every updated row is divided by the gcd of its
entries to keep integers small. Pivots are chosen by smallest absolute
value among the candidates in the pivot column.

SpanBuilder keeps an incrementally growing echelon basis; the graded
oracle uses it to find complements (graded Nakayama) and span ranks.
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
from __future__ import annotations

import bisect
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

# Imports from external packages
import numpy as np

Scalar = Union[int, Fraction]
Vector = tuple[Fraction, ...]

#####################################
# Dense Matrix
#####################################


class RationalMatrix:
    """Rectangular matrix of exact rationals."""

    def __init__(self, rows: Sequence[Sequence[Scalar]], ncols: Optional[int] = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("rows have inconsistent lengths")
        self.entries = np.empty((len(rows), ncols), dtype=object)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                self.entries[i, j] = Fraction(value)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def nrows(self) -> int:
        return self.entries.shape[0]

    @property
    def ncols(self) -> int:
        return self.entries.shape[1]

    def __getitem__(self, key):
        return self.entries[key]

    def _integer_rows(self) -> np.ndarray:
        out = np.empty(self.entries.shape, dtype=object)
        for i in range(self.nrows):
            row = self.entries[i]
            scale = math.lcm(*(x.denominator for x in row)) if self.ncols else 1
            for j in range(self.ncols):
                out[i, j] = int(row[j] * scale)
        return out

    def echelon(self) -> tuple[np.ndarray, list[int]]:
        """Integer row echelon form (nonzero rows only) and its pivot columns."""
        work = self._integer_rows()
        nrows, ncols = work.shape
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            candidates = [i for i in range(r, nrows) if work[i, c] != 0]
            if not candidates:
                continue
            best = min(candidates, key=lambda i: abs(work[i, c]))
            if best != r:
                work[[r, best]] = work[[best, r]]
            pivot = work[r, c]
            for i in range(r + 1, nrows):
                factor = work[i, c]
                if factor == 0:
                    continue
                work[i] = pivot * work[i] - factor * work[r]
                content = math.gcd(*work[i])
                if content > 1:
                    work[i] = work[i] // content
            pivots.append(c)
            r += 1
        return work[:r], pivots

    def rank(self) -> int:
        return len(self.echelon()[1])

    def kernel(self) -> list[Vector]:
        """Basis of {v : M v = 0}; each vector has first nonzero coordinate 1."""
        echelon, pivots = self.echelon()
        ncols = self.ncols
        pivot_set = set(pivots)
        basis: list[Vector] = []
        for free in range(ncols):
            if free in pivot_set:
                continue
            v = [Fraction(0)] * ncols
            v[free] = Fraction(1)
            for row_index in range(len(pivots) - 1, -1, -1):
                c = pivots[row_index]
                row = echelon[row_index]
                acc = sum((row[j] * v[j] for j in range(c + 1, ncols) if v[j]), Fraction(0))
                v[c] = -acc / row[c]
            basis.append(normalize_vector(v))
        return basis

    def __mul__(self, vector: Sequence[Scalar]) -> Vector:
        if len(vector) != self.ncols:
            raise ValueError("dimension mismatch")
        column = np.array([Fraction(x) for x in vector], dtype=object)
        return tuple(Fraction(x) for x in self.entries.dot(column)) if self.nrows else ()


def normalize_vector(vector: Iterable[Scalar]) -> Vector:
    """Scale so the first nonzero coordinate is 1 (zero vector unchanged)."""
    v = [Fraction(x) for x in vector]
    lead = next((x for x in v if x), None)
    if lead is None:
        return tuple(v)
    return tuple(x / lead for x in v)


def kernel(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[Vector]:
    return RationalMatrix(rows, ncols=ncols).kernel()


#####################################
# Incremental Span
#####################################


class SpanBuilder:
    """Echelon basis of a growing subspace of Q^n."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivots: list[int] = []
        self._rows: dict[int, list[Fraction]] = {}

    @property
    def dimension(self) -> int:
        return len(self._pivots)

    def reduce(self, vector: Sequence[Scalar]) -> list[Fraction]:
        if len(vector) != self.ncols:
            raise ValueError(f"expected a vector of length {self.ncols}")
        v = [Fraction(x) for x in vector]
        for c in self._pivots:
            factor = v[c]
            if factor:
                row = self._rows[c]
                for j in range(c, self.ncols):
                    if row[j]:
                        v[j] -= factor * row[j]
        return v

    def basis(self) -> list[Vector]:
        """Current echelon rows, ordered by pivot column."""
        return [tuple(self._rows[c]) for c in self._pivots]

    def contains(self, vector: Sequence[Scalar]) -> bool:
        return not any(self.reduce(vector))

    def add(self, vector: Sequence[Scalar]) -> bool:
        """Add vector to the span; True when it increased the dimension."""
        v = self.reduce(vector)
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is None:
            return False
        scale = v[lead]
        self._rows[lead] = [x / scale for x in v]
        bisect.insort(self._pivots, lead)
        return True

    def extend(self, vectors: Iterable[Sequence[Scalar]]) -> int:
        """Add several vectors; returns how many were new."""
        return sum(1 for v in vectors if self.add(v))
