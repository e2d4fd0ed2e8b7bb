"""Exact rational linear algebra over ``fractions.Fraction``.

Independence tests, integer dependence certificates, and the grid-coverage
check showing that finitely many low-dimensional affine translates cannot
cover the box {1..k}^n.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import AutomatonError


class DimensionError(AutomatonError):
    pass


def _as_fractions(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = _as_fractions(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def _check_dims(vectors: Sequence[Sequence]) -> int:
    lengths = {len(v) for v in vectors}
    if len(lengths) > 1:
        raise DimensionError(f"vectors of differing lengths {sorted(lengths)}")
    return lengths.pop() if lengths else 0


def rank(vectors: Sequence[Sequence]) -> int:
    _check_dims(vectors)
    if not vectors:
        return 0
    return len(rref(vectors)[1])


def is_independent(vectors: Sequence[Sequence[int]]) -> bool:
    if not vectors:
        raise DimensionError("independence of an empty list is not defined here")
    _check_dims(vectors)
    return rank(vectors) == len(vectors)


def kernel_basis(columns: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Rational basis of {alpha : sum alpha_i * columns[i] = 0}."""
    k = len(columns)
    m = _check_dims(columns)
    if m == 0:
        return [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    matrix = [[columns[i][r] for i in range(k)] for r in range(m)]
    red, pivots = rref(matrix)
    free = [c for c in range(k) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * k
        vec[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            vec[pc] = -row[f]
        basis.append(vec)
    return basis


def primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    """Clear denominators, divide by the gcd, make the first nonzero entry positive."""
    den = math.lcm(*(x.denominator for x in vec))
    ints = [int(x * den) for x in vec]
    g = math.gcd(*ints)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


@dataclass(frozen=True)
class DependenceCertificate:
    coefficients: tuple[int, ...]

    def verify(self, vectors: Sequence[Sequence[int]]) -> bool:
        if not any(self.coefficients):
            return False
        m = _check_dims(vectors)
        combo = [sum(a * v[r] for a, v in zip(self.coefficients, vectors)) for r in range(m)]
        nonzero = [abs(a) for a in self.coefficients if a]
        return not any(combo) and math.gcd(*nonzero) == 1


def integer_dependence(vectors: Sequence[Sequence[int]]) -> DependenceCertificate:
    """Integer coefficients, not all zero, with ``sum alpha_i v_i = 0``.

    Candidates are the primitive forms of the rational kernel basis vectors;
    the one with smallest L1 norm wins, ties going to the lexicographically
    smallest.
    """
    basis = kernel_basis(vectors)
    if not basis:
        raise DimensionError("vectors are linearly independent; no dependence exists")
    candidates = [primitive(b) for b in basis]
    best = min(candidates, key=lambda c: (sum(map(abs, c)), c))
    return DependenceCertificate(best)


# ---------------------------------------------------------------------------
# Affine translates and grid coverage


@dataclass(frozen=True)
class AffineTranslate:
    base: tuple[Fraction, ...]
    span: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, base: Sequence, span: Sequence[Sequence] = ()) -> "AffineTranslate":
        return cls(
            tuple(Fraction(x) for x in base),
            tuple(tuple(Fraction(x) for x in v) for v in span),
        )

    @property
    def dim(self) -> int:
        return rank(self.span) if self.span else 0

    def contains(self, point: Sequence) -> bool:
        offset = [Fraction(x) - b for x, b in zip(point, self.base)]
        if not self.span:
            return not any(offset)
        return rank(list(self.span) + [offset]) == self.dim


@dataclass
class CoverageReport:
    n: int
    k: int
    max_dim: int
    counts: list[int]
    uncovered: tuple[int, ...] | None

    @property
    def bound_holds(self) -> bool:
        return all(c <= self.k ** self.max_dim for c in self.counts)


def grid_coverage_check(n: int, translates: Sequence[AffineTranslate]) -> CoverageReport:
    """Count box points per translate and find the lexicographically first uncovered point.

    The box is {1..k}^n with k = r + 1 for r translates.
    """
    for i, t in enumerate(translates):
        if len(t.base) != n or any(len(v) != n for v in t.span):
            raise DimensionError(f"translate {i} does not live in Q^{n}")
        if t.dim >= n:
            raise DimensionError(f"translate {i} has dimension {t.dim} >= n = {n}")
    r = len(translates)
    k = r + 1
    max_dim = max((t.dim for t in translates), default=0)
    counts = [0] * r
    uncovered = None
    for point in itertools.product(range(1, k + 1), repeat=n):
        hit = False
        for i, t in enumerate(translates):
            if t.contains(point):
                counts[i] += 1
                hit = True
        if not hit and uncovered is None:
            uncovered = point
    return CoverageReport(n, k, max_dim, counts, uncovered)
