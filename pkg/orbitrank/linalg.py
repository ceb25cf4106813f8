# Copyright (C) 2026 OrbitRank contributors
#
# This file is part of OrbitRank.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""Exact linear algebra over the rationals.

Small, one-off problems (Gram inverses, ranks, null spaces) go through
sympy matrices; span coordinates in the orbit search use sympy's
DomainMatrix over QQ. The orbit search needs span tests millions of times,
so it keeps an integer null-space basis in a numpy array and updates it one
vector at a time.
"""

from fractions import Fraction
from math import gcd, lcm

import numpy as np
import sympy as sp
from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    rational = sp.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def dot(u, v) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(rows, v) -> tuple[Fraction, ...]:
    return tuple(dot(row, v) for row in rows)


def _sympy_matrix(rows) -> sp.Matrix:
    return sp.Matrix([[sp.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x for x in row] for row in rows])


def inverse(rows) -> tuple[tuple[Fraction, ...], ...]:
    inv = _sympy_matrix(rows).inv()
    return tuple(tuple(to_fraction(inv[i, j]) for j in range(inv.cols)) for i in range(inv.rows))


def rank(rows) -> int:
    if not rows:
        return 0
    return int(_sympy_matrix(rows).rank())


def nullspace(rows) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : rows @ x = 0}``."""
    basis = _sympy_matrix(rows).nullspace()
    return [tuple(to_fraction(entry) for entry in vector) for vector in basis]


def common_denominator(values) -> int:
    return lcm(1, *(Fraction(v).denominator for v in values))


def primitive_integral(values) -> tuple[tuple[int, ...], Fraction]:
    """Return ``(ints, scale)`` with ``ints == scale * values`` and ``gcd(ints) == 1``.

    The zero vector maps to itself with scale 1.
    """
    values = [Fraction(v) for v in values]
    denominator = common_denominator(values)
    ints = [int(v * denominator) for v in values]
    divisor = gcd(*ints) if any(ints) else 1
    return tuple(i // divisor for i in ints), Fraction(denominator, divisor)


def _domain_matrix(rows) -> DomainMatrix:
    entries = [[QQ(Fraction(x).numerator, Fraction(x).denominator) for x in row] for row in rows]
    return DomainMatrix(entries, (len(entries), len(entries[0])), QQ)


def _from_qq(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def pivot_columns(rows) -> list[int]:
    """Pivot columns of the reduced row echelon form of ``rows``."""
    if not rows:
        return []
    _, pivots = _domain_matrix(rows).rref()
    return list(pivots)


class SpanSolver:
    """Coordinates of vectors in the span of linearly independent integer rows."""

    def __init__(self, rows):
        self.rows = [tuple(int(x) for x in row) for row in rows]
        k = len(self.rows)
        # k coordinates on which the rows stay independent
        chosen = pivot_columns(self.rows)[:k] if self.rows else []
        self.coordinates = chosen
        square = [[self.rows[i][c] for i in range(k)] for c in chosen]
        self._inverse = (
            tuple(tuple(_from_qq(x) for x in row) for row in _domain_matrix(square).inv().to_list()) if square else ()
        )

    def coefficients(self, vector) -> tuple[Fraction, ...]:
        return mat_vec(self._inverse, [vector[c] for c in self.coordinates])


def _normalise_rows(matrix: np.ndarray) -> np.ndarray:
    if matrix.size == 0:
        return matrix
    divisors = np.gcd.reduce(np.abs(matrix), axis=1)
    divisors[divisors == 0] = 1
    return matrix // divisors[:, None]


def initial_complement(dimension: int) -> np.ndarray:
    return np.eye(dimension, dtype=np.int64)


def restrict_complement(complement: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """Integer basis of ``{x in span(complement) : x . vector = 0}``.

    ``complement`` spans the orthogonal complement of some set of vectors;
    the result spans the complement after ``vector`` is added. The caller
    guarantees ``vector`` is not already in the span.
    """
    products = complement @ vector
    nonzero = np.flatnonzero(products)
    pivot = nonzero[0]
    pivot_row = complement[pivot]
    pivot_value = products[pivot]
    updated = pivot_value * complement - np.outer(products, pivot_row)
    updated = np.delete(updated, pivot, axis=0)
    return _normalise_rows(updated)


def in_span_mask(complement: np.ndarray, candidates: np.ndarray) -> np.ndarray:
    """Boolean mask of candidate rows lying in the span the complement annihilates."""
    if complement.shape[0] == 0:
        return np.ones(candidates.shape[0], dtype=bool)
    return ~np.any(complement @ candidates.T != 0, axis=0)


def integer_rank(points: np.ndarray) -> int:
    """Dimension of the span of integer rows, by successive complement updates."""
    if points.size == 0:
        return 0
    complement = initial_complement(points.shape[1])
    found = 0
    for row in points:
        if complement.shape[0] == 0:
            break
        if np.any(complement @ row != 0):
            complement = restrict_complement(complement, row)
            found += 1
    return found
