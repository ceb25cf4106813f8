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

"""Exact convex geometry of Weyl orbits.

Every decision here is made in rational arithmetic: hull membership by a
phase-one simplex with Bland's rule, certificates and separators checked
exactly before they are returned.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from orbitrank import linalg
from orbitrank.config import DEFAULTS, format_weight
from orbitrank.errors import (
    DimensionMismatchError,
    PreconditionError,
    SearchBudgetExceeded,
    SoundnessError,
)
from orbitrank.rootkit import (
    RootSystem,
    Weight,
    dominant_representative,
    levi_subsystem,
    weyl_orbit,
)

logger = logging.getLogger(__name__)


def format_fraction(value) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class ZeroCertificate:
    """Orbit points with positive rational weights whose combination is 0."""

    points: tuple[Weight, ...]
    coefficients: tuple[Fraction, ...]

    @property
    def size(self) -> int:
        return len(self.points)

    def verify(self, rs: RootSystem | None = None) -> None:
        """Raise :class:`SoundnessError` unless the certificate holds exactly."""
        if len(self.points) != len(self.coefficients) or not self.points:
            raise SoundnessError("certificate has mismatched or empty point and coefficient lists")
        if any(c <= 0 for c in self.coefficients):
            raise SoundnessError("certificate coefficients must be positive")
        if sum(self.coefficients) != 1:
            raise SoundnessError("certificate coefficients do not sum to 1")
        dim = len(self.points[0].ambient)
        total = [
            sum((c * p.ambient[k] for c, p in zip(self.coefficients, self.points)), Fraction(0))
            for k in range(dim)
        ]
        if any(total):
            raise SoundnessError(f"certificate sums to {format_weight(total)}, not 0")
        if len(set(self.points)) != len(self.points):
            raise SoundnessError("certificate points are not pairwise distinct")
        if rs is not None:
            dominants = {dominant_representative(rs, p)[0] for p in self.points}
            if len(dominants) != 1:
                raise SoundnessError("certificate points lie in more than one Weyl orbit")

    def to_dict(self) -> dict:
        return {
            "points": [format_weight(p.fundamental) for p in self.points],
            "coefficients": [format_fraction(c) for c in self.coefficients],
        }


@dataclass(frozen=True)
class HullTest:
    """Outcome of a hull-membership test.

    ``coefficients`` maps point indices to positive weights when feasible;
    ``separator`` is a vector ``h`` with ``h . p > 0`` for every point otherwise.
    """

    feasible: bool
    coefficients: dict[int, Fraction] = field(default_factory=dict)
    separator: tuple[Fraction, ...] | None = None


class _PhaseOneTableau:
    """Dense tableau for ``A x = b, x >= 0`` minimising the artificial sum."""

    def __init__(self, columns: list[tuple[Fraction, ...]], rhs: list[Fraction]):
        self.m = len(rhs)
        self.n = len(columns)
        width = self.n + self.m
        self.rows = [
            [columns[j][i] for j in range(self.n)] + [Fraction(1 if k == i else 0) for k in range(self.m)]
            for i in range(self.m)
        ]
        self.rhs = list(rhs)
        self.basis = list(range(self.n, width))
        self.cost = [-sum((row[j] for row in self.rows), Fraction(0)) for j in range(self.n)] + [
            Fraction(0)
        ] * self.m
        self.value = sum(self.rhs, Fraction(0))

    def pivot(self, i: int, j: int) -> None:
        piv = self.rows[i][j]
        self.rows[i] = [x / piv for x in self.rows[i]]
        self.rhs[i] /= piv
        for k in range(self.m):
            if k != i and self.rows[k][j]:
                f = self.rows[k][j]
                self.rows[k] = [a - f * b for a, b in zip(self.rows[k], self.rows[i])]
                self.rhs[k] -= f * self.rhs[i]
        reduced = self.cost[j]
        self.value += reduced * self.rhs[i]
        self.cost = [a - reduced * b for a, b in zip(self.cost, self.rows[i])]
        self.basis[i] = j

    def bland_step(self) -> bool:
        entering = next((j for j, c in enumerate(self.cost) if c < 0), None)
        if entering is None:
            return False
        candidates = [
            (self.rhs[i] / self.rows[i][entering], self.basis[i], i)
            for i in range(self.m)
            if self.rows[i][entering] > 0
        ]
        # phase one is bounded below by zero
        _, _, leaving = min(candidates)
        self.pivot(leaving, entering)
        return True

    def solve(self) -> None:
        while self.bland_step():
            pass

    def duals(self) -> list[Fraction]:
        return [1 - self.cost[self.n + i] for i in range(self.m)]


def _as_vectors(points) -> list[tuple[Fraction, ...]]:
    vectors = [tuple(Fraction(x) for x in getattr(p, "ambient", p)) for p in points]
    if not vectors:
        raise PreconditionError("hull tests need at least one point")
    dim = len(vectors[0])
    if any(len(v) != dim for v in vectors):
        raise DimensionMismatchError(
            f"points have dimensions {sorted({len(v) for v in vectors})}; expected a common dimension"
        )
    return vectors


def zero_in_conv(points) -> HullTest:
    """Decide whether 0 lies in the convex hull of ``points``.

    ``points`` are rational vectors (or :class:`Weight` objects, taken by
    their ambient coordinates).
    """
    vectors = _as_vectors(points)
    dim = len(vectors[0])
    columns = [v + (Fraction(1),) for v in vectors]
    rhs = [Fraction(0)] * dim + [Fraction(1)]
    tableau = _PhaseOneTableau(columns, rhs)
    tableau.solve()

    if tableau.value == 0:
        coefficients = {
            b: tableau.rhs[i] for i, b in enumerate(tableau.basis) if b < tableau.n and tableau.rhs[i] > 0
        }
        total = [sum((c * vectors[j][k] for j, c in coefficients.items()), Fraction(0)) for k in range(dim)]
        if any(total) or sum(coefficients.values()) != 1:
            raise SoundnessError("simplex returned a combination that does not sum to 0")
        return HullTest(True, coefficients)

    duals = tableau.duals()
    separator = tuple(-y for y in duals[:dim])
    if any(linalg.dot(separator, v) <= 0 for v in vectors):
        raise SoundnessError("simplex returned a separator that does not separate")
    return HullTest(False, separator=separator)


def point_in_conv(target, points) -> HullTest:
    target = tuple(Fraction(x) for x in getattr(target, "ambient", target))
    vectors = _as_vectors(points)
    if len(target) != len(vectors[0]):
        raise DimensionMismatchError(
            f"target has dimension {len(target)}, points have dimension {len(vectors[0])}"
        )
    return zero_in_conv([tuple(a - b for a, b in zip(v, target)) for v in vectors])


def affine_dimension(points) -> int:
    vectors = _as_vectors(points)
    base = vectors[0]
    differences = [tuple(a - b for a, b in zip(v, base)) for v in vectors[1:]]
    return linalg.rank(differences) if differences else 0


@dataclass(frozen=True)
class Decomposition:
    """A convex combination ``sum(c * points[i]) == target`` over a point sub-list."""

    indices: tuple[int, ...]
    coefficients: tuple[Fraction, ...]


def caratheodory_reduce(target, points, coefficients=None) -> Decomposition:
    """Shrink a convex combination for ``target`` to at most ``affine_dimension + 1`` points.

    Without ``coefficients`` a basic solution of the membership LP is used;
    with them, the given combination is reduced along null-space directions.
    """
    vectors = _as_vectors(points)
    target = tuple(Fraction(x) for x in getattr(target, "ambient", target))
    bound = affine_dimension(vectors) + 1

    for i, v in enumerate(vectors):
        if v == target:
            return Decomposition((i,), (Fraction(1),))

    if coefficients is None:
        test = point_in_conv(target, vectors)
        if not test.feasible:
            raise PreconditionError(f"target {format_weight(target)} is outside the convex hull")
        support = dict(sorted(test.coefficients.items()))
    else:
        support = {i: Fraction(c) for i, c in enumerate(coefficients) if Fraction(c) != 0}
        if len(coefficients) != len(vectors) or any(c < 0 for c in support.values()):
            raise PreconditionError("coefficients must be non-negative, one per point")
        combined = tuple(
            sum((c * vectors[i][k] for i, c in support.items()), Fraction(0)) for k in range(len(target))
        )
        if sum(support.values()) != 1 or combined != target:
            raise PreconditionError("coefficients are not a convex combination giving the target")

        while True:
            indices = sorted(support)
            columns = [vectors[i] + (Fraction(1),) for i in indices]
            rows = [[col[k] for col in columns] for k in range(len(columns[0]))]
            kernel = linalg.nullspace(rows)
            if not kernel:
                break
            direction = kernel[0]
            if not any(z > 0 for z in direction):
                direction = tuple(-z for z in direction)
            step = min(support[i] / z for i, z in zip(indices, direction) if z > 0)
            support = {
                i: support[i] - step * z for i, z in zip(indices, direction) if support[i] - step * z != 0
            }

    if len(support) > bound:
        raise SoundnessError(f"reduced combination has {len(support)} points, more than {bound}")
    return Decomposition(tuple(support), tuple(support[i] for i in support))


@dataclass(frozen=True)
class WeylSearch:
    """Result of the minimal zero-subset search.

    ``size`` is None when no certificate exists up to ``r_max``.
    """

    size: int | None
    certificate: ZeroCertificate | None
    orbit_size: int
    effective_rank: int
    nodes: int
    searched_up_to: int


class _Budget:
    def __init__(self, limit: int, label: str):
        self.limit = limit
        self.used = 0
        self.label = label
        self.transcript: list[str] = []

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise SearchBudgetExceeded(self.limit, self.label, self.transcript)


def _stabiliser_representatives(points: np.ndarray, dominant: tuple[int, ...]) -> list[int]:
    zero_nodes = [i for i, c in enumerate(dominant) if c == 0]
    if not zero_nodes:
        return list(range(1, len(points)))
    mask = np.all(points[:, zero_nodes] >= 0, axis=1)
    mask[0] = False
    return [int(i) for i in np.flatnonzero(mask)]


def _completions(points, chosen, complement, used, lowest):
    """Indices ``p >= lowest`` off ``used`` making ``chosen + [p]`` a positive circuit."""
    mask = linalg.in_span_mask(complement, points)
    candidates = [int(p) for p in np.flatnonzero(mask) if p >= lowest and int(p) not in used]
    if not candidates:
        return []
    solver = linalg.SpanSolver([points[i] for i in chosen])
    found = []
    for p in candidates:
        coefficients = solver.coefficients([-int(x) for x in points[p]])
        if all(a > 0 for a in coefficients):
            found.append((p, coefficients))
    return found


def _search_level(points, representatives, size, dimension, spend):
    """First positive circuit of ``size`` points through point 0, in search order.

    The order is: second point by representative index, then tails in
    increasing index order, then the smallest completing index.
    """
    n = len(points)
    origin = linalg.restrict_complement(linalg.initial_complement(dimension), points[0])
    for q in representatives:
        # (chosen points, complement of all but the last one, next tail index)
        stack = [([0, q], origin, 1)]
        while stack:
            chosen, complement, start = stack.pop()
            spend.spend()
            complement = linalg.restrict_complement(complement, points[chosen[-1]])
            if len(chosen) == size - 1:
                lowest = chosen[-1] + 1 if len(chosen) > 2 else 1
                for p, coefficients in _completions(points, chosen, complement, set(chosen), lowest):
                    spend.spend()
                    weights = dict(zip(chosen, coefficients))
                    weights[p] = Fraction(1)
                    indices = tuple(sorted(weights))
                    return indices, tuple(weights[i] for i in indices)
                continue
            in_span = linalg.in_span_mask(complement, points)
            for t in range(n - 1, start - 1, -1):
                if not in_span[t] and t != q:
                    stack.append((chosen + [t], complement, t + 1))
    return None


def _certificate(rs, orbit, scale, indices, weights) -> ZeroCertificate:
    total = sum(weights, Fraction(0))
    order = sorted(range(len(indices)), key=lambda k: indices[k])
    return ZeroCertificate(
        tuple(orbit[indices[k]].scale(1 / scale) for k in order),
        tuple(weights[k] / total for k in order),
    )


def min_zero_subset(
    rs: RootSystem,
    weight: Weight,
    r_max: int = DEFAULTS.r_max,
    budget: int = DEFAULTS.search_budget,
    orbit_cap: int = DEFAULTS.orbit_cap,
) -> WeylSearch:
    """Smallest number of Weyl-orbit points of ``weight`` with 0 in their hull.

    Searches positive circuits containing the dominant point: every proper
    subset of a minimal set is linearly independent, so sets are grown one
    independent point at a time and closed by a point whose negative has
    positive coordinates on them. The second point runs over representatives
    of the stabiliser of the dominant point.
    """
    if not weight.is_dominant:
        raise PreconditionError(f"min_zero_subset needs a dominant weight, got {weight}")
    if weight.is_zero:
        raise PreconditionError("min_zero_subset needs a nonzero weight")
    if r_max < 2:
        raise PreconditionError(f"r_max must be at least 2, got {r_max}")

    ints, scale = linalg.primitive_integral(weight.fundamental)
    scaled = rs.weight(ints)
    orbit = weyl_orbit(rs, scaled, orbit_cap)
    points = np.array([[int(c) for c in p.fundamental] for p in orbit], dtype=np.int64)
    index = {p.fundamental: i for i, p in enumerate(orbit)}
    effective_rank = linalg.integer_rank(points)
    top = min(r_max, effective_rank + 1)
    logger.debug(
        "%s %s: orbit of %d points spanning dimension %d", rs.name, weight, len(orbit), effective_rank
    )

    antipode = index.get(tuple(-c for c in orbit[0].fundamental))
    if antipode is not None:
        cert = _certificate(rs, orbit, scale, (0, antipode), (Fraction(1), Fraction(1)))
        cert.verify(rs)
        return WeylSearch(2, cert, len(orbit), effective_rank, 0, 2)

    spend = _Budget(budget, f"zero-subset search for {weight} in {rs.name}")
    representatives = _stabiliser_representatives(points, ints)

    for size in range(3, top + 1):
        found = _search_level(points, representatives, size, rs.rank, spend)
        spend.transcript.append(f"size {size}: {'found' if found else 'none'} after {spend.used} steps")
        logger.debug("%s %s: %s", rs.name, weight, spend.transcript[-1])
        if found is not None:
            cert = _certificate(rs, orbit, scale, *found)
            cert.verify(rs)
            return WeylSearch(size, cert, len(orbit), effective_rank, spend.used, size)

    if top == effective_rank + 1:
        raise SoundnessError(
            f"no zero subset of size <= {top} for {weight} in {rs.name}, contradicting Caratheodory"
        )
    return WeylSearch(None, None, len(orbit), effective_rank, spend.used, top)


def orbit_basic_certificate(rs: RootSystem, weight: Weight, orbit_cap: int = DEFAULTS.orbit_cap) -> ZeroCertificate:
    """A zero certificate from a basic solution of the LP over the whole orbit."""
    orbit = weyl_orbit(rs, weight, orbit_cap)
    test = zero_in_conv(orbit)
    if not test.feasible:
        raise SoundnessError(f"0 is not in the hull of the orbit of {weight} in {rs.name}")
    indices = sorted(test.coefficients)
    cert = ZeroCertificate(
        tuple(orbit[i] for i in indices), tuple(test.coefficients[i] for i in indices)
    )
    cert.verify(rs)
    return cert


def kostant_contains(rs: RootSystem, weight: Weight, point: Weight, orbit_cap: int = DEFAULTS.orbit_cap) -> bool:
    """Whether ``point`` lies in the convex hull of the Weyl orbit of ``weight``.

    Decided twice, by the hull LP and by the dominance criterion.
    """
    if not weight.is_dominant:
        raise PreconditionError(f"kostant_contains needs a dominant weight, got {weight}")
    dominant, _ = dominant_representative(rs, point)
    by_dominance = rs.dominates(weight.fundamental, dominant.fundamental)
    by_lp = point_in_conv(point, weyl_orbit(rs, weight, orbit_cap)).feasible
    if by_dominance != by_lp:
        raise SoundnessError(
            f"hull LP ({by_lp}) and dominance test ({by_dominance}) disagree on {point} in Conv(W {weight})"
        )
    return by_lp


@dataclass(frozen=True)
class ExtremePoint:
    subsets: tuple[frozenset[int], ...]
    point: Weight


def extreme_points_E(rs: RootSystem, weight: Weight) -> list[ExtremePoint]:
    """Projections of ``weight`` away from every Levi span, duplicates merged."""
    if not weight.is_dominant:
        raise PreconditionError(f"extreme_points_E needs a dominant weight, got {weight}")
    merged: dict[Weight, list[frozenset[int]]] = {}
    for size in range(rs.rank + 1):
        for nodes in itertools.combinations(range(1, rs.rank + 1), size):
            levi = levi_subsystem(rs, nodes)
            restricted = rs.weight_from_ambient(levi.project(weight.ambient))
            point = weight - restricted
            if not point.is_dominant or not rs.dominates(weight.fundamental, point.fundamental):
                raise SoundnessError(f"projection {point} of {weight} left the dominant hull")
            merged.setdefault(point, []).append(frozenset(nodes))
    return [ExtremePoint(tuple(subsets), point) for point, subsets in merged.items()]


def spin_certificate(rs: RootSystem, j: int) -> ZeroCertificate:
    """Four half-spin weights of D_l (l odd) summing to zero, for node ``j`` in {l-1, l}."""
    l = rs.rank
    if rs.series != "D" or l % 2 == 0 or j not in (l - 1, l):
        raise PreconditionError(f"spin certificates exist for half-spin nodes of D_l with l odd, not {rs.name} node {j}")
    half = Fraction(1, 2)
    base = [
        [half, half, half],
        [half, -half, -half],
        [-half, half, -half],
        [-half, -half, half],
    ]
    extra = l - 3
    vectors = [row + [half] * extra for row in base[:2]] + [row + [-half] * extra for row in base[2:]]
    if j == l - 1:
        vectors = [row[:-1] + [-row[-1]] for row in vectors]
    cert = ZeroCertificate(
        tuple(rs.weight_from_ambient(v) for v in vectors), (Fraction(1, 4),) * 4
    )
    cert.verify(rs)
    if dominant_representative(rs, cert.points[0])[0] != rs.fundamental_weight(j):
        raise SoundnessError(f"spin certificate for node {j} is not in the orbit of the fundamental weight")
    return cert
