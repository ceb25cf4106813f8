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

"""Classical root systems in the standard Euclidean realisation.

Node labels (simple roots, fundamental weights, reflection words, Levi
subsets) follow the usual 1-based ordering ``1..rank``. Weights are stored in
fundamental-weight coordinates with the ambient vector carried alongside.
Type A of rank l lives in the zero-sum hyperplane of a space of dimension
l + 1; types B, C, D live in a space of dimension l.
"""

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from orbitrank import linalg
from orbitrank.config import DEFAULTS, format_weight, validate_group
from orbitrank.errors import OrbitCapExceeded, PreconditionError, SoundnessError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Weight:
    """A rational weight; equality and hashing use the fundamental coordinates."""

    fundamental: tuple[Fraction, ...]
    ambient: tuple[Fraction, ...] = field(compare=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.fundamental)

    @property
    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.fundamental)

    @property
    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.fundamental)

    @property
    def is_zero(self) -> bool:
        return not any(self.fundamental)

    def integral_coords(self) -> tuple[int, ...]:
        if not self.is_integral:
            raise PreconditionError(f"weight {self} is not integral")
        return tuple(int(c) for c in self.fundamental)

    def scale(self, factor) -> "Weight":
        factor = Fraction(factor)
        return Weight(
            tuple(factor * c for c in self.fundamental),
            tuple(factor * c for c in self.ambient),
        )

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a + b for a, b in zip(self.fundamental, other.fundamental)),
            tuple(a + b for a, b in zip(self.ambient, other.ambient)),
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return self + (-other)

    def __neg__(self) -> "Weight":
        return self.scale(-1)

    def __str__(self) -> str:
        return format_weight(self.fundamental)


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Immutable classical root datum; one shared instance per series and rank."""

    series: str
    rank: int
    simple_roots: tuple[tuple[Fraction, ...], ...]
    cartan_matrix: tuple[tuple[int, ...], ...]
    fundamental_ambient: tuple[tuple[Fraction, ...], ...]
    inverse_cartan: tuple[tuple[Fraction, ...], ...]
    weyl_order: int
    w0_permutation: tuple[tuple[int, int], ...]
    duality: tuple[int, ...] = ()
    positive_roots: tuple["Weight", ...] = ()

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def ambient_dim(self) -> int:
        return len(self.simple_roots[0])

    @property
    def rho(self) -> Weight:
        return self.weight((1,) * self.rank)

    @property
    def zero(self) -> Weight:
        return self.weight((0,) * self.rank)

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"

    # bilinear form

    @staticmethod
    def form(u, v) -> Fraction:
        return linalg.dot(u, v)

    def pair(self, a: Weight, b: Weight) -> Fraction:
        return self.form(a.ambient, b.ambient)

    # weights

    def weight(self, coords) -> Weight:
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.rank:
            raise PreconditionError(
                f"{self.name} weights have {self.rank} coordinates, got {len(coords)}"
            )
        ambient = tuple(
            sum((c * fw[k] for c, fw in zip(coords, self.fundamental_ambient)), Fraction(0))
            for k in range(self.ambient_dim)
        )
        return Weight(coords, ambient)

    def weight_from_ambient(self, vector) -> Weight:
        vector = tuple(Fraction(x) for x in vector)
        coords = tuple(
            2 * self.form(vector, alpha) / self.form(alpha, alpha) for alpha in self.simple_roots
        )
        result = self.weight(coords)
        if result.ambient != vector:
            raise PreconditionError(
                f"ambient vector {format_weight(vector)} is not in the span of the {self.name} roots"
            )
        return result

    def fundamental_weight(self, j: int) -> Weight:
        return self.weight(tuple(1 if i == j - 1 else 0 for i in range(self.rank)))

    def simple_root(self, j: int) -> Weight:
        return self.weight(self.cartan_matrix[j - 1])

    # Weyl group on coordinate tuples (ints or fractions)

    def reflect(self, coords, i: int):
        """Simple reflection s_{i+1} (0-based index) in fundamental coordinates."""
        c = coords[i]
        if not c:
            return tuple(coords)
        row = self.cartan_matrix[i]
        return tuple(x - c * a for x, a in zip(coords, row))

    def dominant_coords(self, coords):
        word: list[int] = []
        coords = tuple(coords)
        while True:
            i = next((k for k, c in enumerate(coords) if c < 0), None)
            if i is None:
                return coords, tuple(word)
            coords = self.reflect(coords, i)
            word.append(i + 1)

    def orbit_coords(self, coords, cap: int = DEFAULTS.orbit_cap) -> list:
        start, _ = self.dominant_coords(coords)
        seen = {start}
        order = [start]
        queue = deque([start])
        while queue:
            current = queue.popleft()
            for i, c in enumerate(current):
                if c <= 0:
                    continue
                image = self.reflect(current, i)
                if image not in seen:
                    seen.add(image)
                    order.append(image)
                    queue.append(image)
                    if len(order) > cap:
                        raise OrbitCapExceeded(
                            cap, f"Weyl orbit of {format_weight(start)} in {self.name}"
                        )
        return order

    def simple_coords(self, coords) -> tuple[Fraction, ...]:
        """Coordinates with respect to the simple roots."""
        return tuple(
            sum((Fraction(coords[i]) * self.inverse_cartan[i][j] for i in range(self.rank)), Fraction(0))
            for j in range(self.rank)
        )

    def height(self, coords) -> Fraction:
        return sum(self.simple_coords(coords), Fraction(0))

    def in_root_lattice(self, coords) -> bool:
        return all(Fraction(c).denominator == 1 for c in coords) and all(
            x.denominator == 1 for x in self.simple_coords(coords)
        )

    def dominates(self, upper, lower) -> bool:
        """``upper - lower`` is a non-negative rational combination of simple roots."""
        return all(x >= 0 for x in self.simple_coords(tuple(a - b for a, b in zip(upper, lower))))

    def w0_ambient(self, vector) -> tuple:
        return tuple(sign * vector[source] for source, sign in self.w0_permutation)

    def dual_coords(self, coords) -> tuple:
        return tuple(coords[self.duality[i]] for i in range(self.rank))

    # Dynkin diagram

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.cartan_matrix[i - 1][j - 1] != 0

    def neighbours(self, j: int) -> list[int]:
        return [i for i in range(1, self.rank + 1) if self.adjacent(i, j)]

    def is_connected(self, nodes) -> bool:
        nodes = set(nodes)
        if not nodes:
            return False
        start = min(nodes)
        reached = {start}
        stack = [start]
        while stack:
            current = stack.pop()
            for other in self.neighbours(current):
                if other in nodes and other not in reached:
                    reached.add(other)
                    stack.append(other)
        return reached == nodes


def _unit(dim: int, i: int) -> list[Fraction]:
    return [Fraction(1 if k == i else 0) for k in range(dim)]


def _simple_roots(series: str, rank: int) -> list[tuple[Fraction, ...]]:
    dim = rank + 1 if series == "A" else rank

    def e(i):
        return _unit(dim, i)

    roots = [[a - b for a, b in zip(e(i), e(i + 1))] for i in range(rank - 1)]
    last = rank - 1
    if series == "A":
        roots.append([a - b for a, b in zip(e(last), e(last + 1))])
    elif series == "B":
        roots.append(e(last))
    elif series == "C":
        roots.append([2 * x for x in e(last)])
    else:
        roots.append([a + b for a, b in zip(e(last - 1), e(last))])
    return [tuple(root) for root in roots]


def _weyl_order(series: str, rank: int) -> int:
    if series == "A":
        return math.factorial(rank + 1)
    if series in ("B", "C"):
        return 2**rank * math.factorial(rank)
    return 2 ** (rank - 1) * math.factorial(rank)


def _w0_permutation(series: str, rank: int) -> tuple[tuple[int, int], ...]:
    if series == "A":
        n = rank + 1
        return tuple((n - 1 - k, 1) for k in range(n))
    if series == "D" and rank % 2 == 1:
        return tuple((k, -1) for k in range(rank - 1)) + ((rank - 1, 1),)
    return tuple((k, -1) for k in range(rank))


POSITIVE_ROOT_COUNT = {
    "A": lambda l: l * (l + 1) // 2,
    "B": lambda l: l * l,
    "C": lambda l: l * l,
    "D": lambda l: l * (l - 1),
}


@lru_cache(maxsize=None)
def build_root_system(series: str, rank: int) -> RootSystem:
    validate_group(series, rank)
    simple = _simple_roots(series, rank)
    cartan = tuple(
        tuple(int(2 * linalg.dot(a, b) / linalg.dot(b, b)) for b in simple) for a in simple
    )
    inverse_cartan = linalg.inverse(cartan)
    fundamental = tuple(
        tuple(
            sum((inverse_cartan[i][k] * simple[k][c] for k in range(rank)), Fraction(0))
            for c in range(len(simple[0]))
        )
        for i in range(rank)
    )
    rs = RootSystem(
        series=series,
        rank=rank,
        simple_roots=tuple(simple),
        cartan_matrix=cartan,
        fundamental_ambient=fundamental,
        inverse_cartan=inverse_cartan,
        weyl_order=_weyl_order(series, rank),
        w0_permutation=_w0_permutation(series, rank),
    )

    duality = []
    for j in range(1, rank + 1):
        image = rs.weight_from_ambient(
            tuple(-x for x in rs.w0_ambient(rs.fundamental_weight(j).ambient))
        )
        target = [i for i, c in enumerate(image.fundamental) if c]
        if len(target) != 1 or image.fundamental[target[0]] != 1:
            raise SoundnessError(f"-w0 does not permute the fundamental weights of {rs.name}")
        duality.append(target[0])
    # duality[i] = index whose coordinate lands in slot i
    inverse_duality = [0] * rank
    for source, target in enumerate(duality):
        inverse_duality[target] = source
    object.__setattr__(rs, "duality", tuple(inverse_duality))

    roots = set()
    for j in range(rank):
        roots.update(rs.orbit_coords(cartan[j]))
        roots.update(tuple(-x for x in point) for point in rs.orbit_coords(cartan[j]))
    positive = sorted(
        (root for root in roots if all(x >= 0 for x in rs.simple_coords(root))),
        key=lambda root: (rs.height(root), root),
    )
    if len(positive) != POSITIVE_ROOT_COUNT[series](rank):
        raise SoundnessError(f"{rs.name}: found {len(positive)} positive roots")
    object.__setattr__(rs, "positive_roots", tuple(rs.weight(root) for root in positive))
    logger.debug("built %s with %d positive roots", rs.name, len(positive))
    return rs


def apply_word(rs: RootSystem, weight: Weight, word) -> Weight:
    coords = weight.fundamental
    for node in word:
        coords = rs.reflect(coords, node - 1)
    return rs.weight(coords)


def dominant_representative(rs: RootSystem, weight: Weight) -> tuple[Weight, tuple[int, ...]]:
    """Dominant point of the orbit and the reflection word (applied left to right) reaching it."""
    coords, word = rs.dominant_coords(weight.fundamental)
    return rs.weight(coords), word


def orbit_sort_key(rs: RootSystem, dominant, coords):
    return (rs.height(tuple(a - b for a, b in zip(dominant, coords))), tuple(-c for c in coords))


def weyl_orbit(rs: RootSystem, weight: Weight, cap: int = DEFAULTS.orbit_cap) -> list[Weight]:
    """The Weyl orbit, dominant point first, then by depth below it."""
    dominant, _ = rs.dominant_coords(weight.fundamental)
    points = rs.orbit_coords(dominant, cap)
    points.sort(key=lambda coords: orbit_sort_key(rs, dominant, coords))
    return [rs.weight(coords) for coords in points]


def longest_element_action(rs: RootSystem, weight: Weight) -> Weight:
    return rs.weight_from_ambient(rs.w0_ambient(weight.ambient))


def dual_weight(rs: RootSystem, weight: Weight) -> Weight:
    """``-w0 * weight``, the highest weight of the dual module."""
    if not weight.is_dominant:
        raise PreconditionError(f"dual_weight needs a dominant weight, got {weight}")
    return -longest_element_action(rs, weight)


def is_self_dual(rs: RootSystem, weight: Weight) -> bool:
    return rs.dual_coords(weight.fundamental) == tuple(weight.fundamental)


# Levi subsystems


@dataclass(frozen=True)
class LeviComponent:
    """A connected sub-diagram; ``nodes`` lists ambient labels in the component's own order."""

    series: str
    rank: int
    nodes: tuple[int, ...]

    @property
    def name(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def root_system(self) -> RootSystem:
        return build_root_system(self.series, self.rank)


@dataclass(frozen=True)
class LeviSubsystem:
    root_system: RootSystem
    selected: frozenset[int]
    components: tuple[LeviComponent, ...]
    projector: tuple[tuple[Fraction, ...], ...]

    def project(self, vector) -> tuple[Fraction, ...]:
        return linalg.mat_vec(self.projector, vector)


@dataclass(frozen=True)
class LeviProjection:
    restricted: Weight
    central: Weight
    parts: tuple[tuple[LeviComponent, Weight], ...]


def _classify_component(rs: RootSystem, nodes: frozenset[int]) -> LeviComponent:
    ordered = sorted(nodes)
    k = len(ordered)
    l = rs.rank
    if k == 1:
        return LeviComponent("A", 1, tuple(ordered))
    if rs.series in ("B", "C") and l in nodes:
        return LeviComponent(rs.series, k, tuple(ordered))
    if rs.series == "D" and {l - 1, l} <= nodes:
        if k == 3:
            return LeviComponent("A", 3, (l - 1, l - 2, l))
        return LeviComponent("D", k, tuple(ordered))
    # every other connected piece is a simply laced path
    ends = [n for n in ordered if sum(1 for m in nodes if rs.adjacent(n, m)) == 1]
    path = [min(ends)]
    while len(path) < k:
        path.append(next(m for m in nodes if rs.adjacent(path[-1], m) and m not in path))
    return LeviComponent("A", k, tuple(path))


def _check_component(rs: RootSystem, component: LeviComponent) -> None:
    sub = tuple(
        tuple(rs.cartan_matrix[a - 1][b - 1] for b in component.nodes) for a in component.nodes
    )
    if sub != component.root_system.cartan_matrix:
        raise SoundnessError(
            f"sub-diagram {sorted(component.nodes)} of {rs.name} misidentified as {component.name}"
        )


def _connected_pieces(rs: RootSystem, nodes) -> list[frozenset[int]]:
    remaining = set(nodes)
    pieces = []
    while remaining:
        start = min(remaining)
        piece = {start}
        stack = [start]
        while stack:
            current = stack.pop()
            for other in rs.neighbours(current):
                if other in remaining and other not in piece:
                    piece.add(other)
                    stack.append(other)
        remaining -= piece
        pieces.append(frozenset(piece))
    return pieces


def levi_subsystem(rs: RootSystem, nodes) -> LeviSubsystem:
    selected = frozenset(int(n) for n in nodes)
    if not selected <= set(range(1, rs.rank + 1)):
        raise PreconditionError(f"Levi nodes {sorted(selected)} are not all in 1..{rs.rank}")
    components = []
    for piece in _connected_pieces(rs, selected):
        component = _classify_component(rs, piece)
        _check_component(rs, component)
        components.append(component)

    dim = rs.ambient_dim
    ordered = sorted(selected)
    if not ordered:
        projector = tuple(tuple(Fraction(0) for _ in range(dim)) for _ in range(dim))
    else:
        roots = [rs.simple_roots[n - 1] for n in ordered]
        gram_inverse = linalg.inverse([[linalg.dot(a, b) for b in roots] for a in roots])
        projector = tuple(
            tuple(
                sum(
                    (
                        roots[a][row] * gram_inverse[a][b] * roots[b][col]
                        for a in range(len(roots))
                        for b in range(len(roots))
                    ),
                    Fraction(0),
                )
                for col in range(dim)
            )
            for row in range(dim)
        )
    return LeviSubsystem(rs, selected, tuple(components), projector)


def project_weight(levi: LeviSubsystem, weight: Weight) -> LeviProjection:
    """Split ``weight`` into its projection on the Levi span and the central part."""
    rs = levi.root_system
    if not weight.is_dominant:
        raise PreconditionError(f"project_weight needs a dominant weight, got {weight}")
    restricted = rs.weight_from_ambient(levi.project(weight.ambient))
    central = weight - restricted
    parts = tuple(
        (
            component,
            component.root_system.weight(tuple(weight.fundamental[n - 1] for n in component.nodes)),
        )
        for component in levi.components
    )
    return LeviProjection(restricted, central, parts)


def connected_subdiagrams(rs: RootSystem) -> list[frozenset[int]]:
    """The empty set, then every connected node set by size and label order."""
    found = [frozenset()]
    for size in range(1, rs.rank + 1):
        for nodes in itertools.combinations(range(1, rs.rank + 1), size):
            if rs.is_connected(nodes):
                found.append(frozenset(nodes))
    return found


def type_a_chain_length(rs: RootSystem, j: int) -> int:
    """Nodes in the longest type-A chain of the diagram that starts at node ``j``."""
    best = 1
    stack = [(j,)]
    while stack:
        path = stack.pop()
        best = max(best, len(path))
        for other in rs.neighbours(path[-1]):
            if other in path:
                continue
            extended = path + (other,)
            if _classify_component(rs, frozenset(extended)).series == "A":
                stack.append(extended)
    return best
