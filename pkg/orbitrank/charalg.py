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

"""Characters of irreducible modules and their tensor and symmetric powers.

Weights are integer tuples in fundamental-weight coordinates. Characters are
stored on their dominant support; Weyl symmetry restores the rest.
"""

import logging
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from orbitrank import linalg
from orbitrank.config import DEFAULTS, format_weight
from orbitrank.errors import CharacterCapExceeded, PreconditionError, SoundnessError
from orbitrank.rootkit import RootSystem, Weight, levi_subsystem

logger = logging.getLogger(__name__)

Coords = tuple[int, ...]


def as_coords(weight) -> Coords:
    if isinstance(weight, Weight):
        return weight.integral_coords()
    coords = tuple(weight)
    if any(Fraction(c).denominator != 1 for c in coords):
        raise PreconditionError(f"weight {format_weight(coords)} is not integral")
    return tuple(int(c) for c in coords)


def _add(a, b) -> Coords:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b) -> Coords:
    return tuple(x - y for x, y in zip(a, b))


def _times(k: int, a) -> Coords:
    return tuple(k * x for x in a)


# root data


@dataclass(frozen=True)
class _RootData:
    positive_roots: tuple[Coords, ...]
    pairings: np.ndarray  # (weight . alpha) scaled to integers, one row per positive root
    rho_pairings: tuple[int, ...]
    gram: np.ndarray  # scaled Gram matrix of the fundamental weights


@lru_cache(maxsize=None)
def _root_data(rs: RootSystem) -> _RootData:
    roots = tuple(root.integral_coords() for root in rs.positive_roots)
    fundamental = rs.fundamental_ambient
    pair = [[linalg.dot(fw, root.ambient) for fw in fundamental] for root in rs.positive_roots]
    gram = [[linalg.dot(a, b) for b in fundamental] for a in fundamental]
    pair_scale = linalg.common_denominator(x for row in pair for x in row)
    gram_scale = linalg.common_denominator(x for row in gram for x in row)
    pairings = np.array([[int(x * pair_scale) for x in row] for row in pair], dtype=object)
    rho_pairings = tuple(int(sum(row)) for row in pairings)
    return _RootData(
        roots,
        pairings,
        rho_pairings,
        np.array([[int(x * gram_scale) for x in row] for row in gram], dtype=np.int64),
    )


def scaled_norm(rs: RootSystem, coords) -> int:
    v = np.array(coords, dtype=np.int64)
    return int(v @ _root_data(rs).gram @ v)


def _inner(rs: RootSystem, a, b) -> int:
    return int(np.array(a, dtype=np.int64) @ _root_data(rs).gram @ np.array(b, dtype=np.int64))


@lru_cache(maxsize=1 << 18)
def reflect_to_dominant(rs: RootSystem, coords: Coords) -> tuple[Coords, int]:
    """Dominant representative and the sign of the reflection word reaching it."""
    dominant, word = rs.dominant_coords(coords)
    return tuple(int(c) for c in dominant), -1 if len(word) % 2 else 1


@lru_cache(maxsize=1 << 14)
def orbit_size(rs: RootSystem, coords: Coords) -> int:
    zero_nodes = [i + 1 for i, c in enumerate(coords) if c == 0]
    stabiliser = math.prod(c.root_system.weyl_order for c in levi_subsystem(rs, zero_nodes).components)
    return rs.weyl_order // stabiliser


@lru_cache(maxsize=1 << 12)
def _orbit(rs: RootSystem, coords: Coords) -> tuple[Coords, ...]:
    return tuple(tuple(int(c) for c in p) for p in rs.orbit_coords(coords))


def weyl_dim(rs: RootSystem, weight) -> int:
    """Dimension of the irreducible module by the Weyl product formula."""
    coords = as_coords(weight)
    if any(c < 0 for c in coords):
        raise PreconditionError(f"weyl_dim needs a dominant weight, got {format_weight(coords)}")
    return _weyl_dim(rs, coords)


@lru_cache(maxsize=1 << 14)
def _weyl_dim(rs: RootSystem, coords: Coords) -> int:
    data = _root_data(rs)
    shifted = np.array([c + 1 for c in coords], dtype=object)
    numerator = math.prod(int(x) for x in data.pairings.dot(shifted))
    denominator = math.prod(data.rho_pairings)
    if numerator % denominator:
        raise SoundnessError(f"Weyl dimension of {format_weight(coords)} in {rs.name} is not an integer")
    return numerator // denominator


# characters


@dataclass(frozen=True)
class WeightCharacter:
    """Weight multiplicities on the dominant support; constant on Weyl orbits."""

    multiplicities: dict[Coords, int] = field(default_factory=dict)

    def dimension(self, rs: RootSystem) -> int:
        return sum(m * orbit_size(rs, w) for w, m in self.multiplicities.items())

    def multiplicity(self, rs: RootSystem, weight) -> int:
        dominant, _ = reflect_to_dominant(rs, as_coords(weight))
        return self.multiplicities.get(dominant, 0)

    def full(self, rs: RootSystem) -> dict[Coords, int]:
        weights: dict[Coords, int] = {}
        for w, m in self.multiplicities.items():
            for point in _orbit(rs, w):
                weights[point] = m
        return weights

    def to_dict(self) -> dict:
        return {format_weight(w): m for w, m in sorted(self.multiplicities.items(), reverse=True)}


@dataclass(frozen=True)
class IrrDecomposition:
    """Highest weights of irreducible components with their multiplicities."""

    components: dict[Coords, int] = field(default_factory=dict)

    def dimension(self, rs: RootSystem) -> int:
        return sum(m * _weyl_dim(rs, w) for w, m in self.components.items())

    def multiplicity(self, weight) -> int:
        return self.components.get(as_coords(weight), 0)

    def to_dict(self) -> dict:
        return {format_weight(w): m for w, m in sorted(self.components.items(), reverse=True)}


def dominant_weights_below(rs: RootSystem, coords: Coords, cap: int = DEFAULTS.character_cap) -> list[Coords]:
    """Dominant weights ``mu`` with ``coords - mu`` a sum of positive roots, shallowest first.

    Each one is reached from a dominant weight above it by subtracting a
    single positive root.
    """
    roots = _root_data(rs).positive_roots
    seen = {coords}
    frontier = [coords]
    while frontier:
        following = []
        for weight in frontier:
            for root in roots:
                lower = _sub(weight, root)
                if min(lower) >= 0 and lower not in seen:
                    seen.add(lower)
                    following.append(lower)
                    if len(seen) > cap:
                        raise CharacterCapExceeded(cap, f"dominant weights below {format_weight(coords)}")
        frontier = following
    return sorted(seen, key=lambda w: (rs.height(_sub(coords, w)), tuple(-c for c in w)))


def dominant_character(rs: RootSystem, weight, cap: int = DEFAULTS.character_cap) -> WeightCharacter:
    coords = as_coords(weight)
    if any(c < 0 for c in coords):
        raise PreconditionError(f"dominant_character needs a dominant weight, got {format_weight(coords)}")
    return _dominant_character(rs, coords, cap)


@lru_cache(maxsize=1 << 10)
def _dominant_character(rs: RootSystem, coords: Coords, cap: int) -> WeightCharacter:
    """Freudenthal's recursion over the dominant weights of the module."""
    data = _root_data(rs)
    rho = (1,) * rs.rank
    top = scaled_norm(rs, _add(coords, rho))
    multiplicities: dict[Coords, int] = {}
    for mu in dominant_weights_below(rs, coords, cap):
        if mu == coords:
            multiplicities[mu] = 1
            continue
        total = 0
        for root in data.positive_roots:
            k = 1
            while True:
                shifted = _add(mu, _times(k, root))
                dominant, _ = reflect_to_dominant(rs, shifted)
                m = multiplicities.get(dominant)
                if m is None:
                    break
                total += m * _inner(rs, shifted, root)
                k += 1
        denominator = top - scaled_norm(rs, _add(mu, rho))
        if (2 * total) % denominator:
            raise SoundnessError(f"Freudenthal recursion gave a fraction at {format_weight(mu)}")
        multiplicities[mu] = 2 * total // denominator
    character = WeightCharacter(multiplicities)
    if character.dimension(rs) != _weyl_dim(rs, coords):
        raise SoundnessError(f"character of {format_weight(coords)} in {rs.name} has the wrong mass")
    return character


def tensor_decompose(rs: RootSystem, first, second, cap: int = DEFAULTS.character_cap) -> IrrDecomposition:
    """Brauer-Klimyk decomposition of ``V_first (x) V_second``."""
    a, b = as_coords(first), as_coords(second)
    if min(a + b) < 0:
        raise PreconditionError("tensor_decompose needs dominant weights")
    # run over the weights of the smaller factor
    if (_weyl_dim(rs, a), a) < (_weyl_dim(rs, b), b):
        a, b = b, a
    return _tensor_decompose(rs, a, b, cap)


@lru_cache(maxsize=1 << 12)
def _tensor_decompose(rs: RootSystem, top: Coords, other: Coords, cap: int) -> IrrDecomposition:
    shift = tuple(c + 1 for c in top)
    components: dict[Coords, int] = {}
    character = _dominant_character(rs, other, cap)
    for weight, m in character.full(rs).items():
        dominant, sign = reflect_to_dominant(rs, _add(shift, weight))
        if 0 in dominant:
            continue
        highest = tuple(c - 1 for c in dominant)
        components[highest] = components.get(highest, 0) + sign * m
    components = {w: m for w, m in components.items() if m}
    if any(m < 0 for m in components.values()):
        raise SoundnessError(f"negative multiplicity in {format_weight(top)} x {format_weight(other)}")
    return IrrDecomposition(components)


def decompose_character(rs: RootSystem, character: WeightCharacter, cap: int = DEFAULTS.character_cap) -> IrrDecomposition:
    """Peel off irreducible characters from the highest remaining weight down."""
    remaining = {w: m for w, m in character.multiplicities.items() if m}
    components: dict[Coords, int] = {}
    while remaining:
        highest = max(remaining, key=lambda w: (rs.height(w), w))
        count = remaining[highest]
        if count < 0:
            raise PreconditionError(f"character is not a module character at {format_weight(highest)}")
        components[highest] = count
        for w, m in _dominant_character(rs, highest, cap).multiplicities.items():
            left = remaining.get(w, 0) - count * m
            if left:
                remaining[w] = left
            else:
                remaining.pop(w, None)
    return IrrDecomposition(components)


def multiply_characters(rs: RootSystem, first: WeightCharacter, second: WeightCharacter) -> WeightCharacter:
    """Product of two characters, kept on the dominant support."""
    product: dict[Coords, int] = {}
    right = second.full(rs)
    for weight, m in first.full(rs).items():
        for other, n in right.items():
            total = _add(weight, other)
            if min(total) >= 0:
                product[total] = product.get(total, 0) + m * n
    return WeightCharacter(product)


# invariants


@lru_cache(maxsize=1 << 12)
def _alternation_weight(rs: RootSystem, coords: Coords, orbit_cap: int) -> int:
    """Signed count of the points ``w rho - rho`` in the orbit of ``coords``."""
    if not rs.in_root_lattice(coords):
        return 0
    rho = (1,) * rs.rank
    total = 0
    for point in rs.orbit_coords(coords, orbit_cap):
        dominant, sign = reflect_to_dominant(rs, _add(tuple(int(c) for c in point), rho))
        if dominant == rho:
            total += sign
    return total


def trivial_multiplicity(rs: RootSystem, character: WeightCharacter, orbit_cap: int = DEFAULTS.orbit_cap) -> int:
    """Invariants of a module from its character: ``sum_w det(w) N(w rho - rho)``."""
    return sum(m * _alternation_weight(rs, w, orbit_cap) for w, m in character.multiplicities.items())


def invariant_dim_tensor_power(
    rs: RootSystem,
    weight,
    r: int,
    q: int = 1,
    cap: int = DEFAULTS.character_cap,
) -> int:
    """Dimension of the invariants in the r-th tensor power of ``V_{q weight}``.

    Counts the dual module inside the (r-1)-st power, dropping components that
    cannot reach it within the remaining factors.
    """
    coords = as_coords(weight)
    if min(coords, default=0) < 0:
        raise PreconditionError(f"invariant_dim_tensor_power needs a dominant weight, got {format_weight(coords)}")
    if r < 1 or q < 1:
        raise PreconditionError(f"r and q must be positive, got r={r}, q={q}")
    mu = _times(q, coords)
    if not rs.in_root_lattice(_times(r, mu)):
        return 0
    if r == 1:
        return 1 if not any(mu) else 0

    dual = tuple(rs.dual_coords(mu))
    dual_norm = scaled_norm(rs, dual)
    transcript: list[str] = []
    current = {mu: 1}
    for step in range(1, r - 1):
        following: dict[Coords, int] = {}
        for component, m in current.items():
            for target, n in _tensor_decompose_ordered(rs, component, mu, cap).components.items():
                following[target] = following.get(target, 0) + m * n
        # after step + 1 factors there are r - 2 - step left before the dual
        left = r - 2 - step
        bound = _times(left + 1, dual)
        limit = (left + 1) ** 2 * dual_norm
        current = {
            c: m
            for c, m in following.items()
            if scaled_norm(rs, c) <= limit and rs.dominates(bound, c)
        }
        transcript.append(f"factor {step + 1}: {len(current)} components kept of {len(following)}")
        logger.debug("%s %s^%d (q=%d): %s", rs.name, format_weight(coords), r, q, transcript[-1])
        if len(current) > cap:
            raise CharacterCapExceeded(cap, f"tensor power of {format_weight(mu)}", transcript)
    return current.get(dual, 0)


def _tensor_decompose_ordered(rs, first, second, cap):
    if (_weyl_dim(rs, first), first) < (_weyl_dim(rs, second), second):
        first, second = second, first
    return _tensor_decompose(rs, first, second, cap)


class _SymmetricChain:
    """Cached characters of ``S^0 .. S^e`` of one module, grown on demand."""

    def __init__(self, rs: RootSystem, coords: Coords, cap: int):
        self.rs = rs
        self.coords = coords
        self.cap = cap
        self.base = _dominant_character(rs, coords, cap).full(rs)
        self.powers = [WeightCharacter({(0,) * rs.rank: 1})]
        self.lock = threading.Lock()

    def get(self, d: int) -> WeightCharacter:
        with self.lock:
            while len(self.powers) <= d:
                self.powers.append(self._next(len(self.powers)))
            return self.powers[d]

    def _next(self, e: int) -> WeightCharacter:
        rs = self.rs
        candidates = dominant_weights_below(rs, _times(e, self.coords), self.cap)
        sums = dict.fromkeys(candidates, 0)
        for k in range(1, e + 1):
            adams = [(_times(k, w), m) for w, m in self.base.items()]
            lower = self.powers[e - k].multiplicities
            for target in candidates:
                total = 0
                for w, m in adams:
                    dominant, _ = reflect_to_dominant(rs, _sub(target, w))
                    n = lower.get(dominant)
                    if n:
                        total += m * n
                sums[target] += total
        multiplicities = {}
        for target, total in sums.items():
            if total % e:
                raise SoundnessError(f"Newton recursion for S^{e} is not divisible at {format_weight(target)}")
            if total:
                multiplicities[target] = total // e
        character = WeightCharacter(multiplicities)
        dim = _weyl_dim(rs, self.coords)
        if character.dimension(rs) != math.comb(dim + e - 1, e):
            raise SoundnessError(f"S^{e} of {format_weight(self.coords)} has the wrong dimension")
        logger.debug("%s S^%d(%s): %d dominant weights", rs.name, e, format_weight(self.coords), len(multiplicities))
        return character


_chains: dict[tuple[RootSystem, Coords, int], _SymmetricChain] = {}
_chains_lock = threading.Lock()


def symmetric_power_character(rs: RootSystem, weight, d: int, cap: int = DEFAULTS.character_cap) -> WeightCharacter:
    """Character of ``S^d V_weight`` by ``e S^e = sum_k psi^k(V) S^(e-k)``."""
    coords = as_coords(weight)
    if min(coords, default=0) < 0:
        raise PreconditionError(f"symmetric powers need a dominant weight, got {format_weight(coords)}")
    if d < 0:
        raise PreconditionError(f"symmetric power degree must be non-negative, got {d}")
    key = (rs, coords, cap)
    with _chains_lock:
        chain = _chains.get(key)
        if chain is None:
            chain = _chains[key] = _SymmetricChain(rs, coords, cap)
    return chain.get(d)


def symmetric_power_invariant_dim(
    rs: RootSystem,
    weight,
    d: int,
    cap: int = DEFAULTS.character_cap,
    orbit_cap: int = DEFAULTS.orbit_cap,
) -> int:
    if d == 0:
        return 1
    return trivial_multiplicity(rs, symmetric_power_character(rs, weight, d, cap), orbit_cap)
