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


import math
import random

import pytest

from orbitrank.charalg import (
    decompose_character,
    dominant_character,
    dominant_weights_below,
    invariant_dim_tensor_power,
    multiply_characters,
    symmetric_power_character,
    symmetric_power_invariant_dim,
    tensor_decompose,
    trivial_multiplicity,
    weyl_dim,
)
from orbitrank.errors import CharacterCapExceeded, PreconditionError
from orbitrank.rootkit import build_root_system


@pytest.mark.parametrize(
    "series, rank, coords, dim",
    [
        ("A", 1, (3,), 4),
        ("A", 2, (1, 1), 8),
        ("A", 2, (2, 0), 6),
        ("A", 3, (0, 1, 0), 6),
        ("B", 2, (1, 0), 5),
        ("B", 2, (0, 1), 4),
        ("C", 2, (1, 0), 4),
        ("C", 2, (0, 1), 5),
        ("B", 3, (0, 0, 1), 8),
        ("D", 4, (0, 1, 0, 0), 28),
        ("D", 5, (0, 0, 0, 0, 1), 16),
    ],
)
def test_weyl_dim(series, rank, coords, dim):
    assert weyl_dim(build_root_system(series, rank), coords) == dim


def test_weyl_dim_needs_dominant():
    with pytest.raises(PreconditionError):
        weyl_dim(build_root_system("A", 2), (-1, 1))


def test_adjoint_character():
    rs = build_root_system("A", 2)
    assert dominant_character(rs, (1, 1)).multiplicities == {(1, 1): 1, (0, 0): 2}


def test_dominant_weights_below():
    rs = build_root_system("A", 2)
    assert dominant_weights_below(rs, (2, 2)) == [(2, 2), (3, 0), (0, 3), (1, 1), (0, 0)]


def test_character_cap():
    rs = build_root_system("A", 3)
    with pytest.raises(CharacterCapExceeded):
        dominant_weights_below(rs, (4, 4, 4), cap=5)


@pytest.mark.parametrize(
    "series, rank, first, second, expected",
    [
        ("A", 1, (1,), (1,), {(2,): 1, (0,): 1}),
        ("A", 2, (1, 0), (0, 1), {(1, 1): 1, (0, 0): 1}),
        ("A", 2, (1, 1), (1, 1), {(2, 2): 1, (3, 0): 1, (0, 3): 1, (1, 1): 2, (0, 0): 1}),
        ("B", 2, (0, 1), (0, 1), {(0, 2): 1, (1, 0): 1, (0, 0): 1}),
    ],
)
def test_tensor_decompose(series, rank, first, second, expected):
    rs = build_root_system(series, rank)
    decomposition = tensor_decompose(rs, first, second)
    assert decomposition.components == expected
    assert decomposition.dimension(rs) == weyl_dim(rs, first) * weyl_dim(rs, second)


def _random_dominant(rng, rank, top):
    return tuple(rng.randint(0, top) for _ in range(rank))


@pytest.mark.slow
@pytest.mark.parametrize("series, rank", [("A", 2), ("B", 2), ("C", 3), ("A", 3)])
def test_klimyk_matches_character_product(series, rank):
    rng = random.Random(5)
    rs = build_root_system(series, rank)
    checked = 0
    while checked < 13:
        first, second = _random_dominant(rng, rank, 2), _random_dominant(rng, rank, 2)
        if weyl_dim(rs, first) * weyl_dim(rs, second) > 200:
            continue
        product = multiply_characters(rs, dominant_character(rs, first), dominant_character(rs, second))
        assert decompose_character(rs, product) == tensor_decompose(rs, first, second)
        checked += 1


@pytest.mark.slow
@pytest.mark.parametrize("series, rank", [("A", 3), ("B", 3), ("C", 2), ("D", 4)])
def test_freudenthal_mass(series, rank):
    rng = random.Random(7)
    rs = build_root_system(series, rank)
    checked = 0
    while checked < 25:
        coords = _random_dominant(rng, rank, 2)
        if weyl_dim(rs, coords) > 5000:
            continue
        assert dominant_character(rs, coords).dimension(rs) == weyl_dim(rs, coords)
        checked += 1


def test_zero_weight_multiplicity():
    rs = build_root_system("A", 2)
    assert dominant_character(rs, (1, 1)).multiplicity(rs, (0, 0)) == 2
    assert dominant_character(rs, (1, 1)).multiplicity(rs, (-1, 2)) == 1


@pytest.mark.parametrize(
    "series, rank, coords, r, q, count",
    [
        ("A", 1, (1,), 2, 1, 1),
        ("A", 1, (1,), 3, 1, 0),
        ("A", 1, (1,), 4, 1, 2),
        ("A", 2, (1, 0), 3, 1, 1),
        ("A", 2, (1, 0), 2, 1, 0),
        ("A", 2, (1, 1), 2, 1, 1),
        ("A", 2, (1, 1), 3, 1, 2),
        ("A", 3, (1, 0, 0), 4, 1, 1),
        ("A", 3, (1, 0, 0), 3, 4, 0),
    ],
)
def test_invariant_dim_tensor_power(series, rank, coords, r, q, count):
    assert invariant_dim_tensor_power(build_root_system(series, rank), coords, r, q) == count


def test_trivial_multiplicity_of_tensor_square():
    rs = build_root_system("B", 2)
    square = multiply_characters(rs, dominant_character(rs, (1, 1)), dominant_character(rs, (1, 1)))
    assert trivial_multiplicity(rs, square) == 1


@pytest.mark.parametrize(
    "coords, d, count",
    [((2,), 2, 1), ((1,), 2, 0), ((3,), 2, 0), ((3,), 3, 0), ((3,), 4, 1), ((4,), 2, 1), ((4,), 3, 1)],
)
def test_binary_form_invariants(coords, d, count):
    assert symmetric_power_invariant_dim(build_root_system("A", 1), coords, d) == count


def test_symmetric_power_degree_zero():
    assert symmetric_power_invariant_dim(build_root_system("A", 2), (1, 0), 0) == 1


def test_cubic_invariant_of_adjoint_a2():
    rs = build_root_system("A", 2)
    assert symmetric_power_invariant_dim(rs, (1, 1), 2) == 1
    assert symmetric_power_invariant_dim(rs, (1, 1), 3) == 1


@pytest.mark.parametrize(
    "series, rank, coords, d",
    [("A", 1, (2,), 5), ("A", 2, (1, 0), 4), ("B", 2, (0, 1), 3), ("C", 2, (1, 0), 4), ("A", 3, (0, 1, 0), 3)],
)
def test_symmetric_power_dimension(series, rank, coords, d):
    rs = build_root_system(series, rank)
    character = symmetric_power_character(rs, coords, d)
    assert character.dimension(rs) == math.comb(weyl_dim(rs, coords) + d - 1, d)
    assert decompose_character(rs, character).dimension(rs) == character.dimension(rs)


@pytest.mark.slow
def test_symmetric_power_dimension_random():
    rng = random.Random(13)
    groups = [build_root_system(series, rank) for series, rank in (("A", 2), ("B", 2), ("C", 3), ("A", 3))]
    checked = 0
    while checked < 30:
        rs = rng.choice(groups)
        coords = _random_dominant(rng, rs.rank, 1)
        d = rng.randint(2, 4)
        expected = math.comb(weyl_dim(rs, coords) + d - 1, d)
        if not any(coords) or expected > 5000:
            continue
        assert symmetric_power_character(rs, coords, d).dimension(rs) == expected
        checked += 1


def test_symmetric_square_of_vector_representation():
    rs = build_root_system("A", 2)
    assert decompose_character(rs, symmetric_power_character(rs, (1, 0), 2)).components == {(2, 0): 1}
