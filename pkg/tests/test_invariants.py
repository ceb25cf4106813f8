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


import random
from fractions import Fraction

import pytest

from orbitrank.config import Options
from orbitrank.errors import PreconditionError
from orbitrank.invariants import (
    Membership,
    Status,
    b1,
    check_r2_criterion,
    d1,
    equal_length_condition,
    euclid_r0,
    in_cone_Ar,
    in_cone_Cr,
    lattice_multiple,
    r0,
    r_invariant,
    verify_theorem1,
    weakest,
)
from orbitrank.rootkit import build_root_system


def _r0(series, rank, coords, options=Options()):
    rs = build_root_system(series, rank)
    return r0(rs, rs.weight(coords), options)


def test_zero_weight():
    result = _r0("A", 2, (0, 0))
    assert (result.value, result.status) == (1, Status.EXACT)


@pytest.mark.parametrize(
    "series, rank, coords, value",
    [
        ("A", 1, (1,), 2),
        ("A", 2, (1, 0), 3),
        ("A", 2, (0, 1), 3),
        ("A", 2, (1, 1), 2),
        ("A", 2, (2, 1), 3),
        ("A", 3, (0, 1, 0), 2),
        ("B", 2, (1, 1), 2),
        ("C", 3, (0, 1, 0), 2),
        ("D", 4, (0, 0, 1, 0), 2),
    ],
)
def test_r0_small_cases(series, rank, coords, value):
    result = _r0(series, rank, coords)
    assert result.value == value
    assert result.status is Status.EXACT
    assert result.weyl_certificate.size >= result.value
    assert result.lower_bound


def test_r0_su4_vector():
    result = _r0("A", 3, (1, 0, 0))
    assert (result.value, result.status) == (4, Status.EXACT)
    assert result.weyl_certificate.size == 4


@pytest.mark.slow
def test_r0_su5_vector():
    result = _r0("A", 4, (1, 0, 0, 0))
    assert (result.value, result.status) == (5, Status.EXACT)


def test_r0_budget_fallback():
    result = _r0("A", 3, (1, 0, 0), Options(search_budget=1))
    assert result.value == 4
    assert result.status is Status.EXACT
    assert any("basic solution" in step for step in result.transcript)


@pytest.mark.slow
def test_r0_is_scale_invariant():
    rng = random.Random(3)
    rs = build_root_system("A", 2)
    for _ in range(20):
        coords = (rng.randint(0, 2), rng.randint(1, 2))
        q = rng.randint(2, 4)
        assert r0(rs, rs.weight(tuple(q * c for c in coords))).value == r0(rs, rs.weight(coords)).value
    assert r0(rs, rs.weight((Fraction(1, 2), 0))).value == 3


def test_r0_rejects_non_dominant():
    with pytest.raises(PreconditionError):
        _r0("A", 2, (-1, 1))


def test_r0_transcript_and_dict():
    payload = _r0("A", 2, (1, 0)).to_dict()
    assert payload["operation"] == "r0"
    assert payload["input"] == {"group": "A2", "weight": "1,0"}
    assert payload["status"] == "exact"
    assert len(payload["certificates"]["weyl"]["points"]) == 3
    assert payload["certificates"]["tensor"] is None


def test_lattice_multiple():
    rs = build_root_system("A", 3)
    assert lattice_multiple(rs, (1, 0, 0), 3) == 4
    assert lattice_multiple(rs, (1, 0, 0), 4) == 1
    assert lattice_multiple(rs, (0, 1, 0), 3) == 2


def test_weakest():
    assert weakest([Status.EXACT, Status.SATURATION]) is Status.SATURATION
    assert weakest([Status.EXACT, Status.UPPER, Status.SATURATION]) is Status.UPPER


@pytest.mark.parametrize(
    "series, rank, coords, value",
    [
        ("A", 1, (1,), 2),
        ("A", 2, (1, 0), 3),
        ("A", 2, (1, 1), 2),
        ("A", 3, (0, 1, 0), 3),
        ("C", 2, (0, 1), 2),
        ("B", 2, (0, 1), 2),
        ("B", 2, (1, 0), 2),
        ("B", 3, (0, 0, 1), 2),
    ],
)
def test_r_invariant(series, rank, coords, value):
    rs = build_root_system(series, rank)
    result = r_invariant(rs, rs.weight(coords))
    assert result.value == value
    assert result.value <= rank + 1
    best = max(term.result.value for term in result.terms)
    assert best == value


def test_r_invariant_zero_weight():
    rs = build_root_system("B", 2)
    assert r_invariant(rs, rs.zero).value == 1


@pytest.mark.slow
def test_r_invariant_d5_half_spin():
    rs = build_root_system("D", 5)
    assert r_invariant(rs, rs.fundamental_weight(5)).value == 5


def test_d1():
    rs = build_root_system("A", 1)
    assert d1(rs, (2,), 8).value == 2
    assert d1(rs, (3,), 8).value == 4
    assert d1(rs, (0,), 8).value == 1
    missing = d1(rs, (1,), 6)
    assert missing.value is None
    assert missing.bound == 6


def test_d1_rejects_bad_bound():
    with pytest.raises(PreconditionError):
        d1(build_root_system("A", 1), (1,), 0)


def test_b1():
    rs = build_root_system("A", 1)
    result = b1(rs, (1,), 8, 3)
    assert (result.value, result.q) == (2, 2)
    with pytest.raises(PreconditionError):
        b1(rs, (0,), 8, 3)


def test_b1_su3_vector():
    result = b1(build_root_system("A", 2), (1, 0), 6, 3)
    assert (result.value, result.q) == (3, 2)


@pytest.mark.parametrize("series, rank, coords", [("A", 1, (1,)), ("A", 2, (1, 0)), ("A", 2, (1, 1)), ("B", 2, (1, 0))])
def test_verify_theorem1(series, rank, coords):
    rs = build_root_system(series, rank)
    report = verify_theorem1(rs, coords, range(1, 4), 8)
    assert report.passed
    assert all(row.holds is not False for row in report.rows)


def test_verify_theorem1_rows_a1():
    report = verify_theorem1(build_root_system("A", 1), (1,), range(1, 4), 8)
    assert [(row.q, row.d1) for row in report.rows] == [(1, None), (2, 2), (3, 4)]
    assert report.b1.value == 2


def test_membership():
    rs = build_root_system("A", 2)
    assert in_cone_Ar(rs, (1, 0), 3) is Membership.YES
    assert in_cone_Ar(rs, (1, 0), 2) is Membership.NO
    assert in_cone_Cr(rs, (1, 0), 2) is Membership.NO
    assert in_cone_Cr(rs, (1, 1), 2) is Membership.YES


def test_cone_midpoint_convexity():
    rng = random.Random(19)
    rs = build_root_system("A", 2)
    members = [c for c in ((a, b) for a in range(3) for b in range(3)) if in_cone_Ar(rs, c, 3) is Membership.YES]
    for _ in range(20):
        first, second = rng.choice(members), rng.choice(members)
        midpoint = tuple(Fraction(x + y, 2) for x, y in zip(first, second))
        assert in_cone_Ar(rs, midpoint, 3) is Membership.YES


@pytest.mark.parametrize(
    "series, rank, coords, condition",
    [
        ("A", 2, (1, 1), True),
        ("A", 2, (1, 0), False),
        ("B", 2, (1, 0), True),
        ("B", 3, (1, 2, 0), False),
        ("B", 3, (2, 2, 5), True),
    ],
)
def test_equal_length_condition(series, rank, coords, condition):
    rs = build_root_system(series, rank)
    assert equal_length_condition(rs, rs.weight(coords)) is condition


@pytest.mark.parametrize("coords", [(1, 1), (1, 0), (2, 1), (0, 0)])
def test_r2_criterion_a2(coords):
    report = check_r2_criterion(build_root_system("A", 2), coords)
    assert report.consistent is True


@pytest.mark.parametrize(
    "n, j, value",
    [(2, 1, 2), (6, 2, 3), (6, 3, 2), (7, 2, 5), (7, 3, 5), (8, 3, 5), (9, 2, 6), (9, 4, 6), (5, 3, 4)],
)
def test_euclid_r0(n, j, value):
    assert euclid_r0(n, j) == value


def test_euclid_r0_is_symmetric():
    for n in range(2, 10):
        for j in range(1, n):
            assert euclid_r0(n, j) == euclid_r0(n, n - j)


def test_euclid_r0_range():
    with pytest.raises(PreconditionError):
        euclid_r0(4, 4)


@pytest.mark.parametrize("n, j", [(5, 2), (5, 3), (6, 2), pytest.param(7, 3, marks=pytest.mark.slow)])
def test_euclid_matches_search(n, j):
    rs = build_root_system("A", n - 1)
    coords = tuple(1 if i == j - 1 else 0 for i in range(n - 1))
    assert r0(rs, rs.weight(coords)).value == euclid_r0(n, j)


@pytest.mark.slow
@pytest.mark.parametrize("j", [3, 5])
def test_su8_third_weight_beats_euclid(j):
    # four orbit points already balance, one fewer than the Euclidean recursion
    rs = build_root_system("A", 7)
    coords = tuple(1 if i == j - 1 else 0 for i in range(7))
    result = r0(rs, rs.weight(coords))
    assert result.value == 4
    assert euclid_r0(8, j) == 5
    assert result.weyl_certificate is not None or result.tensor_certificate is not None


def test_oversized_weyl_certificate_is_logged_as_info(monkeypatch, caplog):
    from orbitrank.errors import SearchBudgetExceeded
    from orbitrank.polygeom import ZeroCertificate
    from orbitrank.rootkit import weyl_orbit

    rs = build_root_system("A", 2)
    weight = rs.weight((2, 1))

    def centered(vector):
        mean = sum(vector, Fraction(0)) / len(vector)
        return tuple(Fraction(x) - mean for x in vector)

    by_shape = {centered(point.ambient): point for point in weyl_orbit(rs, weight)}
    # four orbit points of the hexagon balancing at the origin
    shapes = ((3, 1, 0), (0, 3, 1), (3, 0, 1), (0, 1, 3))
    points = tuple(by_shape[centered(shape)] for shape in shapes)
    coefficients = (Fraction(2, 9), Fraction(5, 18), Fraction(2, 9), Fraction(5, 18))

    def exhausted(*args, **kwargs):
        raise SearchBudgetExceeded(1)

    def four_points(*args, **kwargs):
        certificate = ZeroCertificate(points, coefficients)
        certificate.verify(rs)
        return certificate

    monkeypatch.setattr("orbitrank.invariants.min_zero_subset", exhausted)
    monkeypatch.setattr("orbitrank.invariants.orbit_basic_certificate", four_points)
    with caplog.at_level("INFO", logger="orbitrank.invariants"):
        result = r0(rs, weight)
    assert result.value == 3
    assert result.weyl_certificate.size == 4
    assert result.gaps
    gap_records = [record for record in caplog.records if "exceeds the certified value" in record.getMessage()]
    assert [record.levelname for record in gap_records] == ["INFO"]
