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


from types import SimpleNamespace

import pytest

from orbitrank.config import Options
from orbitrank.errors import PreconditionError, ScanCapExceeded
from orbitrank.invariants import Status
from orbitrank.tables import (
    FAMILIES,
    Outcome,
    TableRow,
    VerifyReport,
    caratheodory_table,
    chain_table,
    compare,
    expected_r,
    grid,
    oracles_table,
    r2_table,
    r_table,
    refutes,
    scan,
    spin_table,
    structural_table,
    su_table,
    theorem1_table,
    verify_paper_tables,
    w0_table,
)


def test_grid_order():
    assert grid(2, 1) == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert len(grid(3, 2)) == 27


@pytest.mark.parametrize(
    "series, rank, j, value",
    [
        ("A", 3, 1, 4),
        ("A", 3, 2, 3),
        ("A", 5, 3, 4),
        ("B", 4, 1, 4),
        ("B", 4, 2, 3),
        ("B", 4, 4, 2),
        ("C", 3, 3, 2),
        ("D", 5, 2, 4),
        ("D", 5, 4, 5),
        ("D", 5, 5, 5),
    ],
)
def test_expected_r(series, rank, j, value):
    assert expected_r(series, rank, j) == value


@pytest.mark.parametrize(
    "value, status, outcome",
    [
        (3, Status.EXACT, Outcome.PASS),
        (3, Status.UPPER, Outcome.PASS),
        (2, Status.UPPER, Outcome.FAIL),
        (4, Status.EXACT, Outcome.FAIL),
        (4, Status.SATURATION, Outcome.FAIL),
        (4, Status.UPPER, Outcome.UNKNOWN),
        (None, Status.UPPER, Outcome.UNKNOWN),
    ],
)
def test_compare(value, status, outcome):
    row = compare("su", "case", 3, SimpleNamespace(value=value, status=status))
    assert row.outcome is outcome


@pytest.mark.parametrize(
    "value, status, outcome",
    [
        (2, Status.UPPER, Outcome.DISCREPANCY),
        (2, Status.EXACT, Outcome.DISCREPANCY),
        (3, Status.UPPER, Outcome.PASS),
        (4, Status.EXACT, Outcome.FAIL),
        (4, Status.UPPER, Outcome.UNKNOWN),
    ],
)
def test_compare_when_the_closed_form_may_fail(value, status, outcome):
    result = SimpleNamespace(value=value, status=status, weyl_certificate=None, tensor_certificate=None)
    row = compare("su", "case", 3, result, closed_form_may_fail=True)
    assert row.outcome is outcome
    if outcome is Outcome.DISCREPANCY:
        assert row.certificate == {"weyl": None, "tensor": None}
        assert "exceeds a verified certificate" in row.note


@pytest.mark.parametrize(
    "value, status, expected, refuted",
    [
        (4, Status.UPPER, 5, True),
        (4, Status.UPPER, 3, False),
        (4, Status.EXACT, 3, True),
        (4, Status.EXACT, 4, False),
        (None, Status.UPPER, 4, False),
    ],
)
def test_refutes(value, status, expected, refuted):
    assert refutes(SimpleNamespace(value=value, status=status), expected) is refuted


def test_verify_report_exit_code():
    passing = TableRow("su", "a", 1, 1, Outcome.PASS)
    unknown = TableRow("su", "b", 1, None, Outcome.UNKNOWN)
    failing = TableRow("su", "c", 1, 2, Outcome.FAIL)
    assert VerifyReport((passing,)).exit_code == 0
    assert VerifyReport((passing, unknown)).exit_code == 2
    assert VerifyReport((unknown, failing)).exit_code == 1
    assert VerifyReport((passing, failing)).to_dict()["summary"] == {"pass": 1, "fail": 1, "unknown": 0, "discrepancy": 0}
    erratum = TableRow("su", "d", 5, 4, Outcome.DISCREPANCY)
    assert VerifyReport((passing, erratum)).exit_code == 0


def test_unknown_family():
    with pytest.raises(PreconditionError):
        verify_paper_tables(Options(), ("nope",))


def test_scan_cap():
    with pytest.raises(ScanCapExceeded):
        scan(2, 1, lambda coords: {}, Options(scan_cap=3))


def test_scan_keeps_grid_order():
    results = scan(2, 2, lambda coords: {"sum": sum(coords)}, Options(threads=4))
    assert [coords for coords, _ in results] == grid(2, 2)
    assert [payload["sum"] for _, payload in results] == [sum(c) for c in grid(2, 2)]


def _all_pass(rows):
    failures = [(row.case, row.expected, row.computed) for row in rows if row.outcome is not Outcome.PASS]
    assert not failures


def test_su_table_small():
    _all_pass(su_table(Options(), max_n=5))
    rows = su_table(Options(), max_n=5)
    closed_form = next(row for row in rows if row.case == "w3 closed form")
    assert closed_form.computed == "case formula q+3"


@pytest.mark.slow
def test_spin_table():
    rows = spin_table(Options())
    _all_pass(rows)
    assert [row.case for row in rows][:2] == ["D5 w4", "D5 w5"]


@pytest.mark.slow
def test_w0_table():
    rows = w0_table(Options(), samples=5)
    assert len(rows) == 25
    _all_pass(rows)


@pytest.mark.slow
def test_chain_table():
    _all_pass(chain_table(Options()))


@pytest.mark.slow
def test_theorem1_table():
    _all_pass(theorem1_table(Options(), max_coeff=1))


@pytest.mark.slow
def test_r2_table():
    _all_pass(r2_table(Options(), max_coeff=2))


@pytest.mark.slow
def test_verify_paper_su_family():
    report = verify_paper_tables(Options(), ("su",))
    assert report.exit_code == 0
    assert report.count(Outcome.FAIL) == report.count(Outcome.UNKNOWN) == 0
    discrepancies = {row.case: row for row in report.rows if row.outcome is Outcome.DISCREPANCY}
    assert set(discrepancies) == {
        "SU8 w3 euclid",
        "SU8 w5 euclid",
        "SU9 w4 euclid",
        "SU9 w5 euclid",
        "SU8 w3 forms",
        "w3 closed form",
    }
    su8 = discrepancies["SU8 w3 euclid"]
    assert (su8.expected, su8.computed) == (5, 4)
    assert su8.certificate["weyl"] or su8.certificate["tensor"]
    assert discrepancies["w3 closed form"].computed == "neither"
    assert "case formula q+3 contradicted at n=[8]" in discrepancies["w3 closed form"].note


def test_caratheodory_family():
    rows = caratheodory_table(Options())
    assert [row.case for row in rows] == ["A2 1,1 x100", "B2 1,1 x100", "A3 0,1,0 x100"]
    _all_pass(rows)
    assert [row.computed <= int(row.expected.split()[1]) for row in rows] == [True] * 3


@pytest.mark.slow
def test_oracles_family():
    rows = oracles_table(Options())
    assert [row.computed for row in rows] == [50, 100, 30]
    _all_pass(rows)


@pytest.mark.slow
def test_structural_family():
    rows = structural_table(Options())
    assert len(rows) == 3
    _all_pass(rows)


@pytest.mark.slow
def test_r_table():
    rows = r_table(Options())
    _all_pass(rows)
    assert any(row.case == "B4 w1 vs w3" for row in rows)
    assert next(row for row in rows if row.case == "D5 w5").computed == 5


def test_new_families_are_selectable():
    assert {"caratheodory", "oracles", "structural"} <= set(FAMILIES)
    report = verify_paper_tables(Options(), ("caratheodory",))
    assert report.exit_code == 0
    assert len(report.rows) == 3
