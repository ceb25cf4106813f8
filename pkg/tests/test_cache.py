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


import json
from concurrent.futures import ThreadPoolExecutor

import pytest

from orbitrank.cache import CacheJournal, ResultRecord, cache_get, cache_put, record_key
from orbitrank.cli import evaluate
from orbitrank.config import Options
from orbitrank.errors import CacheError
from orbitrank.rootkit import build_root_system


def _record(key="k", value=3):
    return ResultRecord.create(key, "r0", "A2", (1, 0), {"value": value})


def test_put_then_get(tmp_path):
    journal = CacheJournal(tmp_path / "journal.jsonl")
    record = _record()
    cache_put(journal, record)
    assert cache_get(journal, "k").payload == {"value": 3}
    assert cache_get(CacheJournal(tmp_path / "journal.jsonl"), "k").payload == {"value": 3}


def test_put_is_idempotent(tmp_path):
    path = tmp_path / "journal.jsonl"
    journal = CacheJournal(path)
    journal.put(_record())
    journal.put(_record(value=4))
    assert len(path.read_text().splitlines()) == 1
    assert journal.get("k").payload == {"value": 3}


def test_engine_version_bump_misses(tmp_path, monkeypatch):
    journal = CacheJournal(tmp_path / "journal.jsonl")
    journal.put(_record())
    monkeypatch.setattr("orbitrank.cache.ENGINE_VERSION", "99.0.0")
    assert journal.get("k") is None


def test_corrupt_lines_are_skipped(tmp_path):
    path = tmp_path / "journal.jsonl"
    CacheJournal(path).put(_record("a"))
    with open(path, "a") as f:
        f.write("{truncated\n")
        f.write(json.dumps({"unexpected": 1}) + "\n")
    CacheJournal(path).put(_record("b"))
    journal = CacheJournal(path)
    assert len(journal) == 2
    assert journal.get("b") is not None


def test_no_journal():
    assert cache_get(None, "k") is None
    cache_put(None, _record())


def test_unwritable_journal(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(CacheError):
        CacheJournal(blocker / "journal.jsonl").put(_record())


def test_concurrent_puts(tmp_path):
    path = tmp_path / "journal.jsonl"
    journal = CacheJournal(path)
    keys = [f"key-{i % 25}" for i in range(100)]
    with ThreadPoolExecutor(max_workers=8) as pool:
        list(pool.map(lambda key: journal.put(_record(key)), keys))
    lines = [json.loads(line)["key"] for line in path.read_text().splitlines()]
    assert sorted(lines) == sorted(set(keys))


def test_record_key_is_canonical():
    options = Options().key()
    assert record_key("r0", "A2", (1, 0), options) == record_key("r0", "A2", ("1", "0/3"), options)
    assert record_key("r0", "A2", (1, 0), options) != record_key("r", "A2", (1, 0), options)
    assert record_key("r0", "A2", (2, 0), options) != record_key("r0", "A2", (1, 0), options)


def test_raising_a_cap_recomputes(tmp_path):
    journal = CacheJournal(tmp_path / "journal.jsonl")
    rs = build_root_system("A", 2)
    capped = evaluate("r0", rs, (1, 0), Options(orbit_cap=2), journal)
    assert capped["certificates"]["weyl"] is None
    assert any("Weyl search skipped" in step for step in capped["transcript"])

    recomputed = evaluate("r0", rs, (1, 0), Options(), journal)
    assert recomputed["value"] == 3
    assert len(recomputed["certificates"]["weyl"]["points"]) == 3
    assert len(journal) == 2
    assert evaluate("r0", rs, (1, 0), Options(orbit_cap=2), journal) == capped
