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

"""Append-only JSON-lines journal of computed results."""

import json
import logging
import os
import threading
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from orbitrank.config import ENGINE_VERSION, format_weight
from orbitrank.errors import CacheError

logger = logging.getLogger(__name__)


def record_key(operation: str, group: str, weight, options_key: dict, extra: dict | None = None) -> str:
    """Canonical key: operation, group, reduced weight, result-relevant options, engine version."""
    return json.dumps(
        {
            "operation": operation,
            "group": group,
            "weight": format_weight(Fraction(c) for c in weight),
            "options": options_key,
            "extra": extra or {},
            "engine": ENGINE_VERSION,
        },
        sort_keys=True,
        separators=(",", ":"),
    )


@dataclass(frozen=True)
class ResultRecord:
    key: str
    operation: str
    group: str
    weight: str
    payload: dict
    engine_version: str = ENGINE_VERSION
    timestamp: str = ""

    @classmethod
    def create(cls, key: str, operation: str, group: str, weight, payload: dict) -> "ResultRecord":
        return cls(
            key=key,
            operation=operation,
            group=group,
            weight=format_weight(weight),
            payload=payload,
            timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )


class CacheJournal:
    """Result journal with a single writer; readers see every complete line."""

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._index: dict[str, ResultRecord] | None = None

    def _load(self) -> dict[str, ResultRecord]:
        index: dict[str, ResultRecord] = {}
        if not self.path.exists():
            return index
        with open(self.path, "r") as f:
            for number, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    record = ResultRecord(**json.loads(line))
                except (json.JSONDecodeError, TypeError) as error:
                    logger.warning("skipping corrupt line %d of %s: %s", number, self.path, error)
                    continue
                index.setdefault(record.key, record)
        return index

    def get(self, key: str) -> ResultRecord | None:
        with self._lock:
            if self._index is None:
                self._index = self._load()
            record = self._index.get(key)
        if record is None or record.engine_version != ENGINE_VERSION:
            return None
        return record

    def put(self, record: ResultRecord) -> None:
        with self._lock:
            if self._index is None:
                self._index = self._load()
            if record.key in self._index:
                return
            try:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with open(self.path, "a") as f:
                    f.write(json.dumps(asdict(record), sort_keys=True) + "\n")
            except OSError as error:
                raise CacheError(f"cannot write cache journal {self.path}: {error}") from error
            self._index[record.key] = record

    def __len__(self) -> int:
        with self._lock:
            if self._index is None:
                self._index = self._load()
            return len(self._index)


def cache_get(journal: CacheJournal | None, key: str) -> ResultRecord | None:
    return journal.get(key) if journal is not None else None


def cache_put(journal: CacheJournal | None, record: ResultRecord) -> None:
    if journal is not None:
        journal.put(record)
