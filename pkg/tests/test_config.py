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
from fractions import Fraction
from types import SimpleNamespace

import pytest

from orbitrank.config import (
    DEFAULTS,
    Options,
    load_config,
    options_from,
    parse_group,
    parse_qset,
    parse_weight,
    save_config,
)
from orbitrank.errors import ConfigurationError


@pytest.mark.parametrize(
    "text, expected",
    [("A3", ("A", 3)), ("d5", ("D", 5)), (" B2 ", ("B", 2)), ("C10", ("C", 10))],
)
def test_parse_group(text, expected):
    assert parse_group(text) == expected


@pytest.mark.parametrize("text", ["E6", "B1", "C1", "D2", "A0", "A", "", "3A"])
def test_parse_group_rejects(text):
    with pytest.raises(ConfigurationError):
        parse_group(text)


def test_parse_weight():
    assert parse_weight("1,0,3/2", 3) == (Fraction(1), Fraction(0), Fraction(3, 2))
    assert parse_weight(" 2 , -1/3 ") == (Fraction(2), Fraction(-1, 3))


@pytest.mark.parametrize("text, rank", [("1,x", 2), ("1/0,1", 2), ("1,0", 3)])
def test_parse_weight_rejects(text, rank):
    with pytest.raises(ConfigurationError):
        parse_weight(text, rank)


def test_parse_qset():
    assert parse_qset("2,1,2") == (1, 2)
    with pytest.raises(ConfigurationError):
        parse_qset("0,1")
    with pytest.raises(ConfigurationError):
        parse_qset("one")


def test_q_set_defaults_per_series():
    options = Options()
    assert options.q_set_for("A") == (1,)
    assert options.q_set_for("D") == (1, 2)
    assert options.with_(q_set=(3,)).q_set_for("B") == (3,)


def test_load_config_layers(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"r_max": 7, "q_set": [1, 2], "unknown_key": 1}))
    configuration = load_config(path, environ={"ORBITRANK_DMAX": "5", "ORBITRANK_JSON": "yes"})
    assert configuration.r_max == 7
    assert configuration.d_max == 5
    assert configuration.q_set == (1, 2)
    assert configuration.json is True
    assert not hasattr(configuration, "unknown_key")
    assert configuration.threads == DEFAULTS.threads


def test_environment_overrides_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"r_max": 7}))
    assert load_config(path, environ={"ORBITRANK_RMAX": "9"}).r_max == 9


def test_invalid_environment_value(tmp_path):
    with pytest.raises(ConfigurationError, match="ORBITRANK_THREADS"):
        load_config(tmp_path / "missing.json", environ={"ORBITRANK_THREADS": "many"})


def test_unreadable_config_is_ignored(tmp_path):
    path = tmp_path / "config.json"
    path.write_text("{not json")
    assert load_config(path, environ={}).r_max == DEFAULTS.r_max


def test_save_and_reload(tmp_path):
    path = tmp_path / "config.json"
    configuration = SimpleNamespace(**vars(DEFAULTS))
    configuration.q_set = (1, 2, 3)
    configuration.cache = "journal.jsonl"
    save_config(configuration, path)
    reloaded = load_config(path, environ={})
    assert reloaded.q_set == (1, 2, 3)
    assert reloaded.cache == "journal.jsonl"


@pytest.mark.parametrize(
    "change",
    [{"r_max": 1}, {"threads": 0}, {"d_max": "8"}, {"q_set": (0,)}, {"search_budget": -1}],
)
def test_options_from_rejects(change):
    configuration = SimpleNamespace(**vars(DEFAULTS))
    vars(configuration).update(change)
    with pytest.raises(ConfigurationError):
        options_from(configuration)


def test_options_key_ignores_threads():
    assert Options(threads=1).key() == Options(threads=8).key()
    assert Options(r_max=4).key() != Options(r_max=5).key()


@pytest.mark.parametrize(
    "field, small",
    [("orbit_cap", 2), ("character_cap", 5), ("tensor_dim_cap", 10), ("search_budget", 1), ("q_set", (1,))],
)
def test_options_key_tracks_result_changing_caps(field, small):
    assert Options(**{field: small}).key() != Options().key()
