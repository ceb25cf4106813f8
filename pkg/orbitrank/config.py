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

"""Layered configuration: defaults, ``config.json``, environment, flags."""

import json
import logging
import os
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from types import SimpleNamespace

from orbitrank.errors import ConfigurationError

logger = logging.getLogger(__name__)

CONFIG_FILE = "config.json"
ENV_PREFIX = "ORBITRANK_"
ENGINE_VERSION = "0.1.0"

MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}

# saturation factors assumed for lattice-integral points of the LR cone
SATURATION_SETS = {"A": (1,), "B": (1, 2), "C": (1, 2), "D": (1, 2)}

DEFAULTS = SimpleNamespace(
    r_max=16,
    d_max=8,
    q_max=3,
    q_set=None,
    threads=1,
    cache=None,
    json=False,
    orbit_cap=10**6,
    character_cap=10**7,
    tensor_dim_cap=200_000,
    search_budget=250_000,
    scan_cap=10_000,
)

# env var suffix -> (namespace attribute, parser)
ENV_OVERRIDES = {
    "RMAX": ("r_max", int),
    "DMAX": ("d_max", int),
    "QMAX": ("q_max", int),
    "QSET": ("q_set", lambda text: parse_qset(text)),
    "THREADS": ("threads", int),
    "CACHE": ("cache", str),
    "JSON": ("json", lambda text: text.strip().lower() in ("1", "true", "yes", "on")),
}


@dataclass(frozen=True)
class Options:
    """Search bounds and guardrails shared by every operation."""

    r_max: int = DEFAULTS.r_max
    d_max: int = DEFAULTS.d_max
    q_max: int = DEFAULTS.q_max
    q_set: tuple[int, ...] | None = None
    threads: int = DEFAULTS.threads
    orbit_cap: int = DEFAULTS.orbit_cap
    character_cap: int = DEFAULTS.character_cap
    tensor_dim_cap: int = DEFAULTS.tensor_dim_cap
    search_budget: int = DEFAULTS.search_budget
    scan_cap: int = DEFAULTS.scan_cap

    def saturation_set(self, series: str) -> tuple[int, ...]:
        return SATURATION_SETS[series]

    def q_set_for(self, series: str) -> tuple[int, ...]:
        return self.q_set if self.q_set else self.saturation_set(series)

    def with_(self, **changes) -> "Options":
        return replace(self, **changes)

    def key(self) -> dict:
        """Fields that change results, for cache keys."""
        return {
            "r_max": self.r_max,
            "d_max": self.d_max,
            "q_max": self.q_max,
            "q_set": list(self.q_set) if self.q_set else None,
            "orbit_cap": self.orbit_cap,
            "character_cap": self.character_cap,
            "tensor_dim_cap": self.tensor_dim_cap,
            "search_budget": self.search_budget,
        }


@dataclass(frozen=True)
class RunConfig:
    series: str
    rank: int
    weight: tuple[Fraction, ...] | None = None
    options: Options = field(default_factory=Options)
    cache: Path | None = None
    json: bool = False


def parse_group(text: str) -> tuple[str, int]:
    """``"A3"`` -> ``("A", 3)``."""
    match = re.fullmatch(r"\s*([ABCDabcd])\s*(\d+)\s*", text or "")
    if not match:
        raise ConfigurationError(
            f"cannot parse group {text!r}: expected a series letter A-D and a rank, e.g. A3 or D5"
        )
    series, rank = match.group(1).upper(), int(match.group(2))
    validate_group(series, rank)
    return series, rank


def validate_group(series: str, rank: int) -> None:
    if series not in MIN_RANK:
        raise ConfigurationError(
            f"unsupported series {series!r}: only the classical series A, B, C, D are built"
        )
    if rank < MIN_RANK[series]:
        raise ConfigurationError(
            f"{series}{rank} is not a valid classical group: series {series} needs rank >= {MIN_RANK[series]}"
        )


def parse_weight(text: str, rank: int | None = None) -> tuple[Fraction, ...]:
    """``"1,0,3/2"`` -> fundamental-weight coordinates as exact fractions."""
    parts = [part.strip() for part in (text or "").split(",")]
    try:
        coords = tuple(Fraction(part) for part in parts)
    except (ValueError, ZeroDivisionError) as error:
        raise ConfigurationError(
            f"cannot parse weight {text!r}: use comma-separated rationals such as 1,0,3/2"
        ) from error
    if rank is not None and len(coords) != rank:
        raise ConfigurationError(
            f"weight {text!r} has {len(coords)} coordinates but the rank is {rank}"
        )
    return coords


def format_weight(coords) -> str:
    return ",".join(str(Fraction(c)) for c in coords)


def parse_qset(text: str) -> tuple[int, ...]:
    try:
        values = tuple(sorted({int(part) for part in text.split(",") if part.strip()}))
    except ValueError as error:
        raise ConfigurationError(
            f"cannot parse q set {text!r}: use positive integers such as 1,2"
        ) from error
    if not values or values[0] < 1:
        raise ConfigurationError(f"q set {text!r} must contain positive integers only")
    return values


def load_config(path: str | os.PathLike = CONFIG_FILE, environ=None) -> SimpleNamespace:
    """Defaults updated from ``config.json`` and then from the environment."""
    configuration = SimpleNamespace(**vars(DEFAULTS))
    config_path = Path(path)
    if config_path.exists():
        with open(config_path, "r") as f:
            try:
                vars(configuration).update(
                    {k: v for k, v in json.load(f).items() if k in vars(DEFAULTS)}
                )
            except (json.JSONDecodeError, AttributeError):
                logger.warning("ignoring unreadable configuration file %s", config_path)
        if isinstance(configuration.q_set, (list, str)) and configuration.q_set:
            configuration.q_set = (
                parse_qset(configuration.q_set)
                if isinstance(configuration.q_set, str)
                else tuple(configuration.q_set)
            )
    environ = os.environ if environ is None else environ
    for suffix, (attribute, parser) in ENV_OVERRIDES.items():
        raw = environ.get(ENV_PREFIX + suffix)
        if raw is None or raw == "":
            continue
        try:
            setattr(configuration, attribute, parser(raw))
        except ValueError as error:
            raise ConfigurationError(
                f"environment variable {ENV_PREFIX + suffix}={raw!r} is invalid: {error}"
            ) from error
    return configuration


def save_config(configuration: SimpleNamespace, path: str | os.PathLike = CONFIG_FILE) -> None:
    data = vars(configuration).copy()
    if data.get("q_set"):
        data["q_set"] = list(data["q_set"])
    with open(path, "w") as f:
        json.dump(data, f, indent=4)


def options_from(configuration: SimpleNamespace) -> Options:
    """Validated :class:`Options` from a configuration namespace."""
    for name in ("r_max", "d_max", "q_max", "threads"):
        value = getattr(configuration, name)
        if not isinstance(value, int) or value < 1:
            raise ConfigurationError(f"{name} must be a positive integer, got {value!r}")
    if configuration.r_max < 2:
        raise ConfigurationError("r_max must be at least 2")
    for name in ("orbit_cap", "character_cap", "tensor_dim_cap", "search_budget", "scan_cap"):
        value = getattr(configuration, name)
        if not isinstance(value, int) or value < 1:
            raise ConfigurationError(f"{name} must be a positive integer, got {value!r}")
    q_set = configuration.q_set
    if q_set is not None:
        q_set = tuple(q_set)
        if not q_set or any(not isinstance(q, int) or q < 1 for q in q_set):
            raise ConfigurationError(f"q_set must contain positive integers, got {q_set!r}")
    return Options(
        r_max=configuration.r_max,
        d_max=configuration.d_max,
        q_max=configuration.q_max,
        q_set=q_set,
        threads=configuration.threads,
        orbit_cap=configuration.orbit_cap,
        character_cap=configuration.character_cap,
        tensor_dim_cap=configuration.tensor_dim_cap,
        search_budget=configuration.search_budget,
        scan_cap=configuration.scan_cap,
    )
