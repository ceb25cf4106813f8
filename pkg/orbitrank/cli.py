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

"""Command-line front end.

Every subcommand prints a plain-text report or, with ``--json``, the
canonical JSON payload described in ``docs/report.schema.json``. Exit codes:
0 on success, 1 on errors or failed checks, 2 when a value stayed unknown.
"""

import argparse
import logging
import sys
from pathlib import Path

from orbitrank import report
from orbitrank.cache import CacheJournal, ResultRecord, cache_get, cache_put, record_key
from orbitrank.config import (
    CONFIG_FILE,
    RunConfig,
    format_weight,
    load_config,
    options_from,
    parse_group,
    parse_qset,
    parse_weight,
)
from orbitrank.errors import ConfigurationError, OrbitRankError
from orbitrank.invariants import Membership, Status, b1, d1, r0, r_invariant
from orbitrank.rootkit import RootSystem, build_root_system
from orbitrank.tables import FAMILIES, scan, verify_paper_tables

logger = logging.getLogger(__name__)

OPERATIONS = ("r0", "r", "d1", "b1")
SCAN_OPERATIONS = ("r0", "r", "d1")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNKNOWN = 2


def _compute(operation: str, rs: RootSystem, weight, options):
    if operation == "r0":
        return r0(rs, weight, options)
    if operation == "r":
        return r_invariant(rs, weight, options)
    if operation == "d1":
        return d1(rs, weight, options.d_max, options)
    if operation == "b1":
        return b1(rs, weight, options.d_max, options.q_max, options)
    raise ConfigurationError(f"unknown operation {operation!r}; choose from {', '.join(OPERATIONS)}")


def evaluate(operation: str, rs: RootSystem, weight, options, journal: CacheJournal | None = None) -> dict:
    """Payload of one operation, served from the journal when present."""
    weight = rs.weight(weight)
    key = record_key(operation, rs.name, weight.fundamental, options.key())
    record = cache_get(journal, key)
    if record is not None:
        logger.debug("cache hit for %s", key)
        return record.payload
    logger.info("computing %s(%s) in %s", operation, weight, rs.name)
    payload = _compute(operation, rs, weight, options).to_dict()
    cache_put(journal, ResultRecord.create(key, operation, rs.name, weight.fundamental, payload))
    return payload


def is_unknown(payload: dict) -> bool:
    if payload.get("value") is None:
        return True
    return payload.get("status") == str(Status.UPPER)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", default=None, help="print the canonical JSON report")
    parser.add_argument("--rmax", type=int, dest="r_max", help="largest r tried by the searches")
    parser.add_argument("--dmax", type=int, dest="d_max", help="largest degree tried by d1 and b1")
    parser.add_argument("--qmax", type=int, dest="q_max", help="largest multiple tried by b1")
    parser.add_argument("--qset", dest="q_set", help="saturation multiples, e.g. 1,2")
    parser.add_argument("--threads", type=int, help="worker threads for scans and Levi restrictions")
    parser.add_argument("--cache", help="path of the JSON-lines result journal")
    parser.add_argument("--config", default=CONFIG_FILE, help="configuration file (default: %(default)s)")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitrank",
        description="Partial convex hull invariants of coadjoint orbits of classical groups.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    for operation, text in (
        ("r0", "least r with 0 in the hull of r orbit points"),
        ("r", "least r for which the r-point partial hull is convex"),
        ("d1", "least degree of an invariant polynomial"),
        ("b1", "least degree of an invariant on some multiple of the weight"),
    ):
        command = commands.add_parser(operation, help=text)
        command.add_argument("group", help="series and rank, e.g. A3 or D5")
        command.add_argument("weight", help="fundamental-weight coordinates, e.g. 1,0,3/2")
        _add_common(command)

    command = commands.add_parser("scan", help="evaluate an operation over a grid of dominant weights")
    command.add_argument("which", choices=SCAN_OPERATIONS)
    command.add_argument("group")
    command.add_argument("max_coeff", type=int)
    _add_common(command)

    command = commands.add_parser("verify-paper", help="recompute the closed-form regression tables")
    command.add_argument(
        "--table-only",
        action="append",
        choices=FAMILIES,
        dest="families",
        help="restrict to one table family; may be repeated",
    )
    _add_common(command)

    command = commands.add_parser("cone", help="membership of a weight in the cone of r0 <= r or r <= r")
    command.add_argument("which", choices=("A", "C"), help="A: r0(weight) <= r, C: r(weight) <= r")
    command.add_argument("group")
    command.add_argument("weight")
    command.add_argument("r", type=int)
    _add_common(command)
    return parser


def run_config(args: argparse.Namespace, environ=None) -> RunConfig:
    """Defaults, then ``config.json``, then environment, then flags."""
    configuration = load_config(args.config, environ)
    for name in ("r_max", "d_max", "q_max", "q_set", "threads", "cache", "json"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(configuration, name, parse_qset(value) if name == "q_set" else value)
    options = options_from(configuration)
    series, rank = parse_group(args.group) if getattr(args, "group", None) else ("A", 1)
    weight = parse_weight(args.weight, rank) if getattr(args, "weight", None) else None
    return RunConfig(
        series=series,
        rank=rank,
        weight=weight,
        options=options,
        cache=Path(configuration.cache) if configuration.cache else None,
        json=bool(configuration.json),
    )


def _journal(config: RunConfig) -> CacheJournal | None:
    return CacheJournal(config.cache) if config.cache else None


def cmd_operation(args, config: RunConfig) -> tuple[dict, int]:
    rs = build_root_system(config.series, config.rank)
    payload = evaluate(args.command, rs, config.weight, config.options, _journal(config))
    return payload, EXIT_UNKNOWN if is_unknown(payload) else EXIT_OK


def cmd_scan(args, config: RunConfig) -> tuple[dict, int]:
    rs = build_root_system(config.series, config.rank)
    journal = _journal(config)
    if args.max_coeff < 0:
        raise ConfigurationError(f"max_coeff must be non-negative, got {args.max_coeff}")
    results = scan(
        rs.rank,
        args.max_coeff,
        lambda coords: evaluate(args.which, rs, coords, config.options, journal),
        config.options,
    )
    rows = [
        {"weight": format_weight(coords), "value": payload["value"], "status": payload.get("status", "")}
        for coords, payload in results
    ]
    payload = {"operation": args.which, "group": rs.name, "max_coeff": args.max_coeff, "rows": rows}
    unknown = any(row["value"] is None or row["status"] == str(Status.UPPER) for row in rows)
    return payload, EXIT_UNKNOWN if unknown else EXIT_OK


def cmd_verify_paper(args, config: RunConfig) -> tuple[dict, int]:
    result = verify_paper_tables(config.options, tuple(args.families) if args.families else FAMILIES)
    return result.to_dict(), result.exit_code


def cmd_cone(args, config: RunConfig) -> tuple[dict, int]:
    if args.r < 1:
        raise ConfigurationError(f"r must be at least 1, got {args.r}")
    rs = build_root_system(config.series, config.rank)
    bound = evaluate("r0" if args.which == "A" else "r", rs, config.weight, config.options, _journal(config))
    if bound["value"] is not None and bound["value"] <= args.r:
        answer = Membership.YES
    elif bound["value"] is not None and bound["status"] != str(Status.UPPER):
        answer = Membership.NO
    else:
        answer = Membership.UNKNOWN
    payload = {
        "cone": args.which,
        "r": args.r,
        "input": bound["input"],
        "membership": str(answer),
        "value": bound["value"],
        "status": bound["status"],
    }
    return payload, EXIT_UNKNOWN if answer is Membership.UNKNOWN else EXIT_OK


COMMANDS = {
    "r0": cmd_operation,
    "r": cmd_operation,
    "d1": cmd_operation,
    "b1": cmd_operation,
    "scan": cmd_scan,
    "verify-paper": cmd_verify_paper,
    "cone": cmd_cone,
}


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(argv=None, environ=None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = run_config(args, environ)
        payload, code = COMMANDS[args.command](args, config)
    except OrbitRankError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_ERROR
    print(report.render(args.command, payload, config.json))
    return code


if __name__ == "__main__":
    sys.exit(main())
