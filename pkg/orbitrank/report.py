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

"""Rendering of result payloads as canonical JSON or plain-text tables."""

import json


def to_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _value(value) -> str:
    return "unknown" if value is None else str(value)


def table(headers: list[str], rows: list[list]) -> str:
    cells = [[str(c) for c in headers]] + [[_value(c) if c is None else str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_bound(payload: dict) -> str:
    lines = [
        f"{payload['operation']}({payload['input']['weight']}) in {payload['input']['group']}",
        f"  value:       {_value(payload['value'])}",
        f"  status:      {payload['status']}",
    ]
    if payload.get("lower_bound"):
        lines.append(f"  lower bound: {payload['lower_bound']}")
    weyl = payload["certificates"].get("weyl")
    if weyl:
        lines.append(f"  Weyl certificate ({len(weyl['points'])} points):")
        for point, coefficient in zip(weyl["points"], weyl["coefficients"]):
            lines.append(f"    {coefficient:>8}  ({point})")
    tensor = payload["certificates"].get("tensor")
    if tensor:
        lines.append(
            f"  tensor certificate: {tensor['dimension']} invariants in V_{tensor['q']}*({tensor['base']})^{tensor['r']}"
        )
    if payload.get("terms"):
        lines.append("  Levi restrictions:")
        lines.append(
            "\n".join(
                "    " + line
                for line in table(
                    ["nodes", "component", "weight", "r0", "status"],
                    [
                        [",".join(map(str, t["nodes"])), t["component"], t["weight"], _value(t["value"]), t["status"]]
                        for t in payload["terms"]
                    ],
                ).splitlines()
            )
        )
    for gap in payload.get("gaps", []):
        lines.append(f"  gap: {gap}")
    for step in payload.get("transcript", []):
        lines.append(f"  - {step}")
    return "\n".join(lines)


def render_degree(payload: dict) -> str:
    lines = [
        f"{payload['operation']}({payload['input']['weight']}) in {payload['input']['group']}",
        f"  value: {payload['value'] if payload['value'] is not None else 'none <= ' + str(payload['bound'])}",
    ]
    if payload["operation"] == "b1" and payload["q"] is not None:
        lines.append(f"  q:     {payload['q']}")
    for step in payload.get("transcript", []):
        lines.append(f"  - {step}")
    return "\n".join(lines)


def render_scan(payload: dict) -> str:
    rows = [[row["weight"], _value(row["value"]), row.get("status", "")] for row in payload["rows"]]
    return f"{payload['operation']} scan of {payload['group']} up to {payload['max_coeff']}\n" + table(
        ["weight", "value", "status"], rows
    )


def render_verify(payload: dict) -> str:
    rows = [
        [row["family"], row["case"], row["expected"], row["computed"], row["outcome"], row["status"], row["note"]]
        for row in payload["rows"]
    ]
    summary = ", ".join(f"{k}: {v}" for k, v in payload["summary"].items())
    return table(["family", "case", "expected", "computed", "outcome", "status", "note"], rows) + f"\n\n{summary}"


def render_cone(payload: dict) -> str:
    return (
        f"{payload['cone']}_{payload['r']} membership of {payload['input']['weight']} in {payload['input']['group']}: "
        f"{payload['membership']} (value {_value(payload['value'])}, {payload['status']})"
    )


RENDERERS = {
    "r0": render_bound,
    "r": render_bound,
    "d1": render_degree,
    "b1": render_degree,
    "scan": render_scan,
    "verify-paper": render_verify,
    "cone": render_cone,
}


def render(kind: str, payload: dict, as_json: bool = False) -> str:
    if as_json:
        return to_json(payload)
    return RENDERERS[kind](payload)
