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


from dataclasses import dataclass

from textual.message import Message


@dataclass
class ComputationFinished(Message):
    """Message with the payload of a finished computation."""

    kind: str = ""
    payload: dict | None = None
    exit_code: int = 0
    error: str = ""


@dataclass
class ComputationProgress(Message):
    """Message to update the run button while a worker is busy."""

    label: str = ""
    disabled: bool = False
