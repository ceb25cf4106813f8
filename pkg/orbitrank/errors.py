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


class OrbitRankError(Exception):
    """Base class for every error raised by the library."""


class ConfigurationError(OrbitRankError):
    """Unsupported series/rank, unparsable weight or invalid option."""


class PreconditionError(OrbitRankError):
    """An operation was called outside its domain."""


class DimensionMismatchError(OrbitRankError):
    pass


class SoundnessError(OrbitRankError):
    """A certificate or a two-algorithm cross-check did not verify."""


class CacheError(OrbitRankError):
    pass


class ResourceError(OrbitRankError):
    """A configured guardrail was hit; carries the cap and a partial transcript."""

    cap_name = "cap"

    def __init__(self, cap: int, detail: str = "", transcript: list | None = None):
        self.cap = cap
        self.transcript = list(transcript or [])
        message = f"{self.cap_name} of {cap} exceeded"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class OrbitCapExceeded(ResourceError):
    cap_name = "orbit_cap"


class CharacterCapExceeded(ResourceError):
    cap_name = "character_cap"


class SearchBudgetExceeded(ResourceError):
    cap_name = "search_budget"


class ScanCapExceeded(ResourceError):
    cap_name = "scan_cap"
