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


"""Partial convex hull invariants of coadjoint orbits of classical compact groups."""

from orbitrank.config import ENGINE_VERSION, Options
from orbitrank.invariants import (
    BoundResult,
    DegreeResult,
    Membership,
    Status,
    b1,
    check_r2_criterion,
    d1,
    in_cone_Ar,
    in_cone_Cr,
    r0,
    r_invariant,
    verify_theorem1,
)
from orbitrank.rootkit import RootSystem, Weight, build_root_system

__version__ = ENGINE_VERSION

__all__ = [
    "BoundResult",
    "DegreeResult",
    "Membership",
    "Options",
    "RootSystem",
    "Status",
    "Weight",
    "b1",
    "build_root_system",
    "check_r2_criterion",
    "d1",
    "in_cone_Ar",
    "in_cone_Cr",
    "r0",
    "r_invariant",
    "verify_theorem1",
]
