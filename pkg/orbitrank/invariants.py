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

"""Orbit invariants r0 and r, invariant degrees d1 and b1, cone membership.

Upper bounds always come with a certificate: a zero combination of Weyl
orbit points or a nonzero tensor-power invariant. Lower bounds come from
self-duality or from a tensor test failing at a lattice-compatible
multiple of the weight, which is exact under the saturation assumption
for the series.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from functools import lru_cache

from orbitrank import linalg
from orbitrank.charalg import (
    as_coords,
    invariant_dim_tensor_power,
    symmetric_power_invariant_dim,
    weyl_dim,
)
from orbitrank.config import Options, format_weight
from orbitrank.errors import (
    CharacterCapExceeded,
    OrbitCapExceeded,
    PreconditionError,
    SearchBudgetExceeded,
    SoundnessError,
)
from orbitrank.polygeom import ZeroCertificate, min_zero_subset, orbit_basic_certificate
from orbitrank.rootkit import (
    LeviComponent,
    RootSystem,
    Weight,
    connected_subdiagrams,
    is_self_dual,
    levi_subsystem,
)

logger = logging.getLogger(__name__)


class Status(StrEnum):
    EXACT = "exact"
    SATURATION = "exact-assuming-saturation-factor"
    UPPER = "upper-bound-only"


STRENGTH = {Status.UPPER: 0, Status.SATURATION: 1, Status.EXACT: 2}


def weakest(statuses) -> Status:
    return min(statuses, key=STRENGTH.__getitem__)


class Membership(StrEnum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TensorCertificate:
    """``dimension`` invariants in the ``r``-th tensor power of ``V_{q base}``."""

    base: tuple[int, ...]
    q: int
    r: int
    dimension: int

    def to_dict(self) -> dict:
        return {"base": format_weight(self.base), "q": self.q, "r": self.r, "dimension": self.dimension}


@dataclass(frozen=True)
class LeviTerm:
    nodes: tuple[int, ...]
    component: LeviComponent
    weight: Weight
    result: "BoundResult"

    def to_dict(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "component": self.component.name,
            "weight": format_weight(self.weight.fundamental),
            "value": self.result.value,
            "status": str(self.result.status),
        }


@dataclass(frozen=True)
class BoundResult:
    """A value with its status, certificates and the steps that produced it.

    ``value`` is None when nothing was certified within the configured bounds.
    """

    operation: str
    group: str
    weight: tuple[Fraction, ...]
    value: int | None
    status: Status
    weyl_certificate: ZeroCertificate | None = None
    tensor_certificate: TensorCertificate | None = None
    lower_bound: str = ""
    transcript: tuple[str, ...] = ()
    gaps: tuple[str, ...] = ()
    terms: tuple[LeviTerm, ...] = ()

    @property
    def unknown(self) -> bool:
        return self.value is None or self.status is Status.UPPER

    def check_soundness(self, rs: RootSystem | None = None) -> None:
        if self.weyl_certificate is not None:
            self.weyl_certificate.verify(rs if self.operation == "r0" else None)
        if self.value is None:
            return
        if self.weyl_certificate is not None and self.weyl_certificate.size < self.value:
            raise SoundnessError(
                f"{self.operation} value {self.value} exceeds its Weyl certificate of size {self.weyl_certificate.size}"
            )
        if self.tensor_certificate is not None:
            if self.tensor_certificate.dimension <= 0 or self.tensor_certificate.r < self.value:
                raise SoundnessError(f"{self.operation} value {self.value} is not backed by its tensor certificate")
        if self.status is not Status.UPPER:
            if self.weyl_certificate is None and self.tensor_certificate is None:
                raise SoundnessError(f"{self.operation} value {self.value} is {self.status} without a certificate")
            if not self.lower_bound:
                raise SoundnessError(f"{self.operation} value {self.value} is {self.status} without a lower bound")

    def to_dict(self) -> dict:
        return {
            "operation": self.operation,
            "input": {"group": self.group, "weight": format_weight(self.weight)},
            "value": self.value,
            "status": str(self.status),
            "certificates": {
                "weyl": self.weyl_certificate.to_dict() if self.weyl_certificate else None,
                "tensor": self.tensor_certificate.to_dict() if self.tensor_certificate else None,
            },
            "lower_bound": self.lower_bound,
            "transcript": list(self.transcript),
            "gaps": list(self.gaps),
            "terms": [term.to_dict() for term in self.terms],
        }


def coerce_weight(rs: RootSystem, weight) -> Weight:
    if isinstance(weight, Weight):
        if weight.rank != rs.rank:
            raise PreconditionError(f"{rs.name} weights have {rs.rank} coordinates, got {weight.rank}")
        return weight
    return rs.weight(weight)


def _require_dominant(weight: Weight, operation: str) -> None:
    if not weight.is_dominant:
        raise PreconditionError(f"{operation} needs a dominant weight, got {weight}")


def lattice_multiple(rs: RootSystem, base, r: int) -> int:
    """Least ``m`` with ``r * m * base`` in the root lattice."""
    for m in range(1, 4 * (rs.rank + 1) + 1):
        if rs.in_root_lattice(tuple(r * m * c for c in base)):
            return m
    raise SoundnessError(f"no multiple of {format_weight(base)} reaches the root lattice of {rs.name}")


@dataclass(frozen=True)
class _TensorOutcome:
    outcome: str  # "success", "failure" or "untested"
    certificate: TensorCertificate | None = None
    note: str = ""


def _tensor_test(rs: RootSystem, base: tuple[int, ...], r: int, options: Options) -> _TensorOutcome:
    m = lattice_multiple(rs, base, r)
    untested = []
    for k in options.q_set_for(rs.series):
        q = k * m
        dim = weyl_dim(rs, tuple(q * c for c in base))
        if dim > options.tensor_dim_cap:
            untested.append(f"q={q} (dim {dim} over tensor_dim_cap)")
            continue
        try:
            count = invariant_dim_tensor_power(rs, base, r, q, options.character_cap)
        except CharacterCapExceeded as error:
            untested.append(f"q={q} ({error})")
            continue
        if count > 0:
            return _TensorOutcome("success", TensorCertificate(base, q, r, count), f"r={r}: {count} invariants at q={q}")
    if untested:
        return _TensorOutcome("untested", note=f"r={r}: untested for " + ", ".join(untested))
    return _TensorOutcome("failure", note=f"r={r}: no invariants for q in {[k * m for k in options.q_set_for(rs.series)]}")


def _saturated(rs: RootSystem, options: Options) -> bool:
    return set(options.saturation_set(rs.series)) <= set(options.q_set_for(rs.series))


def _failure_status(rs: RootSystem, options: Options) -> Status:
    if not _saturated(rs, options):
        return Status.UPPER
    return Status.EXACT if rs.series == "A" else Status.SATURATION


def r0(rs: RootSystem, weight, options: Options = Options()) -> BoundResult:
    """Least r with 0 in the convex hull of r points of the coadjoint orbit."""
    weight = coerce_weight(rs, weight)
    _require_dominant(weight, "r0")
    result = _r0(rs, weight, options)
    result.check_soundness(rs)
    return result


@lru_cache(maxsize=4096)
def cached_r0(rs: RootSystem, weight: Weight, options: Options) -> BoundResult:
    return r0(rs, weight, options)


def _r0(rs: RootSystem, weight: Weight, options: Options) -> BoundResult:
    common = dict(operation="r0", group=rs.name, weight=weight.fundamental)
    if weight.is_zero:
        return BoundResult(
            value=1,
            status=Status.EXACT,
            weyl_certificate=ZeroCertificate((weight,), (Fraction(1),)),
            lower_bound="r0 is at least 1",
            transcript=("zero weight",),
            **common,
        )

    ints, _ = linalg.primitive_integral(weight.fundamental)
    base = tuple(ints)
    transcript = [f"primitive integral weight {format_weight(base)}"]

    if is_self_dual(rs, rs.weight(base)):
        search = min_zero_subset(rs, weight, 2, options.search_budget, options.orbit_cap)
        transcript.append("self-dual: the orbit contains the negative weight")
        return BoundResult(
            value=2,
            status=Status.EXACT,
            weyl_certificate=search.certificate,
            lower_bound="nonzero weights have r0 >= 2",
            transcript=tuple(transcript),
            **common,
        )

    weyl = None
    try:
        search = min_zero_subset(rs, weight, options.r_max, options.search_budget, options.orbit_cap)
        weyl = search.certificate
        transcript.append(
            f"Weyl search: orbit {search.orbit_size}, span {search.effective_rank}, "
            + (f"certificate of size {search.size}" if search.size else f"none up to {search.searched_up_to}")
            + f" after {search.nodes} steps"
        )
    except SearchBudgetExceeded as error:
        transcript.extend(error.transcript)
        transcript.append(f"Weyl search stopped: {error}; using a basic solution over the whole orbit")
        logger.warning("%s %s: %s, falling back to a basic orbit certificate", rs.name, weight, error)
        weyl = orbit_basic_certificate(rs, weight, options.orbit_cap)
    except OrbitCapExceeded as error:
        transcript.append(f"Weyl search skipped: {error}")
        logger.warning("%s %s: %s", rs.name, weight, error)

    value = weyl.size if weyl is not None else None
    tensor = None
    lower = ""
    status = Status.UPPER

    if value is not None:
        r = value - 1
        while r >= 3:
            test = _tensor_test(rs, base, r, options)
            transcript.append(test.note)
            if test.outcome == "success":
                value, tensor = r, test.certificate
                r -= 1
                continue
            if test.outcome == "failure":
                lower = f"no tensor invariants at r={r} (saturation set {list(options.q_set_for(rs.series))})"
                status = _failure_status(rs, options)
            break
        if r < 3:
            lower, status = "not self-dual, so r0 >= 3", Status.EXACT
    else:
        previous = "not self-dual, so r0 >= 3"
        for r in range(3, options.r_max + 1):
            test = _tensor_test(rs, base, r, options)
            transcript.append(test.note)
            if test.outcome == "success":
                value, tensor = r, test.certificate
                if previous:
                    lower = previous
                    status = Status.EXACT if r == 3 else _failure_status(rs, options)
                break
            previous = (
                f"no tensor invariants at r={r} (saturation set {list(options.q_set_for(rs.series))})"
                if test.outcome == "failure"
                else ""
            )
        if value is None:
            transcript.append(f"unknown above r_max={options.r_max}")

    gaps = ()
    if weyl is not None and value is not None and weyl.size > value:
        gap = f"Weyl certificate of size {weyl.size} exceeds the certified value {value}"
        logger.info("%s %s: %s", rs.name, weight, gap)
        gaps = (gap,)

    return BoundResult(
        value=value,
        status=status,
        weyl_certificate=weyl,
        tensor_certificate=tensor,
        lower_bound=lower,
        transcript=tuple(transcript),
        gaps=gaps,
        **common,
    )


def _levi_term(rs: RootSystem, weight: Weight, nodes, options: Options) -> LeviTerm:
    component = levi_subsystem(rs, nodes).components[0]
    sub = component.root_system.weight(tuple(weight.fundamental[n - 1] for n in component.nodes))
    return LeviTerm(tuple(sorted(nodes)), component, sub, cached_r0(component.root_system, sub, options))


def r_invariant(rs: RootSystem, weight, options: Options = Options()) -> BoundResult:
    """Least r with the partial hull of r orbit points convex: the largest r0 over Levi restrictions."""
    weight = coerce_weight(rs, weight)
    _require_dominant(weight, "r_invariant")
    common = dict(operation="r", group=rs.name, weight=weight.fundamental)
    if weight.is_zero:
        return BoundResult(
            value=1,
            status=Status.EXACT,
            weyl_certificate=ZeroCertificate((weight,), (Fraction(1),)),
            lower_bound="r is at least 1",
            **common,
        )

    subsets = connected_subdiagrams(rs)[1:]
    with ThreadPoolExecutor(max_workers=options.threads) as pool:
        terms = tuple(pool.map(lambda nodes: _levi_term(rs, weight, nodes, options), subsets))

    unknown = [t for t in terms if t.result.value is None]
    if unknown:
        transcript = tuple(f"{t.component.name} on {list(t.nodes)}: unknown" for t in unknown)
        return BoundResult(value=None, status=Status.UPPER, transcript=transcript, terms=terms, **common)

    value = max(t.result.value for t in terms)
    best = [t for t in terms if t.result.value == value]
    if value > rs.rank + 1:
        raise SoundnessError(f"r = {value} for {weight} in {rs.name} exceeds rank + 1")
    top = best[0]
    result = BoundResult(
        value=value,
        status=weakest(t.result.status for t in best),
        weyl_certificate=top.result.weyl_certificate,
        tensor_certificate=top.result.tensor_certificate,
        lower_bound=f"r0 = {value} on {top.component.name} at nodes {list(top.nodes)}",
        transcript=tuple(f"{t.component.name} on {list(t.nodes)}: {t.result.value} ({t.result.status})" for t in terms),
        terms=terms,
        **common,
    )
    result.check_soundness()
    return result


@dataclass(frozen=True)
class DegreeResult:
    """Least degree found (or None) with the multiple ``q`` that realised it."""

    operation: str
    group: str
    weight: tuple[Fraction, ...]
    value: int | None
    q: int | None
    bound: int
    transcript: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "operation": self.operation,
            "input": {"group": self.group, "weight": format_weight(self.weight)},
            "value": self.value,
            "q": self.q,
            "bound": self.bound,
            "transcript": list(self.transcript),
        }


def d1(rs: RootSystem, weight, d_max: int, options: Options = Options()) -> DegreeResult:
    """Least positive degree of an invariant polynomial on ``V_weight``."""
    weight = coerce_weight(rs, weight)
    coords = as_coords(weight)
    _require_dominant(weight, "d1")
    if d_max < 1:
        raise PreconditionError(f"d_max must be at least 1, got {d_max}")
    transcript = []
    for d in range(1, d_max + 1):
        count = symmetric_power_invariant_dim(rs, coords, d, options.character_cap, options.orbit_cap)
        transcript.append(f"d={d}: {count}")
        if count > 0:
            return DegreeResult("d1", rs.name, weight.fundamental, d, 1, d_max, tuple(transcript))
    return DegreeResult("d1", rs.name, weight.fundamental, None, None, d_max, tuple(transcript))


def b1(rs: RootSystem, weight, d_max: int, q_max: int, options: Options = Options()) -> DegreeResult:
    """Least degree with invariants on ``V_{q weight}`` for some ``q <= q_max`` (bounded search)."""
    weight = coerce_weight(rs, weight)
    coords = as_coords(weight)
    _require_dominant(weight, "b1")
    if weight.is_zero:
        raise PreconditionError("b1 needs a nonzero weight")
    transcript = []
    for b in range(1, d_max + 1):
        for q in range(1, q_max + 1):
            count = symmetric_power_invariant_dim(
                rs, tuple(q * c for c in coords), b, options.character_cap, options.orbit_cap
            )
            transcript.append(f"b={b}, q={q}: {count}")
            if count > 0:
                return DegreeResult("b1", rs.name, weight.fundamental, b, q, d_max, tuple(transcript))
    return DegreeResult("b1", rs.name, weight.fundamental, None, None, d_max, tuple(transcript))


@dataclass(frozen=True)
class Theorem1Row:
    q: int
    d1: int | None
    r0: int | None
    holds: bool | None

    def to_dict(self) -> dict:
        return {"q": self.q, "d1": self.d1, "r0": self.r0, "holds": self.holds}


@dataclass(frozen=True)
class Theorem1Report:
    group: str
    weight: tuple[Fraction, ...]
    r0: BoundResult
    rows: tuple[Theorem1Row, ...]
    b1: DegreeResult | None
    violations: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "input": {"group": self.group, "weight": format_weight(self.weight)},
            "r0": self.r0.value,
            "r0_status": str(self.r0.status),
            "rows": [row.to_dict() for row in self.rows],
            "b1": self.b1.value if self.b1 else None,
            "violations": list(self.violations),
        }


def verify_theorem1(rs: RootSystem, weight, q_range, d_max: int, options: Options = Options()) -> Theorem1Report:
    """Check r0(weight) <= d1(q weight) for each q, and b1(weight) >= r0(weight)."""
    weight = coerce_weight(rs, weight)
    _require_dominant(weight, "verify_theorem1")
    if weight.is_zero or not weight.is_integral:
        raise PreconditionError("verify_theorem1 needs a nonzero integral weight")
    bound = r0(rs, weight, options)
    coords = as_coords(weight)
    rows = []
    violations = []
    for q in q_range:
        degree = d1(rs, tuple(q * c for c in coords), d_max, options).value
        holds = None if degree is None or bound.value is None else bound.value <= degree
        if holds is False:
            violations.append(f"q={q}: r0={bound.value} > d1={degree}")
        rows.append(Theorem1Row(q, degree, bound.value, holds))
    lowest = b1(rs, weight, d_max, max(q_range), options)
    if lowest.value is not None and bound.value is not None and lowest.value < bound.value:
        violations.append(f"b1={lowest.value} < r0={bound.value}")
    for violation in violations:
        logger.error("%s %s: %s", rs.name, weight, violation)
    return Theorem1Report(rs.name, weight.fundamental, bound, tuple(rows), lowest, tuple(violations))


def _membership(result: BoundResult, r: int) -> Membership:
    if result.value is not None and result.value <= r:
        return Membership.YES
    if result.value is not None and result.status is not Status.UPPER:
        return Membership.NO
    return Membership.UNKNOWN


def in_cone_Ar(rs: RootSystem, weight, r: int, options: Options = Options()) -> Membership:
    return _membership(r0(rs, weight, options), r)


def in_cone_Cr(rs: RootSystem, weight, r: int, options: Options = Options()) -> Membership:
    return _membership(r_invariant(rs, weight, options), r)


@dataclass(frozen=True)
class R2Report:
    group: str
    weight: tuple[Fraction, ...]
    condition: bool
    r: BoundResult

    @property
    def consistent(self) -> bool | None:
        if self.r.value is None:
            return None
        if not any(self.weight):
            return self.r.value == 1
        return self.condition == (self.r.value == 2)

    def to_dict(self) -> dict:
        return {
            "input": {"group": self.group, "weight": format_weight(self.weight)},
            "condition": self.condition,
            "r": self.r.value,
            "status": str(self.r.status),
            "consistent": self.consistent,
        }


def equal_length_condition(rs: RootSystem, weight: Weight) -> bool:
    """Equal coefficients on every pair of simple roots of the same length."""
    lengths = [linalg.dot(root, root) for root in rs.simple_roots]
    return all(
        weight.fundamental[i] == weight.fundamental[j]
        for i in range(rs.rank)
        for j in range(i + 1, rs.rank)
        if lengths[i] == lengths[j]
    )


def check_r2_criterion(rs: RootSystem, weight, options: Options = Options()) -> R2Report:
    weight = coerce_weight(rs, weight)
    _require_dominant(weight, "check_r2_criterion")
    report = R2Report(rs.name, weight.fundamental, equal_length_condition(rs, weight), r_invariant(rs, weight, options))
    if report.consistent is False:
        logger.warning(
            "%s %s: equal-length condition is %s but r = %s", rs.name, weight, report.condition, report.r.value
        )
    return report


def euclid_r0(n: int, j: int) -> int:
    """Closed form for r0 of the j-th fundamental weight of SU_n, by Euclid's algorithm."""
    if not 1 <= j < n:
        raise PreconditionError(f"need 1 <= j < n, got n={n}, j={j}")
    q, p = divmod(n, j)
    return q if p == 0 else q + euclid_r0(j, p)
