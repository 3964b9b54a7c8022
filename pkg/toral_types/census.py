"""Classification and counting of types attached to a toral datum.

Each Mackey component is located at a vertex of the apartment. A location in
the fixed region A^T carries a type; any other location carries none, which
is certified by a point of [x, location] inside Ω_A(x, s_0) and outside A^T.
Everything here is geometric; the representation theory behind the verdicts
is taken as proven (see :data:`toral_types.defaults.REPRESENTATION_SCOPE`).
"""
import itertools
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from toral_types.apartment import (
    Region,
    adjacent,
    enumerate_vertices,
    facet_of,
    omega_region,
    point_on_segment,
)
from toral_types.defaults import REPRESENTATION_SCOPE
from toral_types.exceptions import ApplicabilityError, ContractViolation, InternalError
from toral_types.helper import format_point, format_rational
from toral_types.log import logger
from toral_types.roots import ApartmentPoint, fundamental_alcove_vertices
from toral_types.torus import (
    TorusSpec,
    attachment_point,
    facet_vertices_of_x,
    fixed_region,
    is_single_facet_closure,
    spec_to_json,
    torus_radius,
)


class Verdict(str, Enum):
    TYPE = "Type"
    NON_TYPE = "NonType"
    OUT_OF_WINDOW = "OutOfWindow"


@dataclass(frozen=True)
class CensusInput:
    """A torus together with s_0 = r_0 / 2, half the depth of φ_0."""

    spec: TorusSpec
    s0: Fraction

    def __post_init__(self):
        s0 = Fraction(self.s0)
        if s0 <= 0:
            raise ContractViolation(f"The census needs s0 > 0, got s0 = {s0}.")
        object.__setattr__(self, "s0", s0)

    @classmethod
    def from_depth(cls, spec: TorusSpec, r0) -> "CensusInput":
        return cls(spec, Fraction(r0) / 2)


@dataclass(frozen=True)
class MackeyVerdict:
    location: ApartmentPoint
    verdict: Verdict
    witness: Optional[ApartmentPoint] = None


@dataclass(frozen=True)
class CensusReport:
    spec: TorusSpec
    s0: Fraction
    c_t: Fraction
    counts: tuple[int, ...]
    unicity_applicable: bool
    strong_unicity: bool
    single_facet: bool
    assumption_bt_equals_at: bool = True

    @property
    def total(self) -> int:
        return sum(self.counts)

    def to_json(self) -> dict:
        return {
            "spec": spec_to_json(self.spec),
            "s0": format_rational(self.s0),
            "cT": format_rational(self.c_t),
            "applicable": self.unicity_applicable,
            "counts": {f"v{i}": count for i, count in enumerate(self.counts)},
            "strong_unicity": self.strong_unicity,
            "single_facet": self.single_facet,
            "assumes_BT_eq_AT": self.assumption_bt_equals_at,
            "scope": REPRESENTATION_SCOPE,
        }


def census_tsv(report: CensusReport) -> str:
    """Rows of vertex_type, canonical coordinates of that type, count."""
    alcove = fundamental_alcove_vertices(report.spec.root_datum)
    lines = ["vertex_type\tcoordinates\tcount"]
    for i, count in enumerate(report.counts):
        coords = ",".join(format_rational(c) for c in alcove[i])
        lines.append(f"v{i}\t{coords}\t{count}")
    return "\n".join(lines) + "\n"


def _nontype_witness(
    x: ApartmentPoint, loc: ApartmentPoint, omega: Region, region: Region
) -> ApartmentPoint:
    # last point of [x, loc] inside Ω; if it is still in A^T, step halfway
    # from the exit of A^T towards it
    clipped = omega.clip_segment(x, loc)
    if clipped is None:
        raise InternalError(f"Segment from {x} to {loc} misses Omega although x lies in it.")
    t_omega = clipped[1]
    z = point_on_segment(x, loc, t_omega)
    if not region.contains(z):
        return z
    exit_interval = region.clip_segment(x, loc)
    t_exit = exit_interval[1] if exit_interval else Fraction(0)
    if t_exit >= t_omega:
        raise InternalError(
            f"Could not find a point of [{x}, {loc}] in Omega but outside the fixed region."
        )
    return point_on_segment(x, loc, (t_exit + t_omega) / 2)


def classify_location(census: CensusInput, loc: ApartmentPoint) -> MackeyVerdict:
    """Decide whether the Mackey component located at the vertex ``loc``
    contains a type.

    Returns:
        MackeyVerdict: ``OutOfWindow`` when s_0 ≤ c_T, ``Type`` when loc lies in
        A^T, and ``NonType`` with a witness on [x, loc] otherwise.

    Raises:
        ContractViolation: if loc is not a vertex.
    """
    spec = census.spec
    rd = spec.root_datum
    if facet_of(loc, rd).dimension != 0:
        raise ContractViolation(f"Location {loc} is not a vertex of the apartment.")
    if census.s0 <= torus_radius(spec):
        return MackeyVerdict(loc, Verdict.OUT_OF_WINDOW)
    region = fixed_region(spec)
    if region.contains(loc):
        return MackeyVerdict(loc, Verdict.TYPE)
    x = attachment_point(spec)
    omega = omega_region(x, census.s0, rd)
    witness = _nontype_witness(x, loc, omega, region)
    if not omega.contains(witness) or region.contains(witness):
        raise InternalError(f"Witness {witness} for {loc} fails its own conditions.")
    return MackeyVerdict(loc, Verdict.NON_TYPE, witness)


def classify_box(census: CensusInput, radius: int = 1) -> list[MackeyVerdict]:
    """Verdicts for every vertex of the box [−radius, radius]^n."""
    rd = census.spec.root_datum
    half = Fraction(1, 2)
    axis = [half * k for k in range(-2 * radius, 2 * radius + 1)]
    return [
        classify_location(census, ApartmentPoint(coords))
        for coords in itertools.product(axis, repeat=rd.n)
    ]


def obvious_type_locations(census: CensusInput) -> list[ApartmentPoint]:
    """Vertices of the facet containing x; each carries a type for any s_0."""
    return facet_vertices_of_x(census.spec)


def run_census(census: CensusInput) -> CensusReport:
    """Count type locations in A^T per vertex type and derive the unicity
    verdicts.

    Raises:
        InternalError: if strong unicity and the single-facet criterion
            disagree while the census is applicable.
    """
    spec = census.spec
    rd = spec.root_datum
    vertices = enumerate_vertices(fixed_region(spec), rd)
    by_type = Counter(t for _, t in vertices)
    counts = tuple(by_type.get(i, 0) for i in range(rd.n + 1))
    c_t = torus_radius(spec)
    applicable = census.s0 > c_t
    strong = all(count <= 1 for count in counts)
    single = is_single_facet_closure(spec)
    if applicable and strong != single:
        raise InternalError(
            f"Strong unicity ({strong}) and single-facet closure ({single}) "
            f"disagree for {spec}."
        )
    logger.info(
        f"Census of {spec} at s0 = {census.s0}: counts {list(counts)}, "
        f"c_T = {c_t}, strong unicity {strong}"
    )
    logger.debug(REPRESENTATION_SCOPE)
    return CensusReport(
        spec=spec,
        s0=census.s0,
        c_t=c_t,
        counts=counts,
        unicity_applicable=applicable,
        strong_unicity=strong,
        single_facet=single,
    )


def strong_unicity_verdict(census: CensusInput) -> tuple[bool, str]:
    """Strong unicity of types, with a one-line justification.

    Raises:
        ApplicabilityError: if s_0 ≤ c_T.
    """
    spec = census.spec
    c_t = torus_radius(spec)
    if census.s0 <= c_t:
        raise ApplicabilityError(
            f"Strong unicity is only decided for s0 > c_T = {c_t}; got s0 = {census.s0}."
        )
    report = run_census(census)
    verdict = is_single_facet_closure(spec)
    if verdict != report.strong_unicity:
        raise InternalError(f"Census counts {list(report.counts)} contradict the facet criterion.")
    if verdict:
        reason = "A^T is the closure of the facet containing x, so each vertex class carries at most one type."
    else:
        reason = (
            f"A^T contains {report.total} vertices and is not a single closed facet; "
            f"some vertex class carries {max(report.counts)} types."
        )
    return verdict, reason


def strong_unicity_failure_witness(
    spec: TorusSpec,
) -> Optional[tuple[ApartmentPoint, ApartmentPoint]]:
    """Two distinct vertices of the same type in A^T, each sharing a closed
    alcove with x. Exists exactly when l ≥ 2."""
    rd = spec.root_datum
    home = facet_vertices_of_x(spec)
    near = [
        (v, t)
        for v, t in enumerate_vertices(fixed_region(spec), rd)
        if v in home or all(adjacent(v, u, rd) for u in home)
    ]
    for (y, ty), (z, tz) in itertools.combinations(near, 2):
        if ty == tz:
            logger.debug(f"{format_point(y)} and {format_point(z)} both have type v{ty}")
            return y, z
    return None
