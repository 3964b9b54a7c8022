"""Anisotropic maximal tori of Sp_2n built from rank-one factors, their
attachment point x, fixed region A^T and radius c_T."""
import re
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from toral_types.apartment import (
    Region,
    box_region,
    enumerate_vertices,
    facet_of,
    simplicial_radius,
)
from toral_types.exceptions import ConfigurationError, InternalError
from toral_types.log import logger
from toral_types.roots import (
    ApartmentPoint,
    Family,
    RootDatum,
    build_root_datum,
    fundamental_alcove_vertices,
    reflect,
)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


class FactorKind(str, Enum):
    """Rank-one anisotropic factor, named by the point it is attached to."""

    UNRAMIFIED_HALF = "u½"
    RAMIFIED_MID = "r"
    UNRAMIFIED_ZERO = "u0"

    @property
    def attachment(self) -> Fraction:
        return {
            FactorKind.UNRAMIFIED_HALF: HALF,
            FactorKind.RAMIFIED_MID: QUARTER,
            FactorKind.UNRAMIFIED_ZERO: Fraction(0),
        }[self]

    @property
    def order(self) -> int:
        return list(FactorKind).index(self)

    @property
    def is_ramified(self) -> bool:
        return self == FactorKind.RAMIFIED_MID


#: Accepted spellings of each factor in the text form
FACTOR_ALIASES = {
    "u½": FactorKind.UNRAMIFIED_HALF,
    "uh": FactorKind.UNRAMIFIED_HALF,
    "u1/2": FactorKind.UNRAMIFIED_HALF,
    "r": FactorKind.RAMIFIED_MID,
    "u0": FactorKind.UNRAMIFIED_ZERO,
}

TOKEN_RE = re.compile(r"^(u½|uh|u1/2|u0|r)(?:\^(\d+)|(\d+))?$")


@dataclass(frozen=True)
class TorusSpec:
    """Ordered product of rank-one factors, stored in canonical order
    (u½ first, then r, then u0).

    ``permutation[i]`` is the input position of canonical factor i; it does
    not take part in equality or hashing.
    """

    factors: tuple[FactorKind, ...]
    permutation: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        factors = tuple(FactorKind(f) for f in self.factors)
        if not factors:
            raise ConfigurationError("A torus needs at least one rank-one factor.")
        order = sorted(range(len(factors)), key=lambda i: (factors[i].order, i))
        object.__setattr__(self, "factors", tuple(factors[i] for i in order))
        if not self.permutation:
            object.__setattr__(self, "permutation", tuple(order))

    @classmethod
    def from_counts(cls, m: int, l: int, n: int) -> "TorusSpec":
        k = n - m - l
        if min(m, l, k) < 0 or n < 1:
            raise ConfigurationError(
                f"Counts m = {m}, l = {l} do not fit in rank n = {n}."
            )
        return cls(
            (FactorKind.UNRAMIFIED_HALF,) * m
            + (FactorKind.RAMIFIED_MID,) * l
            + (FactorKind.UNRAMIFIED_ZERO,) * k
        )

    @property
    def m(self) -> int:
        return self.factors.count(FactorKind.UNRAMIFIED_HALF)

    @property
    def l(self) -> int:
        return self.factors.count(FactorKind.RAMIFIED_MID)

    @property
    def k(self) -> int:
        return self.factors.count(FactorKind.UNRAMIFIED_ZERO)

    @property
    def n(self) -> int:
        return len(self.factors)

    @cached_property
    def root_datum(self) -> RootDatum:
        return build_root_datum(Family.C, self.n)

    @property
    def ramified_slots(self) -> list[int]:
        return [i for i, f in enumerate(self.factors) if f.is_ramified]

    def __str__(self) -> str:
        return format_spec(self)


def parse_spec(text: str) -> TorusSpec:
    """Read the text form, e.g. ``"u½ r^3 u0"``, ``"r2"`` or ``"uh^2"``.

    Raises:
        ConfigurationError: for an unknown token.
    """
    factors: list[FactorKind] = []
    for token in str(text).replace(",", " ").split():
        match = TOKEN_RE.match(token)
        if match is None:
            raise ConfigurationError(
                f"Unknown torus factor {token!r}. Use u½ (or uh), r or u0, "
                f"optionally with an exponent such as r^2."
            )
        kind, power, bare = match.groups()
        factors.extend([FACTOR_ALIASES[kind]] * int(power or bare or 1))
    if not factors:
        raise ConfigurationError(f"Torus description {text!r} has no factors.")
    return TorusSpec(tuple(factors))


def format_spec(spec: TorusSpec) -> str:
    parts = []
    for kind, count in (
        (FactorKind.UNRAMIFIED_HALF, spec.m),
        (FactorKind.RAMIFIED_MID, spec.l),
        (FactorKind.UNRAMIFIED_ZERO, spec.k),
    ):
        if count == 1:
            parts.append(kind.value)
        elif count > 1:
            parts.append(f"{kind.value}^{count}")
    return " ".join(parts)


def spec_to_json(spec: TorusSpec) -> dict:
    return {"m": spec.m, "l": spec.l, "n": spec.n}


def spec_from_json(data: dict) -> TorusSpec:
    try:
        return TorusSpec.from_counts(int(data["m"]), int(data["l"]), int(data["n"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigurationError(f"Torus JSON {data!r} needs integer keys m, l, n.") from e


def attachment_point(spec: TorusSpec) -> ApartmentPoint:
    """The point x of the building fixed by T: ½ on u½ slots, ¼ on ramified
    slots and 0 on u0 slots.

    Raises:
        InternalError: if x is not where the factor rule puts it, i.e. not a
            vertex when l = 0 or not the midpoint of [v_m, v_{m+l}] otherwise.
    """
    x = ApartmentPoint(tuple(f.attachment for f in spec.factors))
    vertices = facet_vertices_of_x(spec, x)
    alcove = fundamental_alcove_vertices(spec.root_datum)
    expected = [alcove[spec.m]] if spec.l == 0 else [alcove[spec.m], alcove[spec.m + spec.l]]
    if vertices != expected:
        raise InternalError(
            f"Attachment point {x} of {spec} lies in a facet with vertices "
            f"{[str(v) for v in vertices]}."
        )
    return x


def facet_vertices_of_x(spec: TorusSpec, x: ApartmentPoint = None) -> list[ApartmentPoint]:
    """Vertices of the closure of the facet containing the attachment point."""
    if x is None:
        x = attachment_point(spec)
    return list(facet_of(x, spec.root_datum).vertices)


def fixed_region(spec: TorusSpec) -> Region:
    """A^T: the box fixing u½ slots at ½ and u0 slots at 0, with 0 ≤ z_j ≤ ½
    on ramified slots."""
    x = attachment_point(spec)
    bounds = [
        (Fraction(0), HALF) if f.is_ramified else (f.attachment, f.attachment)
        for f in spec.factors
    ]
    return box_region(x, bounds, spec.root_datum)


def torus_radius(spec: TorusSpec) -> Fraction:
    """c_T, the simplicial radius of the fixed region about x."""
    radius = simplicial_radius(fixed_region(spec), attachment_point(spec), spec.root_datum)
    logger.debug(f"c_T = {radius} for {spec}")
    return radius


def is_single_facet_closure(spec: TorusSpec) -> bool:
    """Whether A^T is the closure of the facet containing x.

    Both sets are convex hulls of the arrangement vertices they contain, so
    the comparison is done on vertex sets.

    Raises:
        InternalError: if the answer disagrees with l ≤ 1.
    """
    region_vertices = [v for v, _ in enumerate_vertices(fixed_region(spec), spec.root_datum)]
    single = region_vertices == facet_vertices_of_x(spec)
    if single != (spec.l <= 1):
        raise InternalError(
            f"Fixed region of {spec} is{'' if single else ' not'} a single closed "
            f"facet although l = {spec.l}."
        )
    return single


def region_symmetries(spec: TorusSpec) -> list:
    """Affine reflections of the apartment mapping A^T onto itself."""
    rd = spec.root_datum
    region = fixed_region(spec)
    vertices = {v for v, _ in enumerate_vertices(region, rd)}
    corners = [ApartmentPoint(tuple(c)) for c in _box_corners(region)]
    bound = rd.window_bound(corners)
    return [
        psi
        for psi in rd.affine_roots(bound)
        if psi.gradient > tuple(-c for c in psi.gradient)
        and {reflect(v, psi) for v in vertices} == vertices
    ]


def _box_corners(region: Region) -> Iterable[tuple[Fraction, ...]]:
    corners = [()]
    for lo, hi in region.box:
        corners = [c + (v,) for c in corners for v in sorted({lo, hi})]
    return corners


def vertex_orbit(spec: TorusSpec, v: ApartmentPoint) -> list[ApartmentPoint]:
    """Orbit of v under the reflections preserving A^T, sorted."""
    symmetries = region_symmetries(spec)
    seen = {v}
    queue = deque([v])
    while queue:
        current = queue.popleft()
        for psi in symmetries:
            image = reflect(current, psi)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return sorted(seen, key=lambda p: p.coords)


def all_specs(n: int) -> list[TorusSpec]:
    """Every canonical spec of rank n."""
    return [
        TorusSpec.from_counts(m, l, n)
        for m in range(n + 1)
        for l in range(n - m + 1)
    ]
