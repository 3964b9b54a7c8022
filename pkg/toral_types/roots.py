"""Exact finite and affine root systems of types A and C.

Type C_n lives in R^n with roots ε_i ± ε_j (i ≠ j) and ±2ε_i, so the rank-one
alcove is [0, 1/2]. Type A_{n-1} lives in the trace-zero hyperplane of R^n with
roots ε_i − ε_j. All arithmetic is done with :class:`fractions.Fraction`.
"""
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

from toral_types.exceptions import ConfigurationError, ContractViolation, InternalError
from toral_types.log import logger

Covector = tuple[int, ...]


class Family(str, Enum):
    A = "A"
    C = "C"


def _as_fraction(value) -> Fraction:
    if isinstance(value, float) or isinstance(value, bool):
        raise ContractViolation(
            f"Apartment coordinates must be exact rationals, got {value!r}."
        )
    return Fraction(value)


@dataclass(frozen=True)
class ApartmentPoint:
    """A point of the standard apartment in the basis dual to ε_1, ..., ε_n."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "coords", tuple(_as_fraction(c) for c in self.coords)
        )

    @classmethod
    def of(cls, *coords) -> "ApartmentPoint":
        return cls(tuple(coords))

    @classmethod
    def zero(cls, n: int) -> "ApartmentPoint":
        return cls((Fraction(0),) * n)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, index):
        return self.coords[index]

    def __add__(self, other: "ApartmentPoint") -> "ApartmentPoint":
        _check_same_dimension(self, other)
        return ApartmentPoint(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "ApartmentPoint") -> "ApartmentPoint":
        _check_same_dimension(self, other)
        return ApartmentPoint(tuple(a - b for a, b in zip(self, other)))

    def scale(self, factor) -> "ApartmentPoint":
        factor = _as_fraction(factor)
        return ApartmentPoint(tuple(factor * c for c in self))

    def pair(self, covector: Sequence) -> Fraction:
        """Evaluate a covector at this point."""
        if len(covector) != len(self.coords):
            raise ContractViolation(
                f"Covector of length {len(covector)} cannot be evaluated at a "
                f"point of dimension {len(self.coords)}."
            )
        return sum((Fraction(c) * z for c, z in zip(covector, self.coords)), Fraction(0))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def _check_same_dimension(a: ApartmentPoint, b: ApartmentPoint):
    if len(a) != len(b):
        raise ContractViolation(
            f"Points of dimension {len(a)} and {len(b)} cannot be combined."
        )


def barycentre(points: Sequence[ApartmentPoint]) -> ApartmentPoint:
    if not points:
        raise ContractViolation("The barycentre of an empty set is undefined.")
    total = points[0]
    for p in points[1:]:
        total = total + p
    return total.scale(Fraction(1, len(points)))


@dataclass(frozen=True, order=True)
class AffineRoot:
    """The affine function z ↦ gradient(z) + offset."""

    gradient: Covector
    offset: int = 0

    def __call__(self, z: ApartmentPoint) -> Fraction:
        return eval_affine(self, z)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.gradient, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            size = "" if abs(c) == 1 else str(abs(c))
            terms.append(f"{sign}{size}e{i}")
        text = "".join(terms).lstrip("+") or "0"
        if self.offset:
            text += f"{self.offset:+d}"
        return text


def eval_affine(psi: AffineRoot, z: ApartmentPoint) -> Fraction:
    """Value ψ̇(z) + offset of an affine root at a point.

    Raises:
        ContractViolation: if the gradient and the point have different dimensions.
    """
    return z.pair(psi.gradient) + psi.offset


def coroot(alpha: Sequence[int]) -> tuple[Fraction, ...]:
    """α^∨ = 2α / (α, α) for the standard inner product."""
    norm = sum(c * c for c in alpha)
    return tuple(Fraction(2 * c, norm) for c in alpha)


def reflect(z: ApartmentPoint, psi: AffineRoot) -> ApartmentPoint:
    """Reflection of z in the wall ψ = 0."""
    value = eval_affine(psi, z)
    if value == 0:
        return z
    return ApartmentPoint(
        tuple(c - value * d for c, d in zip(z.coords, coroot(psi.gradient)))
    )


def _unit(n: int, i: int, scale: int = 1) -> list[int]:
    v = [0] * n
    v[i] = scale
    return v


@dataclass(frozen=True)
class RootDatum:
    family: Family
    n: int
    roots: tuple[Covector, ...]
    simple_roots: tuple[Covector, ...]
    positive_roots: tuple[Covector, ...]
    long_roots: tuple[Covector, ...]
    highest_root: Covector

    @property
    def dimension(self) -> int:
        """Dimension of the apartment (trace-zero hyperplane for type A)."""
        return self.n if self.family == Family.C else self.n - 1

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def vertex_denominator(self) -> int:
        """Every vertex has coordinates in (1/d)Z for this d."""
        return 2 if self.family == Family.C else self.n

    @cached_property
    def affine_simple_roots(self) -> tuple[AffineRoot, ...]:
        """[1 − θ, α_1, ..., α_r]; index 0 is the affine simple root."""
        theta = tuple(-c for c in self.highest_root)
        return (AffineRoot(theta, 1),) + tuple(
            AffineRoot(alpha, 0) for alpha in self.simple_roots
        )

    @property
    def label(self) -> str:
        return f"{self.family.value}{self.rank}"

    def check_point(self, z: ApartmentPoint) -> ApartmentPoint:
        """Raise unless z is a point of this apartment."""
        if len(z) != self.n:
            raise ContractViolation(
                f"Point {z} has {len(z)} coordinates; the {self.label} apartment "
                f"uses {self.n}."
            )
        if self.family == Family.A and sum(z.coords) != 0:
            raise ContractViolation(
                f"Point {z} does not lie in the trace-zero hyperplane of the "
                f"{self.label} apartment."
            )
        return z

    def window_bound(self, points: Iterable[ApartmentPoint]) -> int:
        """Offset bound B with every wall meeting the hull of ``points`` among
        the affine roots α + k, |k| ≤ B."""
        largest = Fraction(0)
        for p in points:
            for alpha in self.positive_roots:
                largest = max(largest, abs(p.pair(alpha)))
        return math.ceil(largest) + 1

    def affine_roots(self, bound: int) -> list[AffineRoot]:
        return [
            AffineRoot(alpha, k)
            for alpha in self.roots
            for k in range(-bound, bound + 1)
        ]


def build_root_datum(family: Union[Family, str], n: int) -> RootDatum:
    """Root system of Sp_2n (family C, rank n) or SL_n (family A, rank n − 1).

    Args:
        family: ``"C"`` or ``"A"``.
        n: number of ε coordinates.

    Returns:
        RootDatum: roots sorted lexicographically on their covectors.

    Raises:
        ConfigurationError: for an unknown family or an unsupported rank.
    """
    try:
        family = Family(str(family).upper() if not isinstance(family, Family) else family)
    except ValueError:
        raise ConfigurationError(
            f"Unsupported root system family {family!r}. Use 'A' or 'C'."
        ) from None
    if not isinstance(n, int) or isinstance(n, bool):
        raise ConfigurationError(f"Rank must be an integer, got {n!r}.")
    minimum = 1 if family == Family.C else 2
    if n < minimum:
        raise ConfigurationError(
            f"Family {family.value} needs n >= {minimum}, got n = {n}."
        )

    positive: list[Covector] = []
    for i in range(n):
        for j in range(i + 1, n):
            v = _unit(n, i)
            v[j] = -1
            positive.append(tuple(v))
    if family == Family.C:
        for i in range(n):
            for j in range(i + 1, n):
                v = _unit(n, i)
                v[j] = 1
                positive.append(tuple(v))
        for i in range(n):
            positive.append(tuple(_unit(n, i, 2)))

    simple: list[Covector] = []
    for i in range(n - 1):
        v = _unit(n, i)
        v[i + 1] = -1
        simple.append(tuple(v))
    if family == Family.C:
        simple.append(tuple(_unit(n, n - 1, 2)))
        highest = tuple(_unit(n, 0, 2))
        long_roots = tuple(
            sorted(
                [tuple(_unit(n, i, 2)) for i in range(n)]
                + [tuple(_unit(n, i, -2)) for i in range(n)]
            )
        )
    else:
        v = _unit(n, 0)
        v[n - 1] = -1
        highest = tuple(v)
        long_roots = ()

    roots = tuple(sorted(positive + [tuple(-c for c in a) for a in positive]))
    return RootDatum(
        family=family,
        n=n,
        roots=roots,
        simple_roots=tuple(simple),
        positive_roots=tuple(sorted(positive)),
        long_roots=long_roots,
        highest_root=highest,
    )


def fundamental_alcove_vertices(rd: RootDatum) -> list[ApartmentPoint]:
    """Vertices v_0, ..., v_r of the closed fundamental alcove.

    For type C, v_i has its first i coordinates equal to 1/2 and the rest 0.
    For type A, the i-th vertex is the fundamental coweight with first i
    coordinates (n − i)/n and the rest −i/n.
    """
    n = rd.n
    if rd.family == Family.C:
        half = Fraction(1, 2)
        return [ApartmentPoint((half,) * i + (Fraction(0),) * (n - i)) for i in range(n + 1)]
    return [
        ApartmentPoint((Fraction(n - i, n),) * i + (Fraction(-i, n),) * (n - i))
        for i in range(n)
    ]


@dataclass(frozen=True)
class WeylWord:
    """A product of affine simple reflections, applied left to right.

    ``reflections`` indexes :attr:`RootDatum.affine_simple_roots`.
    """

    reflections: tuple[int, ...]
    source: ApartmentPoint
    target: ApartmentPoint

    def __len__(self) -> int:
        return len(self.reflections)

    def apply(self, z: ApartmentPoint, rd: RootDatum) -> ApartmentPoint:
        for index in self.reflections:
            z = reflect(z, rd.affine_simple_roots[index])
        return z

    def apply_inverse(self, z: ApartmentPoint, rd: RootDatum) -> ApartmentPoint:
        for index in reversed(self.reflections):
            z = reflect(z, rd.affine_simple_roots[index])
        return z


def _reduction_step_bound(z: ApartmentPoint, rd: RootDatum) -> int:
    # each step crosses one wall separating z from the fundamental alcove
    return sum(math.ceil(abs(z.pair(alpha))) + 1 for alpha in rd.positive_roots) + 1


def in_fundamental_alcove(z: ApartmentPoint, rd: RootDatum) -> bool:
    return all(eval_affine(psi, z) >= 0 for psi in rd.affine_simple_roots)


def reduce_to_alcove(z: ApartmentPoint, rd: RootDatum) -> tuple[ApartmentPoint, WeylWord]:
    """Move z into the closed fundamental alcove by affine simple reflections.

    Reflects in the first affine simple root that is negative at the current
    point until none is.

    Returns:
        tuple: the reduced point and the word mapping z onto it. Points already
        in the closed alcove come back unchanged with the empty word.

    Raises:
        InternalError: if the number of steps exceeds the wall-count bound.
    """
    rd.check_point(z)
    bound = _reduction_step_bound(z, rd)
    word: list[int] = []
    current = z
    while True:
        for index, psi in enumerate(rd.affine_simple_roots):
            if eval_affine(psi, current) < 0:
                current = reflect(current, psi)
                word.append(index)
                break
        else:
            return current, WeylWord(tuple(word), z, current)
        if len(word) > bound:
            raise InternalError(
                f"Reduction of {z} to the {rd.label} fundamental alcove did not "
                f"finish within {bound} reflections."
            )


def vertex_type(z: ApartmentPoint, rd: RootDatum) -> Optional[int]:
    """Index i of the alcove vertex v_i that z reduces to, or None if z is
    not a vertex of the arrangement."""
    reduced, _ = reduce_to_alcove(z, rd)
    for index, v in enumerate(fundamental_alcove_vertices(rd)):
        if v == reduced:
            return index
    return None


def face_vertices_in_alcove(z: ApartmentPoint, rd: RootDatum) -> list[ApartmentPoint]:
    """Vertices of the face of the closed fundamental alcove containing z."""
    if not in_fundamental_alcove(z, rd):
        raise ContractViolation(f"Point {z} is not in the closed fundamental alcove.")
    vanishing = [psi for psi in rd.affine_simple_roots if eval_affine(psi, z) == 0]
    return [
        v
        for v in fundamental_alcove_vertices(rd)
        if all(eval_affine(psi, v) == 0 for psi in vanishing)
    ]


def closed_facet_vertices(z: ApartmentPoint, rd: RootDatum) -> list[ApartmentPoint]:
    """Vertices of the closure of the facet containing z, sorted."""
    reduced, word = reduce_to_alcove(z, rd)
    vertices = [word.apply_inverse(v, rd) for v in face_vertices_in_alcove(reduced, rd)]
    logger.debug(f"Facet of {z} has {len(vertices)} vertices after {len(word)} reflections")
    return sorted(vertices, key=lambda p: p.coords)
