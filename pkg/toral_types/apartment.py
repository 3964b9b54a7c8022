"""Facets, convex regions, simplicial closures and simplicial radii in the
standard apartment."""
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterator, Optional, Sequence, Union

import networkx as nx
from sympy import Matrix, Rational

from toral_types.exceptions import ContractViolation, InternalError
from toral_types.log import logger
from toral_types.roots import (
    AffineRoot,
    ApartmentPoint,
    Family,
    RootDatum,
    barycentre,
    build_root_datum,
    closed_facet_vertices,
    eval_affine,
    fundamental_alcove_vertices,
    vertex_type,
)

Row = tuple[Fraction, ...]
#: α(z) ≤ bound for a root α
RootBound = tuple[tuple[int, ...], Fraction]


def _to_sympy(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


def _direction(row: Row) -> Row:
    lead = next(abs(c) for c in row if c != 0)
    return tuple(Fraction(c) / lead for c in row)


def _rank(rows: Sequence[Row]) -> int:
    if not rows:
        return 0
    return Matrix([[_to_sympy(Fraction(c)) for c in row] for row in rows]).rank()


@dataclass(frozen=True)
class Constraint:
    """covector(z − base) ≤ bound, or = bound for equalities."""

    covector: Row
    bound: Fraction

    def __post_init__(self):
        object.__setattr__(self, "covector", tuple(Fraction(c) for c in self.covector))
        object.__setattr__(self, "bound", Fraction(self.bound))

    @property
    def axis(self) -> Optional[int]:
        nonzero = [i for i, c in enumerate(self.covector) if c != 0]
        return nonzero[0] if len(nonzero) == 1 else None


@dataclass(frozen=True)
class Region:
    """A closed bounded convex region given by linear constraints around a
    base point.

    The constructor computes the bounding box, which raises
    :class:`ContractViolation` for unbounded or empty regions.
    """

    base: ApartmentPoint
    inequalities: tuple[Constraint, ...]
    equalities: tuple[Constraint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "inequalities", tuple(self.inequalities))
        object.__setattr__(self, "equalities", tuple(self.equalities))
        for c in self.inequalities + self.equalities:
            if len(c.covector) != len(self.base):
                raise ContractViolation(
                    f"Constraint {c} does not match the dimension of base point {self.base}."
                )
        self.box

    @property
    def n(self) -> int:
        return len(self.base)

    def _absolute(self, constraints: Sequence[Constraint]) -> list[tuple[Row, Fraction]]:
        return [(c.covector, c.bound + self.base.pair(c.covector)) for c in constraints]

    @cached_property
    def absolute_inequalities(self) -> list[tuple[Row, Fraction]]:
        return self._absolute(self.inequalities)

    @cached_property
    def absolute_equalities(self) -> list[tuple[Row, Fraction]]:
        return self._absolute(self.equalities)

    @cached_property
    def is_axis_aligned(self) -> bool:
        return all(c.axis is not None for c in self.inequalities + self.equalities)

    def contains(self, z: ApartmentPoint) -> bool:
        if len(z) != self.n:
            raise ContractViolation(f"Point {z} does not match the region's dimension {self.n}.")
        return all(z.pair(row) <= rhs for row, rhs in self.absolute_inequalities) and all(
            z.pair(row) == rhs for row, rhs in self.absolute_equalities
        )

    def _axis_box(self) -> Optional[list[tuple[Fraction, Fraction]]]:
        lows: list[Optional[Fraction]] = [None] * self.n
        highs: list[Optional[Fraction]] = [None] * self.n

        def tighten(i, lo=None, hi=None):
            if lo is not None and (lows[i] is None or lo > lows[i]):
                lows[i] = lo
            if hi is not None and (highs[i] is None or hi < highs[i]):
                highs[i] = hi

        for c, (row, rhs) in zip(self.inequalities, self.absolute_inequalities):
            i = c.axis
            if i is None:
                continue
            if row[i] > 0:
                tighten(i, hi=rhs / row[i])
            else:
                tighten(i, lo=rhs / row[i])
        for c, (row, rhs) in zip(self.equalities, self.absolute_equalities):
            i = c.axis
            if i is not None:
                tighten(i, lo=rhs / row[i], hi=rhs / row[i])
        if any(v is None for v in lows + highs):
            return None
        return list(zip(lows, highs))

    @cached_property
    def is_bounded(self) -> bool:
        """True iff the recession cone {d : row·d ≤ 0, eq·d = 0} is {0}.

        A constraint set closed under negation bounds the region exactly when
        it has full rank. Otherwise the cone is cut down to the unit cube and
        its vertices are enumerated.
        """
        rows = [c.covector for c in self.inequalities if any(c.covector)]
        equalities = [c.covector for c in self.equalities if any(c.covector)]
        directions = {_direction(row) for row in rows}
        if all(tuple(-c for c in d) in directions for d in directions):
            return _rank(rows + equalities) == self.n
        units = [tuple(int(j == i) for j in range(self.n)) for i in range(self.n)]
        cube = [Constraint(e, 1) for e in units] + [Constraint(tuple(-c for c in e), 1) for e in units]
        cone = Region(
            base=ApartmentPoint.zero(self.n),
            inequalities=tuple(Constraint(row, 0) for row in rows) + tuple(cube),
            equalities=tuple(Constraint(row, 0) for row in equalities),
        )
        return all(not any(v) for v in cone.vertices())

    @cached_property
    def box(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Per-coordinate (low, high) bounds. Read off the axis-aligned
        constraints when they bound every coordinate, and otherwise exact from
        the polytope vertices."""
        box = self._axis_box()
        if box is None:
            if not self.is_bounded:
                raise ContractViolation(
                    f"Region around {self.base} is unbounded; its constraints must "
                    f"bound every coordinate."
                )
            vertices = self.vertices()
            if not vertices:
                raise ContractViolation(f"Region around {self.base} is empty.")
            box = [(min(v[i] for v in vertices), max(v[i] for v in vertices)) for i in range(self.n)]
        if any(lo > hi for lo, hi in box):
            raise ContractViolation(f"Region around {self.base} is empty.")
        return tuple(box)

    @property
    def is_point(self) -> bool:
        return all(lo == hi for lo, hi in self.box)

    def maximize(self, covector: Sequence) -> Fraction:
        """Exact maximum of covector(z) over the region."""
        covector = tuple(Fraction(c) for c in covector)
        if self.is_axis_aligned:
            return sum(
                (c * (hi if c > 0 else lo) for c, (lo, hi) in zip(covector, self.box)),
                Fraction(0),
            )
        vertices = self.vertices()
        if not vertices:
            raise ContractViolation(f"Region around {self.base} is empty.")
        return max(v.pair(covector) for v in vertices)

    @cached_property
    def _vertices(self) -> tuple[ApartmentPoint, ...]:
        equalities = self.absolute_equalities
        free = self.n - _rank([row for row, _ in equalities])
        candidates = self.absolute_inequalities
        found: set[tuple[Fraction, ...]] = set()
        for subset in itertools.combinations(range(len(candidates)), free):
            rows = [candidates[i] for i in subset] + list(equalities)
            A = Matrix([[_to_sympy(c) for c in row] for row, _ in rows])
            if len(rows) == self.n:
                if A.det() == 0:
                    continue
                solution = A.LUsolve(Matrix([_to_sympy(rhs) for _, rhs in rows]))
            else:
                if A.rank() < self.n:
                    continue
                b = Matrix([_to_sympy(rhs) for _, rhs in rows])
                # least-squares normal equations; exact for a consistent full-rank system
                solution = (A.T * A).LUsolve(A.T * b)
            point = ApartmentPoint(
                tuple(Fraction(int(v.p), int(v.q)) for v in (Rational(x) for x in solution))
            )
            if all(point.pair(row) == rhs for row, rhs in rows) and self.contains(point):
                found.add(point.coords)
        return tuple(ApartmentPoint(p) for p in sorted(found))

    def vertices(self) -> list[ApartmentPoint]:
        """Polytope vertices, found by solving every maximal-rank subset of
        active constraints exactly and keeping the feasible solutions.

        Exponential in the number of constraints; meant for small regions.
        """
        return list(self._vertices)

    def clip_segment(
        self, start: ApartmentPoint, end: ApartmentPoint
    ) -> Optional[tuple[Fraction, Fraction]]:
        """Parameter interval [t_lo, t_hi] ⊆ [0, 1] of start + t(end − start)
        lying in the region, or None if the segment misses it."""
        direction = end - start
        t_lo, t_hi = Fraction(0), Fraction(1)
        for row, rhs in self.absolute_inequalities:
            slope = direction.pair(row)
            room = rhs - start.pair(row)
            if slope == 0:
                if room < 0:
                    return None
            elif slope > 0:
                t_hi = min(t_hi, room / slope)
            else:
                t_lo = max(t_lo, room / slope)
        for row, rhs in self.absolute_equalities:
            slope = direction.pair(row)
            room = rhs - start.pair(row)
            if slope == 0:
                if room != 0:
                    return None
            else:
                t = room / slope
                t_lo, t_hi = max(t_lo, t), min(t_hi, t)
        if t_lo > t_hi:
            return None
        return t_lo, t_hi


def point_on_segment(start: ApartmentPoint, end: ApartmentPoint, t: Fraction) -> ApartmentPoint:
    return start + (end - start).scale(t)


def _trace_zero(rd: RootDatum) -> tuple[Constraint, ...]:
    if rd.family == Family.A:
        return (Constraint((1,) * rd.n, 0),)
    return ()


def omega_region(x: ApartmentPoint, s, rd: RootDatum) -> Region:
    """Ω_A(x, s) = {z : α(z − x) ≤ s for every root α}.

    Raises:
        ContractViolation: if s < 0 or x is not a point of the apartment.
    """
    s = Fraction(s)
    if s < 0:
        raise ContractViolation(f"Omega region needs s >= 0, got s = {s}.")
    rd.check_point(x)
    return Region(
        base=x,
        inequalities=tuple(Constraint(alpha, s) for alpha in rd.roots),
        equalities=_trace_zero(rd),
    )


def point_region(x: ApartmentPoint, rd: RootDatum) -> Region:
    rd.check_point(x)
    return Region(
        base=x,
        inequalities=(),
        equalities=tuple(
            Constraint(tuple(int(j == i) for j in range(rd.n)), 0) for i in range(rd.n)
        ),
    )


def box_region(
    base: ApartmentPoint, bounds: Sequence[tuple[Fraction, Fraction]], rd: RootDatum
) -> Region:
    """The box Π [lo_i, hi_i] (coordinates, not offsets from base)."""
    rd.check_point(base)
    inequalities = []
    equalities = []
    for i, (lo, hi) in enumerate(bounds):
        e = tuple(int(j == i) for j in range(rd.n))
        lo, hi = Fraction(lo), Fraction(hi)
        if lo == hi:
            equalities.append(Constraint(e, lo - base[i]))
        else:
            inequalities.append(Constraint(e, hi - base[i]))
            inequalities.append(Constraint(tuple(-c for c in e), base[i] - lo))
    return Region(base=base, inequalities=tuple(inequalities), equalities=tuple(equalities))


@dataclass(frozen=True)
class Facet:
    """A facet of the affine hyperplane arrangement.

    ``vertices`` are the vertices of its closure; the facet is their open
    simplex.
    """

    zero_set: tuple[AffineRoot, ...]
    positive_set: tuple[AffineRoot, ...]
    dimension: int
    vertex_type: Optional[int]
    vertices: tuple[ApartmentPoint, ...]

    @property
    def barycentre(self) -> ApartmentPoint:
        return barycentre(self.vertices)

    @property
    def key(self) -> tuple:
        return (self.dimension, tuple(v.coords for v in self.vertices))

    def is_face_of(self, other: "Facet") -> bool:
        return set(self.vertices) <= set(other.vertices)


def _gradient_rank(roots: Sequence[AffineRoot]) -> int:
    rows = set()
    for psi in roots:
        g = psi.gradient
        lead = next(c for c in g if c != 0)
        rows.add(g if lead > 0 else tuple(-c for c in g))
    if not rows:
        return 0
    return Matrix(sorted(rows)).rank()


def facet_of(z: ApartmentPoint, rd: RootDatum) -> Facet:
    """The facet containing z, with its vanishing and positive affine roots in
    the window |offset| ≤ ceil(max |α(z)|) + 1.

    Raises:
        InternalError: if the rank count and the closure vertex count disagree.
    """
    rd.check_point(z)
    bound = rd.window_bound([z])
    zero_set, positive_set = [], []
    for psi in rd.affine_roots(bound):
        value = eval_affine(psi, z)
        if value == 0:
            zero_set.append(psi)
        elif value > 0:
            positive_set.append(psi)
    dimension = rd.dimension - _gradient_rank(zero_set)
    vertices = closed_facet_vertices(z, rd)
    if len(vertices) != dimension + 1:
        raise InternalError(
            f"Facet of {z} has dimension {dimension} but {len(vertices)} closure vertices."
        )
    return Facet(
        zero_set=tuple(zero_set),
        positive_set=tuple(positive_set),
        dimension=dimension,
        vertex_type=vertex_type(z, rd) if dimension == 0 else None,
        vertices=tuple(vertices),
    )


def _star_lower_bounds(b: ApartmentPoint, rd: RootDatum) -> list[tuple[tuple[int, ...], int]]:
    # open star of the facet through b: α(z) > ceil(α(b)) − 1 for every root α
    return [(alpha, math.ceil(b.pair(alpha)) - 1) for alpha in rd.roots]


def in_open_star(z: ApartmentPoint, b: ApartmentPoint, rd: RootDatum) -> bool:
    """True iff the facet of z has the facet of b in its closure."""
    return all(z.pair(alpha) > lower for alpha, lower in _star_lower_bounds(b, rd))


def _root_bounds(R: Region, rd: RootDatum) -> Optional[list[RootBound]]:
    """R as bounds α(z) ≤ c over roots α, or None if a constant constraint
    already makes R empty.

    Raises:
        ContractViolation: if a constraint of R is not along a root.
    """
    by_direction = {_direction(tuple(Fraction(c) for c in alpha)): alpha for alpha in rd.roots}
    rows = list(R.absolute_inequalities)
    for row, rhs in R.absolute_equalities:
        if rd.family == Family.A and len(set(row)) == 1:
            # trace zero; difference constraints are invariant along (1, ..., 1)
            continue
        rows += [(row, rhs), (tuple(-c for c in row), -rhs)]
    bounds = []
    for row, rhs in rows:
        if not any(row):
            if rhs < 0:
                return None
            continue
        alpha = by_direction.get(_direction(row))
        if alpha is None:
            raise ContractViolation(
                f"Constraint {[str(c) for c in row]} of the region around {R.base} is not "
                f"along a root of {rd.label}; simplicial closures need root-direction constraints."
            )
        k = next(i for i, c in enumerate(row) if c != 0)
        bounds.append((alpha, rhs * alpha[k] / row[k]))
    return bounds


def _potential_edges(alpha: Sequence[int], rd: RootDatum) -> list[tuple[Hashable, Hashable]]:
    """Pairs (u, v) with α(z) = p_v − p_u for the potentials p.

    Type A uses p_i = z_i. Type C doubles the variables, p_(+, i) = z_i and
    p_(−, i) = −z_i, so that every root is a difference of two potentials.
    """
    if rd.family == Family.A:
        return [(alpha.index(-1), alpha.index(1))]
    support = [i for i, c in enumerate(alpha) if c != 0]

    def node(i: int, sign: int):
        return ("+" if sign > 0 else "-", i)

    if len(support) == 1:
        (i,) = support
        return [(node(i, -alpha[i]), node(i, alpha[i]))]
    i, j = support
    return [(node(j, -alpha[j]), node(i, alpha[i])), (node(i, -alpha[i]), node(j, alpha[j]))]


def difference_system_feasible(
    closed: Sequence[RootBound], strict: Sequence[RootBound], rd: RootDatum
) -> bool:
    """True iff some z has α(z) ≤ c for the closed bounds and α(z) < c for the
    strict ones.

    Root bounds are difference constraints on potentials, which are feasible
    iff the constraint graph has no negative cycle. Strict bounds lose ε, with
    ε small enough that no cycle of positive weight can turn negative.
    """
    constants = [c for _, c in closed] + [c for _, c in strict]
    if not constants:
        return True
    nodes = rd.n if rd.family == Family.A else 2 * rd.n
    denominator = math.lcm(*(Fraction(c).denominator for c in constants))
    epsilon = Fraction(1, denominator * (nodes + 1))
    weights: dict[tuple[Hashable, Hashable], Fraction] = {}
    for bounds, slack in ((closed, Fraction(0)), (strict, epsilon)):
        for alpha, c in bounds:
            for edge in _potential_edges(alpha, rd):
                w = Fraction(c) - slack
                if edge not in weights or w < weights[edge]:
                    weights[edge] = w
    graph = nx.DiGraph()
    graph.add_weighted_edges_from((u, v, w) for (u, v), w in weights.items())
    return not nx.negative_edge_cycle(graph, weight="weight")


def meets_open_star(R: Region, b: ApartmentPoint, rd: RootDatum) -> bool:
    """True iff R meets the open star of the facet through b, i.e. that facet
    is a face of a facet meeting R.

    Raises:
        ContractViolation: if R has a constraint that is not along a root.
    """
    if R.contains(b) or (in_open_star(R.base, b, rd) and R.contains(R.base)):
        return True
    if R.is_point:
        return False
    bounds = _root_bounds(R, rd)
    if bounds is None:
        return False
    # α(z) > lower becomes (−α)(z) < −lower
    strict = [
        (tuple(-c for c in alpha), Fraction(-lower)) for alpha, lower in _star_lower_bounds(b, rd)
    ]
    return difference_system_feasible(bounds, strict, rd)


def _grid_values(lo: Fraction, hi: Fraction, d: int, strict: bool) -> list[Fraction]:
    first = math.floor(lo * d) if strict else math.ceil(lo * d)
    last = math.ceil(hi * d) if strict else math.floor(hi * d)
    values = [Fraction(k, d) for k in range(first, last + 1)]
    if strict:
        values = [v for v in values if lo < v < hi]
    return values


def _grid_points(
    box: Sequence[tuple[Fraction, Fraction]], rd: RootDatum, margin: Fraction = Fraction(0)
) -> Iterator[ApartmentPoint]:
    """Points of the vertex grid (1/d)Z^n in the box, widened by an open margin
    when margin > 0. Type A points are restricted to trace zero."""
    d = rd.vertex_denominator
    strict = margin > 0
    axes = [_grid_values(lo - margin, hi + margin, d, strict) for lo, hi in box]
    if rd.family == Family.C:
        for coords in itertools.product(*axes):
            yield ApartmentPoint(coords)
        return
    for head in itertools.product(*axes[:-1]):
        last = -sum(head, Fraction(0))
        if last in axes[-1]:
            yield ApartmentPoint(head + (last,))


def _star_radius(rd: RootDatum) -> Fraction:
    # every open vertex star lies within this sup-norm distance of its vertex
    return Fraction(1, 2) if rd.family == Family.C else Fraction(1)


def adjacent(u: ApartmentPoint, v: ApartmentPoint, rd: RootDatum) -> bool:
    for alpha in rd.positive_roots:
        a, b = u.pair(alpha), v.pair(alpha)
        if a != b and math.floor(min(a, b)) + 1 < max(a, b):
            return False
    return True


def _cliques(vertices: Sequence[ApartmentPoint], rd: RootDatum) -> Iterator[list[int]]:
    graph = nx.Graph()
    graph.add_nodes_from(range(len(vertices)))
    graph.add_edges_from(
        (i, j)
        for i, j in itertools.combinations(range(len(vertices)), 2)
        if adjacent(vertices[i], vertices[j], rd)
    )
    return nx.enumerate_all_cliques(graph)


def _faces(facet: Facet, rd: RootDatum) -> list[Facet]:
    faces = []
    for size in range(1, len(facet.vertices) + 1):
        for subset in itertools.combinations(facet.vertices, size):
            faces.append(facet_of(barycentre(subset), rd))
    return faces


def _sorted_facets(facets) -> list[Facet]:
    unique = {f.key: f for f in facets}
    return [unique[k] for k in sorted(unique)]


def simplicial_closure(R: Region, rd: RootDatum) -> list[Facet]:
    """All facets meeting R together with all their faces, sorted by
    dimension and then by vertex coordinates.

    Raises:
        ContractViolation: if R is unbounded (raised by the Region itself), or
            if R is not a point and has a constraint that is not along a root.
    """
    if R.is_point:
        return _sorted_facets(_faces(facet_of(R.base, rd), rd))

    candidates = [
        v
        for v in _grid_points(R.box, rd, margin=_star_radius(rd))
        if vertex_type(v, rd) is not None and meets_open_star(R, v, rd)
    ]
    logger.debug(f"{len(candidates)} vertices lie in the closure of the region around {R.base}")

    facets = []
    for clique in _cliques(candidates, rd):
        members = [candidates[i] for i in clique]
        b = barycentre(members)
        facet = facet_of(b, rd)
        if set(facet.vertices) != set(members):
            raise InternalError(
                f"Vertices {[str(m) for m in members]} are pairwise adjacent but do "
                f"not span a facet."
            )
        if meets_open_star(R, b, rd):
            facets.append(facet)
    return _sorted_facets(facets)


def closure_vertices(facets: Sequence[Facet]) -> list[ApartmentPoint]:
    return sorted({v for f in facets for v in f.vertices}, key=lambda p: p.coords)


def simplicial_radius(
    R: Union[Region, Sequence[Facet]], x: ApartmentPoint, rd: RootDatum
) -> Fraction:
    """Largest α(z − x) over z in R and roots α, in the standard apartment.

    For a facet list the maximum is taken over the vertices of the closed
    facets.

    Raises:
        ContractViolation: if x is not in R.
    """
    rd.check_point(x)
    if isinstance(R, Region):
        if not R.contains(x):
            raise ContractViolation(f"Point {x} is not in the region around {R.base}.")
        return max(R.maximize(alpha) - x.pair(alpha) for alpha in rd.roots)

    facets = list(R)
    home = facet_of(x, rd)
    if not any(home.is_face_of(f) for f in facets):
        raise ContractViolation(f"Point {x} is not in the union of the given closed facets.")
    return max(
        (v - x).pair(alpha) for v in closure_vertices(facets) for alpha in rd.roots
    )


def enumerate_vertices(R: Region, rd: RootDatum) -> list[tuple[ApartmentPoint, int]]:
    """Every vertex of the arrangement lying in R, with its type, sorted by
    coordinates."""
    found = []
    for p in _grid_points(R.box, rd):
        if not R.contains(p):
            continue
        t = vertex_type(p, rd)
        if t is not None:
            found.append((p, t))
    return found


def optimal_point_radius_sl_n(k: int, n: int) -> Fraction:
    """Radius of the closure of the barycentre of a facet with k vertices in
    the SL_n apartment, which is 1 − 1/k.

    Args:
        k: number of vertices of the facet (its dimension is k − 1).
        n: SL_n, so the apartment has dimension n − 1.

    Raises:
        ContractViolation: if k is outside 1 ≤ k ≤ n.
        InternalError: if the computed radius is not 1 − 1/k.
    """
    if not 1 <= k <= n:
        raise ContractViolation(f"Need 1 <= k <= n for SL_{n}, got k = {k}.")
    rd = build_root_datum(Family.A, n)
    x = barycentre(fundamental_alcove_vertices(rd)[:k])
    closure = simplicial_closure(point_region(x, rd), rd)
    radius = simplicial_radius(closure, x, rd)
    expected = 1 - Fraction(1, k)
    if radius != expected:
        raise InternalError(
            f"Radius {radius} at the barycentre of a {k}-vertex facet of SL_{n} "
            f"differs from {expected}."
        )
    return radius
