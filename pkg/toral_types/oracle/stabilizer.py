import math
from fractions import Fraction
from typing import Sequence

from toral_types.apartment import closure_vertices, omega_region, simplicial_closure
from toral_types.defaults import DEFAULT_STABILIZER_SAMPLES
from toral_types.exceptions import ConfigurationError, ContractViolation
from toral_types.helper import format_point
from toral_types.log import logger
from toral_types.oracle.base import OracleCheck, OracleReport
from toral_types.oracle.matrix import (
    LaurentMatrix,
    parahoric_pattern,
    root_entry_map,
    root_group_element,
)
from toral_types.oracle.series import TruncSeries
from toral_types.roots import ApartmentPoint, Family, build_root_datum, in_fundamental_alcove


class StabilizerCheck(OracleCheck):
    """Sample generators of G_{x,s} and check that each one fixes every vertex
    of the simplicial closure of Ω_A(x, s)."""

    name = "stabilizer"

    def __init__(self, x: Sequence, s=Fraction(0), samples: int = DEFAULT_STABILIZER_SAMPLES, **kwargs):
        super().__init__(samples=samples, **kwargs)
        self.x = x if isinstance(x, ApartmentPoint) else ApartmentPoint(tuple(x))
        self.s = Fraction(s)
        self.n = len(self.x)
        if self.n not in (2, 3):
            raise ConfigurationError(f"The stabilizer check supports Sp_4 and Sp_6, got n = {self.n}.")
        if self.s < 0:
            raise ContractViolation(f"Depth s must be >= 0, got s = {self.s}.")
        self.rd = build_root_datum(Family.C, self.n)
        if not in_fundamental_alcove(self.x, self.rd):
            raise ContractViolation(f"Point {self.x} is not in the closed fundamental alcove.")
        self.positions = sorted(root_entry_map(self.n))

    def root_generator(self) -> LaurentMatrix:
        """u_α(c) with ν(c) = ceil(s − α(x)), the boundary of G_{x,s}."""
        position = self.positions[int(self.rng.integers(0, len(self.positions)))]
        alpha = root_entry_map(self.n)[position]
        valuation = math.ceil(self.s - self.x.pair(alpha))
        c = TruncSeries.random(self.q, self.prec, self.rng, valuation=valuation, unit=True)
        return root_group_element(self.n, position, c)

    def torus_generator(self) -> LaurentMatrix:
        """diag(u, u⁻¹) with u_i in 1 + p^ceil(s) (units when s = 0)."""
        depth = math.ceil(self.s)
        units = []
        for _ in range(self.n):
            if depth == 0:
                u = TruncSeries.random(self.q, self.prec, self.rng, unit=True)
            else:
                u = TruncSeries.one(self.q, self.prec) + TruncSeries.random(
                    self.q, self.prec, self.rng, valuation=depth
                )
            units.append(u)
        size = 2 * self.n
        rows = [[TruncSeries.zero(self.q, self.prec) for _ in range(size)] for _ in range(size)]
        for i, u in enumerate(units):
            rows[i][i] = u
            rows[i + self.n][i + self.n] = u.inverse()
        return LaurentMatrix.from_rows(rows, self.q, self.prec)

    def generators(self) -> list[LaurentMatrix]:
        count = len(self.positions)
        return [
            self.torus_generator() if self.rng.integers(0, count + 1) == count else self.root_generator()
            for _ in range(self.samples)
        ]

    def run(self) -> OracleReport:
        closure = simplicial_closure(omega_region(self.x, self.s, self.rd), self.rd)
        vertices = closure_vertices(closure)
        patterns = {v: parahoric_pattern(v, self.n, 0) for v in vertices}
        own = parahoric_pattern(self.x, self.n, self.s)
        logger.debug(
            f"Closure of Omega({self.x}, {self.s}) has {len(closure)} facets and {len(vertices)} vertices"
        )

        witnesses = []
        for index, g in enumerate(self.generators()):
            if not self.contains(g, own):
                witnesses.append(f"sample {index} is not in G_x,s: " + self.describe_violation(g, own))
                continue
            for v, pattern in patterns.items():
                if not self.contains(g, pattern):
                    witnesses.append(
                        f"sample {index} moves {format_point(v)}: " + self.describe_violation(g, pattern)
                    )
        return self.report(
            not witnesses,
            witnesses,
            x=format_point(self.x),
            s=str(self.s),
            vertices=[format_point(v) for v in vertices],
        )


def lemma_stabilizer_check(x, s, q: int, N: int, samples: int = DEFAULT_STABILIZER_SAMPLES, **kwargs) -> bool:
    return StabilizerCheck(x, s, q=q, prec=N, samples=samples, **kwargs).run().verdict
