import itertools
from fractions import Fraction

from toral_types.apartment import enumerate_vertices
from toral_types.defaults import (
    DEFAULT_ORACLE_BOX,
    DEFAULT_PRECISION,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    MIN_SAMPLES,
)
from toral_types.exceptions import ConfigurationError
from toral_types.helper import format_point
from toral_types.log import logger
from toral_types.oracle.base import OracleCheck, OracleReport
from toral_types.oracle.elements import TorusSampler
from toral_types.oracle.matrix import parahoric_pattern
from toral_types.roots import ApartmentPoint
from toral_types.torus import TorusSpec, fixed_region


class FixedRegionCheck(OracleCheck):
    """Compare the vertices fixed by sampled torus elements with the vertices
    of the closed-form fixed region, inside the box [−box, box]^n."""

    name = "fixed-region"

    def __init__(self, spec: TorusSpec, box: int = DEFAULT_ORACLE_BOX, **kwargs):
        super().__init__(**kwargs)
        if self.samples < MIN_SAMPLES:
            raise ConfigurationError(
                f"The fixed-region check needs at least {MIN_SAMPLES} samples per factor, "
                f"got {self.samples}."
            )
        self.spec = spec
        self.box = box

    def candidates(self) -> list[ApartmentPoint]:
        axis = [Fraction(k, 2) for k in range(-2 * self.box, 2 * self.box + 1)]
        return [ApartmentPoint(c) for c in itertools.product(axis, repeat=self.spec.n)]

    def surviving_vertices(self) -> set[ApartmentPoint]:
        """Vertices z with every sampled element in G_z."""
        sampler = TorusSampler(self.spec, self.q, self.prec, self.rng)
        elements = [
            g for slot in range(self.spec.n) for g in sampler.samples(self.samples, slots=[slot])
        ]
        survivors = set()
        for z in self.candidates():
            pattern = parahoric_pattern(z, self.spec.n, 0)
            if all(self.contains(g, pattern) for g in elements):
                survivors.add(z)
        logger.debug(f"{len(survivors)} of {len(self.candidates())} vertices are fixed by {self.spec}")
        return survivors

    def run(self) -> OracleReport:
        survivors = self.surviving_vertices()
        expected = {
            v
            for v, _ in enumerate_vertices(fixed_region(self.spec), self.spec.root_datum)
            if all(abs(c) <= self.box for c in v)
        }
        return self.report(
            survivors == expected,
            [format_point(v) for v in survivors],
            spec=str(self.spec),
            missing=sorted(format_point(v) for v in expected - survivors),
            unexpected=sorted(format_point(v) for v in survivors - expected),
        )


def oracle_fixed_region(
    spec: TorusSpec,
    q: int,
    N: int = DEFAULT_PRECISION,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    box: int = DEFAULT_ORACLE_BOX,
) -> set[ApartmentPoint]:
    """Vertices of the box whose stabilizer contains every sampled element."""
    return FixedRegionCheck(spec, box=box, q=q, prec=N, samples=samples, seed=seed).surviving_vertices()
