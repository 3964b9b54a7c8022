"""The Sp_4 torus T = T_1 × T_2 of two ramified factors attached to x = (¼, ¼).

The vertices y adjacent to x are parametrized by G_x / G_C, with
representatives the unipotents ā (a ∈ O/p) and a reflection w. Only a = 0
and w keep T inside the stabilizer of y; for a unit a some element of T is
moved out, which is certified by an explicit sampled element.
"""
from fractions import Fraction

from toral_types.log import logger
from toral_types.oracle.base import OracleCheck, OracleReport
from toral_types.oracle.elements import TorusSampler
from toral_types.oracle.matrix import (
    LaurentMatrix,
    ValuationPattern,
    parahoric_pattern,
    root_group_element,
)
from toral_types.oracle.series import TruncSeries
from toral_types.roots import ApartmentPoint
from toral_types.torus import TorusSpec

#: Stabilizers of the fundamental alcove C and of wC, entry by entry
PRINTED_G_C = (
    ("O", "O", "O", "O"),
    ("p", "O", "O", "O"),
    ("p", "p", "O", "p"),
    ("p", "p", "O", "O"),
)
PRINTED_G_WC = (
    ("O", "p", "O", "O"),
    ("O", "O", "O", "O"),
    ("p", "p", "O", "O"),
    ("p", "p", "p", "O"),
)

ALCOVE_BARYCENTRE = ApartmentPoint.of(Fraction(1, 3), Fraction(1, 6))
REFLECTED_BARYCENTRE = ApartmentPoint.of(Fraction(1, 6), Fraction(1, 3))
Y = ApartmentPoint.of(Fraction(1, 2), 0)

# lower unipotent of the root ε_2 − ε_1; the upper one at PRINTED_POSITION lies in G_C
COSET_POSITION = (1, 0)
PRINTED_POSITION = (0, 1)
W_MATRIX = (
    (0, 1, 0, 0),
    (-1, 0, 0, 0),
    (0, 0, 0, 1),
    (0, 0, -1, 0),
)


def _rendered(pattern: ValuationPattern) -> tuple[tuple[str, ...], ...]:
    return tuple(tuple(row) for row in pattern.render())


def printed_pattern_check() -> OracleReport:
    """Compare the computed stabilizer patterns at the two alcove barycentres
    with the reference ones."""
    computed_c = _rendered(parahoric_pattern(ALCOVE_BARYCENTRE, 2, 0))
    computed_wc = _rendered(parahoric_pattern(REFLECTED_BARYCENTRE, 2, 0))
    witnesses = [
        f"{label} entry ({i + 1},{j + 1}): computed {got}, expected {want}"
        for label, computed, printed in (
            ("G_C", computed_c, PRINTED_G_C),
            ("G_wC", computed_wc, PRINTED_G_WC),
        )
        for i, (row, printed_row) in enumerate(zip(computed, printed))
        for j, (got, want) in enumerate(zip(row, printed_row))
        if got != want
    ]
    verdict = not witnesses
    (logger.info if verdict else logger.error)(f"Reference stabilizer patterns reproduced: {verdict}")
    return OracleReport(
        check="printed-patterns",
        q=0,
        N=0,
        samples=0,
        verdict=verdict,
        witnesses=tuple(witnesses),
        details={"G_C": [list(r) for r in computed_c], "G_wC": [list(r) for r in computed_wc]},
    )


class RemarkOrbitCheck(OracleCheck):
    name = "remark-orbit"

    def __init__(self, **kwargs):
        super().__init__(**kwargs)
        self.spec = TorusSpec.from_counts(0, 2, 2)

    def coset_representative(self, a: int) -> LaurentMatrix:
        return root_group_element(2, COSET_POSITION, TruncSeries.constant(a, self.q, self.prec))

    def w(self) -> LaurentMatrix:
        return LaurentMatrix.from_integers(W_MATRIX, self.q, self.prec)

    def run(self) -> OracleReport:
        y_pattern = parahoric_pattern(Y, 2, 0)
        elements = TorusSampler(self.spec, self.q, self.prec, self.rng).samples(self.samples)

        witnesses = []
        contained = {}
        for a in range(self.q):
            abar = self.coset_representative(a)
            violation = None
            for index, t in enumerate(elements):
                conjugate = abar.conjugate(t)
                if not self.contains(conjugate, y_pattern):
                    violation = f"a={a}: sample {index}, " + self.describe_violation(conjugate, y_pattern)
                    break
            contained[a] = violation is None
            if violation:
                witnesses.append(violation)

        w = self.w()
        w_contained = all(self.contains(w.conjugate(t), y_pattern) for t in elements)

        printed = root_group_element(2, PRINTED_POSITION, TruncSeries.one(self.q, self.prec))
        printed_in_c = self.contains(printed, parahoric_pattern(ALCOVE_BARYCENTRE, 2, 0))

        verdict = contained[0] and w_contained and not any(contained[a] for a in range(1, self.q))
        return self.report(
            verdict,
            witnesses,
            contained_for_zero=contained[0],
            contained_for_w=w_contained,
            violating_units=sorted(a for a in range(1, self.q) if not contained[a]),
            printed_representative_in_G_C=printed_in_c,
        )


def remark_orbit_check(q: int, N: int, **kwargs) -> OracleReport:
    return RemarkOrbitCheck(q=q, prec=N, **kwargs).run()
