"""Elements of the anisotropic tori of Sp_2n over the truncated field.

Each rank-one factor sits in the SL_2 on coordinates (i, i + n):

    ramified at ¼         [[a, b], [γ b t, a]]          a² − γ t b² = 1
    unramified at 0       [[a, b], [ε b, a]]            a² − ε b² = 1
    unramified at ½       [[a, b t⁻¹], [ε b t, a]]      a² − ε b² = 1

with γ a unit and ε a non-square unit of F_q.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from toral_types.exceptions import ContractViolation
from toral_types.log import logger
from toral_types.oracle.matrix import LaurentMatrix
from toral_types.oracle.series import TruncSeries, check_field_size, non_square
from toral_types.torus import FactorKind, TorusSpec


def hensel_torus_element(
    b: TruncSeries, gamma: int = 1, sign: int = 1
) -> tuple[TruncSeries, TruncSeries]:
    """Solve a² − γ t b² = 1 for a ≡ ±1 mod t.

    Args:
        b: series with ν(b) ≥ 0.
        gamma: a unit of F_q.
        sign: +1 or −1, the residue of a.

    Returns:
        tuple: (a, b) satisfying the norm equation modulo t^N.

    Raises:
        ContractViolation: if ν(b) < 0, N < 2 or γ is not a unit.
    """
    q, prec = b.q, b.prec
    check_field_size(q)
    if prec < 2:
        raise ContractViolation(f"Hensel lifting needs N >= 2, got N = {prec}.")
    if b.valuation < 0:
        raise ContractViolation(f"The torus coordinate b must be integral, got valuation {b.valuation}.")
    if gamma % q == 0:
        raise ContractViolation(f"gamma = {gamma} is not a unit modulo {q}.")
    radicand = TruncSeries.one(q, prec) + (b * b * gamma).shift(1)
    a = radicand.sqrt(root=sign % q)
    return a, b


def norm_one_residues(eps: int, q: int) -> list[tuple[int, int]]:
    """Solutions (a, b) of a² − ε b² = 1 in F_q."""
    return [(a, b) for a in range(q) for b in range(q) if (a * a - eps * b * b - 1) % q == 0]


def unramified_norm_one(
    a0: int, b0: int, eps: int, q: int, prec: int, rng: np.random.Generator
) -> tuple[TruncSeries, TruncSeries]:
    """Random lift of a residue solution of a² − ε b² = 1.

    The coordinate with nonzero residue is solved for; the other is random.
    """
    if a0 % q:
        b = _with_residue(TruncSeries.random(q, prec, rng), b0)
        a = (TruncSeries.one(q, prec) + b * b * eps).sqrt(root=a0)
        return a, b
    a = _with_residue(TruncSeries.random(q, prec, rng), a0)
    eps_inv = pow(eps, -1, q)
    b = ((a * a - 1) * eps_inv).sqrt(root=b0)
    return a, b


def _with_residue(series: TruncSeries, residue: int) -> TruncSeries:
    """Replace the constant coefficient."""
    coeffs = [series.coefficient(e) for e in range(series.prec)]
    coeffs[0] = residue
    return TruncSeries.from_coeffs(coeffs, series.q, series.prec)


def factor_block(
    kind: FactorKind, a: TruncSeries, b: TruncSeries, gamma: int, eps: int
) -> tuple[tuple[TruncSeries, TruncSeries], tuple[TruncSeries, TruncSeries]]:
    if kind == FactorKind.RAMIFIED_MID:
        return (a, b), ((b * gamma).shift(1), a)
    if kind == FactorKind.UNRAMIFIED_ZERO:
        return (a, b), (b * eps, a)
    return (a, b.shift(-1)), ((b * eps).shift(1), a)


def embed_blocks(blocks, q: int, prec: int) -> LaurentMatrix:
    """Block-diagonal element of Sp_2n with factor i on coordinates (i, i+n)."""
    n = len(blocks)
    rows = [
        [TruncSeries.zero(q, prec) for _ in range(2 * n)] for _ in range(2 * n)
    ]
    for i, ((p, r), (s, u)) in enumerate(blocks):
        rows[i][i], rows[i][i + n] = p, r
        rows[i + n][i], rows[i + n][i + n] = s, u
    return LaurentMatrix.from_rows(rows, q, prec)


@dataclass
class TorusSampler:
    """Random elements of the torus described by a :class:`TorusSpec`.

    Ramified factors use ``gamma`` (one unit per factor, default 1);
    unramified factors use the smallest non-square ε of F_q.
    """

    spec: TorusSpec
    q: int
    prec: int
    rng: np.random.Generator
    gammas: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        check_field_size(self.q)
        self.eps = non_square(self.q)
        if self.gammas is None:
            self.gammas = (1,) * self.spec.n
        self.residues = norm_one_residues(self.eps, self.q)

    def factor(self, slot: int) -> tuple[TruncSeries, TruncSeries]:
        """Random (a, b) on one factor."""
        kind = self.spec.factors[slot]
        if kind == FactorKind.RAMIFIED_MID:
            b = TruncSeries.random(self.q, self.prec, self.rng)
            sign = 1 if self.rng.integers(0, 2) else -1
            return hensel_torus_element(b, self.gammas[slot], sign)
        a0, b0 = self.residues[int(self.rng.integers(0, len(self.residues)))]
        return unramified_norm_one(a0, b0, self.eps, self.q, self.prec, self.rng)

    def identity_factor(self) -> tuple[TruncSeries, TruncSeries]:
        return TruncSeries.one(self.q, self.prec), TruncSeries.zero(self.q, self.prec)

    def element(self, slots=None) -> LaurentMatrix:
        """Torus element random on ``slots`` (default all) and trivial elsewhere."""
        slots = range(self.spec.n) if slots is None else slots
        blocks = []
        for i, kind in enumerate(self.spec.factors):
            a, b = self.factor(i) if i in slots else self.identity_factor()
            blocks.append(factor_block(kind, a, b, self.gammas[i], self.eps))
        return embed_blocks(blocks, self.q, self.prec)

    def samples(self, count: int, slots=None) -> list[LaurentMatrix]:
        elements = [self.element(slots) for _ in range(count)]
        logger.debug(f"Sampled {count} elements of the torus {self.spec} over F_{self.q}")
        return elements


def sample_torus_element(
    spec: TorusSpec, q: int, prec: int, rng: np.random.Generator
) -> LaurentMatrix:
    return TorusSampler(spec, q, prec, rng).element()

