"""Matrices over truncated Laurent series and the parahoric valuation
patterns of Sp_2n.

Sp_2n = {g : ᵗg J g = J} with J = [[0, I], [−I, 0]]. The diagonal torus acts
on basis vector k with weight ε_k for k < n and −ε_{k−n} otherwise, so the
matrix position (i, j) carries the root w_i − w_j.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Optional, Sequence

import numpy as np

from toral_types.defaults import DEFAULT_SLACK
from toral_types.exceptions import ContractViolation
from toral_types.oracle.series import TruncSeries
from toral_types.roots import ApartmentPoint

Position = tuple[int, int]


@dataclass(frozen=True)
class LaurentMatrix:
    """Square matrix of :class:`TruncSeries` over a field truncated at t^prec."""

    entries: tuple[tuple[TruncSeries, ...], ...]
    q: int
    prec: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[TruncSeries]], q: int, prec: int) -> "LaurentMatrix":
        return cls(tuple(tuple(row) for row in rows), q, prec)

    @classmethod
    def identity(cls, size: int, q: int, prec: int) -> "LaurentMatrix":
        return cls.from_rows(
            [
                [TruncSeries.constant(int(i == j), q, prec) for j in range(size)]
                for i in range(size)
            ],
            q,
            prec,
        )

    @classmethod
    def from_integers(cls, matrix, q: int, prec: int) -> "LaurentMatrix":
        return cls.from_rows(
            [[TruncSeries.constant(int(c), q, prec) for c in row] for row in np.asarray(matrix)],
            q,
            prec,
        )

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, position: Position) -> TruncSeries:
        i, j = position
        return self.entries[i][j]

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        size = self.size
        rows = []
        for i in range(size):
            row = []
            for j in range(size):
                acc = TruncSeries.zero(self.q, self.prec)
                for k in range(size):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            rows.append(row)
        return LaurentMatrix.from_rows(rows, self.q, self.prec)

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return LaurentMatrix.from_rows(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            self.q,
            self.prec,
        )

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix.from_rows(
            [[self.entries[j][i] for j in range(self.size)] for i in range(self.size)],
            self.q,
            self.prec,
        )

    @property
    def n(self) -> int:
        return self.size // 2

    @cached_property
    def symplectic_defect(self) -> "LaurentMatrix":
        """ᵗg J g − J."""
        J = symplectic_form(self.n, self.q, self.prec)
        return self.transpose() @ J @ self - J

    def is_symplectic(self, slack: int = DEFAULT_SLACK) -> bool:
        modulo = self.prec - slack
        return all(
            entry.valuation_at_least(modulo)
            for row in self.symplectic_defect.entries
            for entry in row
        )

    def symplectic_inverse(self) -> "LaurentMatrix":
        """g⁻¹ = J⁻¹ ᵗg J = −J ᵗg J for symplectic g."""
        J = symplectic_form(self.n, self.q, self.prec)
        product = J @ self.transpose() @ J
        return LaurentMatrix.from_rows(
            [[-entry for entry in row] for row in product.entries], self.q, self.prec
        )

    def conjugate(self, h: "LaurentMatrix") -> "LaurentMatrix":
        """self · h · self⁻¹."""
        return self @ h @ self.symplectic_inverse()

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)


@lru_cache(maxsize=None)
def symplectic_form_integers(n: int) -> np.ndarray:
    J = np.zeros((2 * n, 2 * n), dtype=np.int64)
    J[:n, n:] = np.eye(n, dtype=np.int64)
    J[n:, :n] = -np.eye(n, dtype=np.int64)
    J.setflags(write=False)
    return J


def symplectic_form(n: int, q: int, prec: int) -> LaurentMatrix:
    return LaurentMatrix.from_integers(symplectic_form_integers(n), q, prec)


def basis_weight(n: int, k: int) -> np.ndarray:
    w = np.zeros(n, dtype=np.int64)
    if k < n:
        w[k] = 1
    else:
        w[k - n] = -1
    return w


@lru_cache(maxsize=None)
def root_entry_map(n: int) -> dict[Position, tuple[int, ...]]:
    """Root carried by each off-diagonal matrix position, from the weights of
    the diagonal torus on elementary matrices."""
    roots = {}
    for i in range(2 * n):
        for j in range(2 * n):
            alpha = basis_weight(n, i) - basis_weight(n, j)
            if alpha.any():
                roots[(i, j)] = tuple(int(c) for c in alpha)
    return roots


@lru_cache(maxsize=None)
def root_vector(n: int, position: Position) -> np.ndarray:
    """Integral root vector of sp_2n through ``position``: the elementary
    matrix E plus its image J ᵗE J, scaled to unit entries."""
    J = symplectic_form_integers(n)
    E = np.zeros((2 * n, 2 * n), dtype=np.int64)
    E[position] = 1
    X = E + J @ E.T @ J
    X //= np.gcd.reduce(np.abs(X[X != 0]))
    X.setflags(write=False)
    return X


def root_group_element(
    n: int, position: Position, c: TruncSeries
) -> LaurentMatrix:
    """u_α(c) = I + c X_α for the root α carried by ``position``."""
    X = root_vector(n, position)
    q, prec = c.q, c.prec
    rows = []
    for i in range(2 * n):
        row = []
        for j in range(2 * n):
            entry = TruncSeries.constant(int(i == j), q, prec)
            if X[i, j]:
                entry = entry + c * int(X[i, j])
            row.append(entry)
        rows.append(row)
    return LaurentMatrix.from_rows(rows, q, prec)


@dataclass(frozen=True)
class ValuationPattern:
    """Lower bounds on entry valuations; g belongs to the group iff every
    entry meets its bound."""

    bounds: tuple[tuple[int, ...], ...]

    def render(self) -> list[list[str]]:
        """Entries as ``O``, ``p``, ``p^k`` (the ideal p^k)."""
        names = {0: "O", 1: "p"}
        return [[names.get(b, f"p^{b}") for b in row] for row in self.bounds]


def parahoric_pattern(z: Sequence, n: int, r=0) -> ValuationPattern:
    """Valuation pattern of G_{z,r}: position (i, j) carrying α needs
    valuation ≥ ceil(r − α(z)); diagonal positions need valuation ≥ 0.

    Raises:
        ContractViolation: if r < 0 or z has the wrong dimension.
    """
    r = Fraction(r)
    if r < 0:
        raise ContractViolation(f"Filtration depth must be >= 0, got r = {r}.")
    z = z if isinstance(z, ApartmentPoint) else ApartmentPoint(tuple(z))
    if len(z) != n:
        raise ContractViolation(f"Point {z} is not in the apartment of Sp_{2 * n}.")
    roots = root_entry_map(n)
    return ValuationPattern(
        tuple(
            tuple(
                math.ceil(r - z.pair(roots[(i, j)])) if (i, j) in roots else 0
                for j in range(2 * n)
            )
            for i in range(2 * n)
        )
    )


def parahoric_violation(g: LaurentMatrix, P: ValuationPattern) -> Optional[Position]:
    """First position whose entry misses its bound, or None."""
    for i, row in enumerate(P.bounds):
        for j, bound in enumerate(row):
            if not g.entries[i][j].valuation_at_least(bound):
                return (i, j)
    return None


def in_parahoric(g: LaurentMatrix, P: ValuationPattern, slack: int = DEFAULT_SLACK) -> bool:
    """Entrywise membership test.

    Raises:
        ContractViolation: if g is not symplectic modulo t^(N − slack).
    """
    if len(P.bounds) != g.size:
        raise ContractViolation(
            f"A {g.size}x{g.size} matrix cannot be tested against a "
            f"{len(P.bounds)}x{len(P.bounds)} pattern."
        )
    if not g.is_symplectic(slack):
        raise ContractViolation("Matrix is not symplectic to the working precision.")
    return parahoric_violation(g, P) is None
