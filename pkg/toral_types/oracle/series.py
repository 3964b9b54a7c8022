"""Truncated Laurent series over a prime field F_q."""
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from sympy import isprime

from toral_types.exceptions import ConfigurationError, ContractViolation, InternalError


def check_field_size(q: int) -> int:
    if not isinstance(q, int) or q < 3 or not isprime(q):
        raise ConfigurationError(
            f"The residue field size q must be an odd prime, got q = {q}."
        )
    return q


def residue_sqrt(c: int, q: int) -> Optional[int]:
    """Smallest square root of c in F_q, or None."""
    c %= q
    for r in range(q):
        if r * r % q == c:
            return r
    return None


def non_square(q: int) -> int:
    """Smallest non-square unit of F_q."""
    for c in range(2, q):
        if residue_sqrt(c, q) is None:
            return c
    raise ConfigurationError(f"F_{q} has no non-square units.")


@dataclass(frozen=True)
class TruncSeries:
    """Σ c_e t^e for start ≤ e < prec, coefficients in F_q.

    ``prec`` is the absolute precision: nothing is known about coefficients
    at exponents ≥ prec. Normalization strips leading zeros, so ``start`` is
    the valuation of a nonzero series; a zero series has ``start == prec``.
    """

    q: int
    prec: int
    start: int = 0
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = [int(c) % self.q for c in self.coeffs][: max(self.prec - self.start, 0)]
        start = self.start
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
            start += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            start = self.prec
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "start", start)

    @classmethod
    def zero(cls, q: int, prec: int) -> "TruncSeries":
        return cls(q, prec)

    @classmethod
    def constant(cls, c: int, q: int, prec: int) -> "TruncSeries":
        return cls(q, prec, 0, (c,))

    @classmethod
    def one(cls, q: int, prec: int) -> "TruncSeries":
        return cls.constant(1, q, prec)

    @classmethod
    def monomial(cls, c: int, e: int, q: int, prec: int) -> "TruncSeries":
        return cls(q, prec, e, (c,))

    @classmethod
    def from_coeffs(
        cls, coeffs: Sequence[int], q: int, prec: int, start: int = 0
    ) -> "TruncSeries":
        return cls(q, prec, start, tuple(coeffs))

    @classmethod
    def random(
        cls,
        q: int,
        prec: int,
        rng: np.random.Generator,
        valuation: int = 0,
        unit: bool = False,
    ) -> "TruncSeries":
        """Uniform coefficients for valuation ≤ e < prec; with ``unit`` the
        coefficient at ``valuation`` is nonzero."""
        size = max(prec - valuation, 0)
        coeffs = rng.integers(0, q, size=size).tolist()
        if unit and size:
            coeffs[0] = int(rng.integers(1, q))
        return cls(q, prec, valuation, tuple(coeffs))

    @property
    def valuation(self) -> Union[int, float]:
        return self.start if self.coeffs else math.inf

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, e: int) -> int:
        if e >= self.prec:
            raise ContractViolation(f"Coefficient of t^{e} is beyond the precision t^{self.prec}.")
        if e < self.start or e - self.start >= len(self.coeffs):
            return 0
        return self.coeffs[e - self.start]

    def _dense(self, lo: int, hi: int) -> np.ndarray:
        out = np.zeros(max(hi - lo, 0), dtype=np.int64)
        for i, c in enumerate(self.coeffs):
            e = self.start + i
            if lo <= e < hi:
                out[e - lo] = c
        return out

    def _check_ring(self, other: "TruncSeries"):
        if other.q != self.q:
            raise ContractViolation(f"Cannot combine series over F_{self.q} and F_{other.q}.")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        if isinstance(other, int):
            other = TruncSeries.constant(other, self.q, self.prec)
        self._check_ring(other)
        prec = min(self.prec, other.prec)
        lo = min(self.start, other.start, prec)
        dense = (self._dense(lo, prec) + other._dense(lo, prec)) % self.q
        return TruncSeries(self.q, prec, lo, tuple(dense.tolist()))

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.q, self.prec, self.start, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        if isinstance(other, int):
            other = TruncSeries.constant(other, self.q, self.prec)
        return self + (-other)

    def __rsub__(self, other: int) -> "TruncSeries":
        return TruncSeries.constant(other, self.q, self.prec) - self

    def __mul__(self, other: Union["TruncSeries", int]) -> "TruncSeries":
        if isinstance(other, int):
            return TruncSeries(self.q, self.prec, self.start, tuple(c * other for c in self.coeffs))
        self._check_ring(other)
        # zero series behave as if their valuation were their precision
        v_self = self.start
        v_other = other.start
        prec = min(v_self + other.prec, v_other + self.prec)
        if self.is_zero or other.is_zero:
            return TruncSeries.zero(self.q, prec)
        product = np.convolve(
            np.array(self.coeffs, dtype=np.int64), np.array(other.coeffs, dtype=np.int64)
        ) % self.q
        return TruncSeries(self.q, prec, v_self + v_other, tuple(product.tolist()))

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by t^k."""
        return TruncSeries(self.q, self.prec + k, self.start + k, self.coeffs)

    def inverse(self) -> "TruncSeries":
        """Multiplicative inverse; relative precision is kept.

        Raises:
            ContractViolation: for a series with no known nonzero coefficient.
        """
        if self.is_zero:
            raise ContractViolation("Cannot invert a series that is zero to its precision.")
        v = self.start
        relative = self.prec - v
        w = list(self.coeffs) + [0] * (relative - len(self.coeffs))
        lead_inv = pow(w[0], -1, self.q)
        inv = [lead_inv] + [0] * (relative - 1)
        for e in range(1, relative):
            acc = sum(w[i] * inv[e - i] for i in range(1, e + 1))
            inv[e] = (-lead_inv * acc) % self.q
        return TruncSeries(self.q, -v + relative, -v, tuple(inv))

    def sqrt(self, root: Optional[int] = None) -> "TruncSeries":
        """Square root by lifting a residue root coefficient by coefficient.

        Args:
            root: square root of the leading coefficient to lift; defaults to
                the smallest one.

        Raises:
            ContractViolation: if the valuation is odd or the leading
                coefficient is not a square in F_q.
        """
        if self.is_zero:
            return TruncSeries.zero(self.q, self.prec // 2)
        v = self.start
        if v % 2:
            raise ContractViolation(f"A series of odd valuation {v} has no square root.")
        lead = self.coeffs[0]
        if root is None:
            root = residue_sqrt(lead, self.q)
        if root is None or (root * root - lead) % self.q:
            raise ContractViolation(f"{lead} is not a square modulo {self.q}.")
        relative = self.prec - v
        w = list(self.coeffs) + [0] * (relative - len(self.coeffs))
        half_inv = pow(2 * root, -1, self.q)
        a = [root % self.q] + [0] * (relative - 1)
        for e in range(1, relative):
            cross = sum(a[i] * a[e - i] for i in range(1, e))
            a[e] = ((w[e] - cross) * half_inv) % self.q
        return TruncSeries(self.q, v // 2 + relative, v // 2, tuple(a))

    def valuation_at_least(self, bound: int) -> bool:
        """Whether ν(self) ≥ bound.

        Raises:
            InternalError: if the precision is too low to decide.
        """
        if not self.is_zero:
            return self.start >= bound
        if self.prec >= bound:
            return True
        raise InternalError(
            f"Precision t^{self.prec} is too low to decide valuation >= {bound}; raise N."
        )

    def agrees_with(self, other: "TruncSeries", modulo: int) -> bool:
        """Equality modulo t^modulo."""
        return (self - other).valuation_at_least(modulo)

    def __str__(self) -> str:
        if self.is_zero:
            return f"O(t^{self.prec})"
        terms = [f"{c}t^{self.start + i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) + f" + O(t^{self.prec})"
