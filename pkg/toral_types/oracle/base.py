from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np

from toral_types.defaults import (
    DEFAULT_PRECISION,
    DEFAULT_Q,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_SLACK,
    MIN_PRECISION,
)
from toral_types.exceptions import ConfigurationError
from toral_types.log import logger
from toral_types.oracle.matrix import LaurentMatrix, ValuationPattern, in_parahoric, parahoric_violation
from toral_types.oracle.series import check_field_size


@dataclass(frozen=True)
class OracleReport:
    check: str
    q: int
    N: int
    samples: int
    verdict: bool
    witnesses: tuple[str, ...] = ()
    details: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "q": self.q,
            "N": self.N,
            "samples": self.samples,
            "verdict": self.verdict,
            "witnesses": list(self.witnesses),
            "details": self.details,
        }


class OracleCheck(ABC):
    """Abstract base class for a matrix-level check."""

    name: str = ""

    def __init__(
        self,
        q: int = DEFAULT_Q,
        prec: int = DEFAULT_PRECISION,
        samples: int = DEFAULT_SAMPLES,
        seed: int = DEFAULT_SEED,
        slack: int = DEFAULT_SLACK,
    ):
        """
        Args:
            q (int, optional): Size of the residue field, an odd prime.
                Defaults to 3.
            prec (int, optional): Truncation order N of the series field.
                Defaults to 8.
            samples (int, optional): Number of sampled group elements.
            seed (int, optional): Seed of the random generator. Identical
                seeds give identical reports.
            slack (int, optional): Claims are made modulo t^(N - slack).
        """
        self.q = check_field_size(q)
        if prec < MIN_PRECISION:
            raise ConfigurationError(
                f"Truncation order N must be at least {MIN_PRECISION}, got N = {prec}."
            )
        if not 0 <= slack < prec:
            raise ConfigurationError(f"Slack must lie in [0, N), got {slack}.")
        if samples < 1:
            raise ConfigurationError(f"Need at least one sample, got {samples}.")
        self.prec = prec
        self.samples = samples
        self.seed = seed
        self.slack = slack
        self.rng = np.random.default_rng(seed)

    def contains(self, g: LaurentMatrix, pattern: ValuationPattern) -> bool:
        return in_parahoric(g, pattern, self.slack)

    def describe_violation(self, g: LaurentMatrix, pattern: ValuationPattern) -> str:
        i, j = parahoric_violation(g, pattern)
        return (
            f"entry ({i + 1},{j + 1}) has valuation {g[i, j].valuation}"
            f" < {pattern.bounds[i][j]}"
        )

    def report(self, verdict: bool, witnesses, samples: int = None, **details) -> OracleReport:
        report = OracleReport(
            check=self.name,
            q=self.q,
            N=self.prec,
            samples=self.samples if samples is None else samples,
            verdict=bool(verdict),
            witnesses=tuple(sorted(witnesses)),
            details=details,
        )
        log = logger.info if report.verdict else logger.error
        log(f"Oracle check {self.name} over F_{self.q} mod t^{self.prec}: verdict {report.verdict}")
        return report

    @abstractmethod
    def run(self) -> OracleReport:
        """Run the check.

        Returns:
            OracleReport: verdict True iff the matrices agree with the closed
            form geometry.
        """
        raise NotImplementedError
