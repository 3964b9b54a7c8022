import hashlib
import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Union

from slugify import slugify

from toral_types.exceptions import ContractViolation
from toral_types.log import logger

RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse an exact rational from a ``"p/q"`` or ``"p"`` string.

    Floats are rejected: every quantity in this package is exact.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool) or isinstance(text, float):
        raise ContractViolation(
            f"Expected an exact rational, got {text!r}. Pass it as a 'p/q' string."
        )
    if isinstance(text, int):
        return Fraction(text)
    match = RATIONAL_RE.match(str(text))
    if match is None:
        raise ContractViolation(
            f"Could not read {text!r} as a rational number. Use the form 'p/q'."
        )
    numerator, denominator = match.groups()
    if denominator is not None and int(denominator) == 0:
        raise ContractViolation(f"Rational {text!r} has a zero denominator.")
    return Fraction(int(numerator), int(denominator or 1))


def format_rational(value: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` (integers as ``"p/1"``)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_point(text: str) -> tuple[Fraction, ...]:
    """Parse a comma separated list of rationals such as ``"1/4,1/4"``."""
    parts = [part for part in str(text).split(",") if part.strip()]
    if not parts:
        raise ContractViolation(f"Could not read a point from {text!r}.")
    return tuple(parse_rational(part) for part in parts)


def format_point(coords: Iterable[Fraction]) -> str:
    return "(" + ", ".join(str(Fraction(c)) for c in coords) + ")"


def get_output_basename(data: dict, stem: str) -> str:
    """Deterministic file name for a CLI result: slug of the command plus a
    short hash of its parameters."""
    dumped = json.dumps(data, sort_keys=True, default=str)
    data_hash = hashlib.sha256(dumped.encode("utf-8")).hexdigest()
    slug = slugify(stem, max_length=50, word_boundary=True, save_order=True)
    return f"{slug}-{data_hash[:8]}"


def write_output(text: str, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    logger.info(f"Saved {path}")
    return path
