"""Exact arithmetic helpers."""

from __future__ import annotations

__all__ = [
    "FactorialTable",
    "factorial",
    "rising",
    "erfc",
    "Origin",
    "DecimalValue",
    "render_decimal",
    "to_fraction",
]

import math
import threading
import decimal
from enum import StrEnum
from fractions import Fraction
from dataclasses import dataclass

import scipy.special

DECIMAL_DIGITS = 15


class FactorialTable:
    """Growable table of n!.

    Lookups of already computed entries take no lock; growth is serialized.
    """

    def __init__(self) -> None:
        self._values: list[int] = [1]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._values)

    def _grow(self, n: int) -> None:
        with self._lock:
            values = self._values
            acc = values[-1]
            for k in range(len(values), n + 1):
                acc *= k
                values.append(acc)

    def __call__(self, n: int) -> int:
        if n < 0:
            raise ValueError(f"factorial of negative number {n=}")
        if n >= len(self._values):
            self._grow(n)
        return self._values[n]


factorial = FactorialTable()


def rising(k: int, n: int) -> int:
    """(k+n)!/k!"""
    return math.prod(range(k + 1, k + n + 1))


def erfc(x: float) -> float:
    return float(scipy.special.erfc(x))


class Origin(StrEnum):
    EXACT_RATIONAL = "exact-rational"
    SERIES_TRUNCATION = "series-truncation"


@dataclass(frozen=True, slots=True)
class DecimalValue:
    value: float
    text: str
    origin: Origin

    def __str__(self) -> str:
        return self.text


def render_decimal(
    value: Fraction | int | float, origin: Origin | None = None
) -> DecimalValue:
    """Render a value with 15 significant digits, trailing zeros stripped."""
    if origin is None:
        origin = (
            Origin.SERIES_TRUNCATION
            if isinstance(value, float)
            else Origin.EXACT_RATIONAL
        )

    with decimal.localcontext(prec=DECIMAL_DIGITS):
        match value:
            case Fraction():
                d = decimal.Decimal(value.numerator) / decimal.Decimal(
                    value.denominator
                )
            case int() | float():
                d = +decimal.Decimal(value)
            case _ as unexpected:
                raise TypeError(f"{unexpected=}")

        if d.is_zero():
            text = "0"
        else:
            text = format(d.normalize(), "f")

    return DecimalValue(value=float(value), text=text, origin=origin)


def to_fraction(value: Fraction | int | float | str) -> Fraction:
    """Exact rational reading of a table value.

    Floats go through their shortest repr, so 0.1 becomes 1/10.
    """
    match value:
        case Fraction() | int():
            return Fraction(value)
        case float():
            if not math.isfinite(value):
                raise ValueError(f"non-finite value {value!r}")
            return Fraction(repr(value))
        case str():
            return Fraction(value.strip())
        case _ as unexpected:
            raise TypeError(f"{unexpected=}")
