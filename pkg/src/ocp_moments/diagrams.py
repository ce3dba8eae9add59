"""Legendre-series diagrammatics on the sphere.

Direct correlation c(theta) = -Gamma v(theta) + K(theta)^2 / 2, with the
chain-resummed kernel K, expanded in Legendre polynomials of cos(theta).
The total correlation follows from the Ornstein-Zernike equation degree by
degree.
"""

from __future__ import annotations

__all__ = [
    "DEFAULT_TOLERANCE",
    "MAX_SERIES_TERMS",
    "SeriesSum",
    "coulomb_v",
    "kernel_K",
    "legendre_product_coeff",
    "m1_closed",
    "m3_closed",
    "m1_series",
    "m2_series",
    "m3_series",
    "h_approx",
    "h_approx_exact",
    "h3_closed",
    "h_from_moments",
    "i2_from_h1",
    "i4_approx",
    "i6_approx",
    "percent_error",
]

import math
import logging
from fractions import Fraction
from dataclasses import dataclass
from functools import cache
from typing import Callable, Mapping

import numpy as np
from sympy import Rational
from sympy.physics.wigner import wigner_3j

from .error import ConvergenceError, PoleError

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-12
MAX_SERIES_TERMS = 10**7
CHUNK = 1 << 20

type Real = float | Fraction


@dataclass(frozen=True, slots=True)
class SeriesSum:
    value: float
    terms: int
    tail_bound: float


def coulomb_v(l: int) -> Fraction:
    if l < 1:
        raise ValueError(f"Coulomb coefficient undefined for {l=}")
    return Fraction(2 * l + 1, 2 * l * (l + 1))


def kernel_K(N: int, Gamma: int, l: int) -> Fraction:
    return Fraction(-Gamma * (2 * l + 1), 2 * l * (l + 1) + N * Gamma)


def _p1(l: int, lp: int) -> Fraction:
    if abs(l - lp) != 1:
        return Fraction(0)
    return Fraction(3 * max(l, lp), (2 * l + 1) * (2 * lp + 1))


def _p2(l: int, lp: int) -> Fraction:
    match lp - l:
        case 0:
            return Fraction(5 * l * (l + 1), (2 * l - 1) * (2 * l + 1) * (2 * l + 3))
        case 2 | -2:
            a = min(l, lp)
            return Fraction(5, 4) * Fraction(
                6 * (a + 1) * (a + 2), (2 * a + 1) * (2 * a + 3) * (2 * a + 5)
            )
        case _:
            return Fraction(0)


def _p3(l: int, lp: int) -> Fraction:
    match lp - l:
        case -3:
            inner = Fraction(
                5 * l * (l - 1) * (l - 2), (2 * l - 1) * (2 * l - 3) * (2 * l - 5)
            )
        case -1:
            inner = Fraction(3 * l * (l * l - 1), (2 * l - 3) * (2 * l + 3) * (2 * l - 1))
        case 3:
            inner = Fraction(
                5 * (l + 1) * (l + 2) * (l + 3), (2 * l + 3) * (2 * l + 5) * (2 * l + 7)
            )
        case 1:
            inner = Fraction(
                3 * (l + 1) * ((l + 1) ** 2 - 1), (2 * l - 1) * (2 * l + 5) * (2 * l + 3)
            )
        case _:
            return Fraction(0)
    return Fraction(7, 2 * (2 * l + 1)) * inner


@cache
def _p_wigner(l: int, lp: int, lpp: int) -> Fraction:
    w = Rational(wigner_3j(l, lp, lpp, 0, 0, 0) ** 2 * (2 * lpp + 1))
    return Fraction(int(w.p), int(w.q))


def legendre_product_coeff(l: int, lp: int, lpp: int) -> Fraction:
    """Coefficient of P_lpp in the expansion of P_l P_lp."""
    if min(l, lp, lpp) < 0:
        raise ValueError(f"negative degree in {(l, lp, lpp)}")
    match lpp:
        case 0:
            return Fraction(int(l == lp), 2 * l + 1)
        case 1:
            return _p1(l, lp)
        case 2:
            return _p2(l, lp)
        case 3:
            return _p3(l, lp)
        case _:
            return _p_wigner(l, lp, lpp)


def m1_closed(N: int, Gamma: int) -> Fraction:
    return Fraction(3 * Gamma, 2 * N)


def m3_closed(N: int, Gamma: int) -> Fraction:
    return Fraction(7 * (2 + 3 * N * Gamma) * Gamma, 2 * N * (12 + 3 * N * Gamma))


def _sum_series(
    term: Callable[[np.ndarray], np.ndarray], constant: float, tol: float, what: str
) -> SeriesSum:
    """Sum term(l) for l = 0..L with the tail sum_{l>L} C/l^3 <= C/(2 L^2) below tol."""
    L = max(2, math.ceil(math.sqrt(constant / (2 * tol))))
    if L > MAX_SERIES_TERMS:
        raise ConvergenceError(f"{what}: {L} terms needed for tolerance {tol:g}")

    partials = []
    for start in range(0, L + 1, CHUNK):
        l = np.arange(start, min(start + CHUNK, L + 1), dtype=np.float64)
        partials.append(float(np.sum(term(l))))

    tail = constant / (2 * L * L)
    logger.debug("%s: %d terms, tail bound %g", what, L + 1, tail)
    return SeriesSum(value=math.fsum(partials), terms=L + 1, tail_bound=tail)


def m1_series(N: int, Gamma: int, tol: float = DEFAULT_TOLERANCE) -> SeriesSum:
    x = N * Gamma
    g2 = Gamma * Gamma

    def term(l: np.ndarray) -> np.ndarray:
        return 6 * g2 * (l + 1) / ((2 * l * (l + 1) + x) * (2 * (l + 1) * (l + 2) + x))

    return _sum_series(term, 1.5 * g2, tol, f"m1 N={N} gamma={Gamma}")


def m2_series(N: int, Gamma: int, tol: float = DEFAULT_TOLERANCE) -> SeriesSum:
    x = N * Gamma
    g2 = Gamma * Gamma

    def term(l: np.ndarray) -> np.ndarray:
        a = 2 * l * (l + 1) + x
        first = 15 * (l + 1) * (l + 2) / (a * (2 * (l + 2) * (l + 3) + x) * (2 * l + 3))
        second = 5 * (2 * l + 1) * l * (l + 1) / (a * a * (2 * l - 1) * (2 * l + 3))
        return g2 * (first + second)

    return _sum_series(term, 2.7 * g2, tol, f"m2 N={N} gamma={Gamma}")


def m3_series(N: int, Gamma: int, tol: float = DEFAULT_TOLERANCE) -> SeriesSum:
    x = N * Gamma
    g2 = Gamma * Gamma

    def term(l: np.ndarray) -> np.ndarray:
        lead = (l + 1) * (l + 2) / ((2 * l + 5) * (2 * l * (l + 1) + x))
        inner = 3 * l / ((2 * (l + 1) * (l + 2) + x) * (2 * l - 1)) + 5 * (l + 3) / (
            (2 * (l + 3) * (l + 4) + x) * (2 * l + 3)
        )
        return 7 * g2 * lead * inner

    return _sum_series(term, 4.0 * g2, tol, f"m3 N={N} gamma={Gamma}")


def _oz(N: int, Gamma: int, l: int, c: Real) -> Real:
    denom = 1 - N * c / (2 * l + 1)
    if denom == 0:
        raise PoleError(
            f"Ornstein-Zernike denominator vanishes at {l=}",
            context=f"N={N} gamma={Gamma}",
        )
    return c / denom


def h_approx_exact(N: int, Gamma: int, l: int) -> Fraction:
    """h_l for the degrees whose watermelon coefficient has a closed form."""
    match l:
        case 1:
            m = m1_closed(N, Gamma)
        case 3:
            m = m3_closed(N, Gamma)
        case _:
            raise ValueError(f"no closed form for {l=}")
    return _oz(N, Gamma, l, -Gamma * coulomb_v(l) + m / 2)


def h_approx(N: int, Gamma: int, l: int, tol: float = DEFAULT_TOLERANCE) -> float:
    match l:
        case 1 | 3:
            return float(h_approx_exact(N, Gamma, l))
        case 2:
            m = m2_series(N, Gamma, tol).value
            return float(_oz(N, Gamma, l, -Gamma * float(coulomb_v(l)) + m / 2))
        case _:
            raise ValueError(f"h_approx defined for l in 1..3, got {l=}")


def h3_closed(N: int, Gamma: int) -> Fraction:
    A = -4 + N * (4 - 6 * Gamma) + N * N * Gamma
    return Fraction(
        -7 * A * Gamma,
        N * (96 + 4 * (7 * N - 1) * Gamma + (N - 6) * N * Gamma * Gamma),
    )


def h_from_moments(N: int, Gamma: int, l: int, moments: Mapping[int, Real]) -> Real:
    """h_l from the exact moments hat I_0, ..., hat I_2l (keyed by n)."""
    s = Fraction(N * Gamma)
    match l:
        case 1:
            bracket = moments[0] - 4 * moments[1] / s
        case 2:
            bracket = moments[0] - 12 * moments[1] / s + 24 * moments[2] / s**2
        case 3:
            bracket = (
                moments[0]
                - 24 * moments[1] / s
                + 120 * moments[2] / s**2
                - 160 * moments[3] / s**3
            )
        case _:
            raise ValueError(f"h_from_moments defined for l in 1..3, got {l=}")
    return (2 * l + 1) * bracket / N


def i2_from_h1(N: int, Gamma: int, h1: Real) -> Real:
    return Fraction(N * Gamma, 4) * (-1 - N * h1 / 3)


def i4_approx(N: int, Gamma: int, tol: float = DEFAULT_TOLERANCE) -> float:
    h2 = h_approx(N, Gamma, 2, tol)
    s = N * Gamma
    return s * s / 24 * (N * h2 / 5 + 1 + 12 / (Gamma - s - 4))


def i6_approx(N: int, Gamma: int, tol: float = DEFAULT_TOLERANCE) -> float:
    h2 = h_approx(N, Gamma, 2, tol)
    h3 = h_approx(N, Gamma, 3, tol)
    s = N * Gamma
    return s**3 * (
        -N * h3 / 1120 + N * h2 / 160 + 1 / 40 + 9 / (40 * (Gamma - s - 4))
    )


def percent_error(exact: Real, approx: Real) -> float | None:
    if exact == 0:
        return None
    return float(100 * abs((exact - approx) / exact))
