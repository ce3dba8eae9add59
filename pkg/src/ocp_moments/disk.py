"""Observables of the plasma in a soft disk.

Units: disk radius R = 1, so that pi rho_b = N.
"""

from __future__ import annotations

__all__ = [
    "DiskSums",
    "disk_sums",
    "z_soft",
    "m_moment",
    "m_moments",
    "m_first_exact",
    "m_gamma2_closed",
    "m_gamma2_series",
    "elementary_symmetric",
    "char_fn_r2",
    "log_char_fn_r2",
    "cumulant_r2",
    "cumulant_r2_fd",
    "mean_o1_prediction",
    "mu_tilde_histogram",
]

import logging
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .error import context_error_attributer
from .expansion import CoefficientTable
from .models import DiskMoment, PlasmaParams
from .numeric import factorial, rising

logger = logging.getLogger(__name__)

FD_STEP = 1e-4


@dataclass(frozen=True)
class DiskSums:
    """Soft-disk partition sums scaled by N!."""

    params: PlasmaParams
    z_scaled: int
    moments: dict[int, int] = field(default_factory=dict)

    @property
    def z_soft(self) -> Fraction:
        return Fraction(self.z_scaled, factorial(self.params.N))

    @property
    def label(self) -> str:
        return self.params.label

    def m_moment(self, n: int) -> Fraction:
        params = self.params
        scale = Fraction(params.N * params.Gamma, 2) ** n
        return Fraction(self.moments[n], self.z_scaled) / scale


@context_error_attributer
def disk_sums(table: CoefficientTable, ns: Iterable[int] = ()) -> DiskSums:
    N = table.params.N
    ns = sorted(set(ns))

    z_scaled = 0
    moments = dict.fromkeys(ns, 0)
    for mu, c in table.items():
        term = c * c * (factorial(N) // mu.multiplicity_factorial)
        for part in mu:
            term *= factorial(part)
        z_scaled += term
        for n in ns:
            moments[n] += term * sum(rising(part, n) for part in mu)

    return DiskSums(params=table.params, z_scaled=z_scaled, moments=moments)


def z_soft(table: CoefficientTable) -> Fraction:
    return disk_sums(table).z_soft


def m_moment(table: CoefficientTable, n: int) -> DiskMoment:
    """Moment sum_k <|r_k|^2n> of the density."""
    if n < 0:
        raise ValueError(f"moment order must be nonnegative, got {n=}")
    return DiskMoment.of(table.params, n, disk_sums(table, [n]).m_moment(n))


def m_moments(table: CoefficientTable, ns: Iterable[int]) -> list[DiskMoment]:
    ns = list(ns)
    sums = disk_sums(table, ns)
    return [DiskMoment.of(table.params, n, sums.m_moment(n)) for n in ns]


def m_first_exact(N: int, Gamma: int) -> Fraction:
    return Fraction(N, 2) + Fraction(2, Gamma) * (1 - Fraction(Gamma, 4))


def m_gamma2_closed(N: int, n: int) -> Fraction:
    return Fraction(N * factorial(N + n), N**n * (1 + n) * factorial(N))


def elementary_symmetric(xs: Iterable[int], order: int) -> list[int]:
    e = [1] + [0] * order
    for x in xs:
        for k in range(order, 0, -1):
            e[k] += x * e[k - 1]
    return e


def m_gamma2_series(N: int, n: int, order: int) -> Fraction:
    """Large-N expansion at Gamma = 2, keeping terms down to N^(1-order)."""
    e = elementary_symmetric(range(1, n + 1), order)
    return sum(
        (Fraction(e[k]) * Fraction(N) ** (1 - k) for k in range(order + 1)),
        start=Fraction(0),
    ) / (n + 1)


def _nu(N: int, Gamma: int) -> Fraction:
    return N + Fraction(Gamma * N * (N - 1), 4)


def log_char_fn_r2(N: int, Gamma: int, k: float | np.ndarray) -> complex | np.ndarray:
    """Principal log of E[exp(i k sum_j |r_j|^2)]."""
    nu = float(_nu(N, Gamma))
    return -nu * np.log(1 - 2j * np.asarray(k) / (Gamma * N))


def char_fn_r2(N: int, Gamma: int, k: float | np.ndarray) -> complex | np.ndarray:
    return np.exp(log_char_fn_r2(N, Gamma, k))


def cumulant_r2(N: int, Gamma: int, order: int) -> Fraction:
    """Exact cumulant of sum_j |r_j|^2, a Gamma distribution."""
    if order < 1:
        raise ValueError(f"cumulant order must be positive, got {order=}")
    return _nu(N, Gamma) * factorial(order - 1) * Fraction(2, Gamma * N) ** order


def cumulant_r2_fd(N: int, Gamma: int, order: int, h: float = FD_STEP) -> float:
    """First or second cumulant by Richardson-refined central differences."""

    def f(k: float) -> complex:
        return complex(log_char_fn_r2(N, Gamma, k))

    match order:
        case 1:

            def diff(step: float) -> complex:
                return (f(step) - f(-step)) / (2 * step)

            factor = -1j
        case 2:

            def diff(step: float) -> complex:
                return (f(step) - 2 * f(0.0) + f(-step)) / step**2

            factor = -1
        case _ as unexpected:
            raise ValueError(f"{unexpected=}")

    refined = (4 * diff(h / 2) - diff(h)) / 3
    return (factor * refined).real


def mean_o1_prediction(N: int, Gamma: int, m: int) -> Fraction:
    """Leading and O(1) terms of the large-N moment of |r|^m."""
    return Fraction(2 * N, m + 2) + Fraction(m, Gamma) * (1 - Fraction(Gamma, 4))


def mu_tilde_histogram(
    table: CoefficientTable, bins: int = 20
) -> tuple[np.ndarray, np.ndarray]:
    """Weighted histogram of 2 mu_l / (N Gamma) over the disk ensemble of partitions."""
    params = table.params
    sums = disk_sums(table)
    scale = 2 / (params.N * params.Gamma)

    values = []
    weights = []
    for mu, c in table.items():
        term = c * c * (factorial(params.N) // mu.multiplicity_factorial)
        for part in mu:
            term *= factorial(part)
        w = float(Fraction(term, sums.z_scaled))
        for part in mu:
            values.append(part * scale)
            weights.append(w)

    return np.histogram(values, bins=bins, range=(0.0, 1.0), weights=weights, density=True)
