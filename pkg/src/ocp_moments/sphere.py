"""Observables of the plasma on a sphere."""

from __future__ import annotations

__all__ = [
    "SphereSums",
    "sphere_sums",
    "z_sphere",
    "i_hat",
    "i_hat_many",
    "i_hat_from_sums",
    "i_hat2_exact",
    "i_hat_gamma2_closed",
    "density_constancy_check",
    "partition_identity_gap",
    "thermo_reference",
    "i_hat2_series",
    "i_hat_gamma2_series",
    "complete_homogeneous",
]

import logging
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterable

from .error import context_error_attributer
from .expansion import CoefficientTable
from .models import MomentRecord, PlasmaParams
from .numeric import factorial, rising

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SphereSums:
    """Partition sums scaled by N! so that every term is an integer.

    `restricted` runs over partitions with a vanishing last part, with the
    product taken over the first N-1 parts only. `moments[n]` adds the
    weight sum_k (mu_k+n)!/mu_k! over the same N-1 parts.
    """

    params: PlasmaParams
    z_scaled: int
    restricted: int
    moments: dict[int, int] = field(default_factory=dict)

    @property
    def z_sphere(self) -> Fraction:
        return Fraction(self.z_scaled, factorial(self.params.N))

    @property
    def label(self) -> str:
        return self.params.label


def _weight(table: CoefficientTable, c: int, mu) -> int:
    return c * c * (factorial(table.params.N) // mu.multiplicity_factorial)


@context_error_attributer
def sphere_sums(table: CoefficientTable, ns: Iterable[int] = ()) -> SphereSums:
    params = table.params
    K = params.K
    ns = sorted(set(ns))

    z_scaled = 0
    restricted = 0
    moments = dict.fromkeys(ns, 0)
    for mu, c in table.items():
        w = _weight(table, c, mu)
        prod = 1
        for part in mu[:-1]:
            prod *= factorial(part) * factorial(K - part)
        last = mu[-1]
        z_scaled += w * prod * factorial(last) * factorial(K - last)

        if last == 0:
            term = w * prod
            restricted += term
            for n in ns:
                moments[n] += term * sum(rising(part, n) for part in mu[:-1])

    return SphereSums(params=params, z_scaled=z_scaled, restricted=restricted, moments=moments)


def z_sphere(table: CoefficientTable) -> Fraction:
    return sphere_sums(table).z_sphere


def i_hat_from_sums(sums: SphereSums, n: int) -> Fraction:
    params = sums.params
    N, K = params.N, params.K
    bracket = Fraction(
        factorial(K + 1) ** 2 * sums.moments[n],
        N * factorial(K + 1 + n) * sums.z_scaled,
    ) - Fraction(N, n + 1)
    return Fraction(N * params.Gamma, 2) ** n * bracket


def i_hat(table: CoefficientTable, n: int) -> MomentRecord:
    """The 2n-th moment of the truncated pair correlation, in units of the
    background density, between the north pole and the rest of the sphere.

    The bracket is multiplied by (N Gamma / 2)^n.
    """
    if n < 0:
        raise ValueError(f"moment order must be nonnegative, got {n=}")
    sums = sphere_sums(table, [n])
    return MomentRecord.of(table.params, n, i_hat_from_sums(sums, n))


def i_hat_many(table: CoefficientTable, ns: Iterable[int]) -> list[MomentRecord]:
    ns = list(ns)
    sums = sphere_sums(table, ns)
    return [MomentRecord.of(table.params, n, i_hat_from_sums(sums, n)) for n in ns]


def i_hat2_exact(N: int, Gamma: int) -> Fraction:
    return Fraction(N * Gamma, Gamma - N * Gamma - 4)


def i_hat_gamma2_closed(N: int, n: int) -> Fraction:
    return -Fraction(N**n * factorial(n) * factorial(N), factorial(N + n))


@context_error_attributer
def density_constancy_check(table: CoefficientTable) -> Fraction:
    """Largest coefficient gap, in powers of x^2, of the uniform density identity.

    N (1+x^2)^K Z / (K+1)! = sum_mu (c^2/prod m_i!) prod_l mu_l!(K-mu_l)!
                             sum_k x^(2 mu_k) / (mu_k! (K-mu_k)!)
    """
    params = table.params
    N, K = params.N, params.K

    rhs = [Fraction(0)] * (K + 1)
    z_scaled = 0
    for mu, c in table.items():
        w = _weight(table, c, mu)
        prod = 1
        for part in mu:
            prod *= factorial(part) * factorial(K - part)
        z_scaled += w * prod
        for part, mult in mu.frequencies.items():
            rhs[part] += Fraction(w * prod * mult, factorial(part) * factorial(K - part))

    gap = Fraction(0)
    for j in range(K + 1):
        binom = factorial(K) // (factorial(j) * factorial(K - j))
        lhs = Fraction(N * binom * z_scaled, factorial(K + 1))
        gap = max(gap, abs(lhs - rhs[j]))

    return gap / factorial(N)


def partition_identity_gap(table: CoefficientTable) -> Fraction:
    """N Z - (K+1)! * restricted sum, zero for every valid table."""
    sums = sphere_sums(table)
    K = table.params.K
    return Fraction(
        table.params.N * sums.z_scaled - factorial(K + 1) * sums.restricted,
        factorial(table.params.N),
    )


def thermo_reference(Gamma: int) -> tuple[Fraction, Fraction]:
    """Bulk values of hat I_4 and hat I_6."""
    return Fraction(Gamma - 4), Fraction(3, 4) * (Gamma - 6) * (8 - 3 * Gamma)


def i_hat2_series(N: int, Gamma: int, order: int) -> Fraction:
    x = Fraction(4 - Gamma, Gamma * N)
    return -sum((-x) ** k for k in range(order + 1))


def complete_homogeneous(xs: Iterable[int], order: int) -> list[int]:
    """h_0, ..., h_order of the given variables."""
    h = [1] + [0] * order
    for x in xs:
        for k in range(1, order + 1):
            h[k] += x * h[k - 1]
    return h


def i_hat_gamma2_series(N: int, n: int, order: int) -> Fraction:
    """Large-N expansion of the closed form at Gamma = 2, up to N^-order."""
    h = complete_homogeneous(range(1, n + 1), order)
    return -factorial(n) * sum(
        (Fraction((-1) ** k * h[k], N**k) for k in range(order + 1)), start=Fraction(0)
    )
