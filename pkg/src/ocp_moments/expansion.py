"""Coefficients of Vandermonde powers in monomial bases."""

from __future__ import annotations

__all__ = [
    "BRUTE_FORCE_MAX_N",
    "BRUTE_FORCE_MAX_GAMMA",
    "CHECKSUM_MODULUS",
    "CoefficientTable",
    "eigenvalue_symmetric",
    "eigenvalue_antisymmetric",
    "expand",
    "brute_force_expand",
    "vanishing_sum",
]

import logging
from fractions import Fraction
from dataclasses import dataclass
from typing import Iterator, Mapping

from sympy import Poly, symbols

from .error import (
    EngineError,
    DegenerateEigenvalueError,
    ResourceLimitError,
    context_error_attributer,
)
from .models import PlasmaParams
from .numeric import factorial
from .partitions import (
    DEFAULT_MEMBER_LIMIT,
    Kind,
    Partition,
    enumerate_admissible,
    raising_moves,
)

logger = logging.getLogger(__name__)

BRUTE_FORCE_MAX_N = 6
BRUTE_FORCE_MAX_GAMMA = 8
CHECKSUM_MODULUS = 2**61 - 1


@dataclass(frozen=True)
class CoefficientTable:
    """Nonzero coefficients c_mu, in dominance-compatible order."""

    params: PlasmaParams
    entries: Mapping[Partition, int]

    @property
    def top(self) -> Partition:
        return self.params.top

    @property
    def label(self) -> str:
        return self.params.label

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, mu: Partition) -> int:
        return self.entries.get(mu, 0)

    def items(self) -> Iterator[tuple[Partition, int]]:
        return iter(self.entries.items())

    def checksum(self) -> int:
        return sum(abs(c) for c in self.entries.values()) % CHECKSUM_MODULUS

    def magnitudes(self) -> dict[Partition, int]:
        return {mu: abs(c) for mu, c in self.entries.items()}


def eigenvalue_symmetric(kappa: Partition, alpha: Fraction) -> Fraction:
    two_over_alpha = 2 / Fraction(alpha)
    return sum(
        (k * (k - 1 - two_over_alpha * i) for i, k in enumerate(kappa)),
        start=Fraction(0),
    )


def eigenvalue_antisymmetric(kappa: Partition, alpha: Fraction) -> Fraction:
    shift = 1 - 1 / Fraction(alpha)
    return sum(
        (k * (k + 2 * i * shift) for i, k in enumerate(kappa, start=1)),
        start=Fraction(0),
    )


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise EngineError(f"{what} is not an integer: {value}")
    return value.numerator


@context_error_attributer
def expand(
    params: PlasmaParams, member_limit: int = DEFAULT_MEMBER_LIMIT
) -> CoefficientTable:
    """Exact coefficients by the Jack eigenvalue recursion.

    Partitions are visited in reverse lexicographic order, so every
    squeeze predecessor is finished before it is needed.
    """
    aset = enumerate_admissible(params.N, params.half_gamma, member_limit)
    kind = params.kind
    logger.info("%s: expanding over %d partitions", params.label, aset.count)

    match kind:
        case Kind.SYMMETRIC:
            eigenvalue = eigenvalue_symmetric
        case Kind.ANTISYMMETRIC:
            eigenvalue = eigenvalue_antisymmetric

    alpha = params.eigen_alpha
    two_over_alpha = params.two_over_alpha
    top = aset.top
    e_top = _integral(eigenvalue(top, alpha), f"eigenvalue of {top}")
    largest = top[0]
    strict = kind.strict

    entries: dict[Partition, int] = {top: 1}
    for rho in aset.members[1:]:
        total = 0
        for move in raising_moves(rho, largest, strict):
            c = entries.get(move.source)
            if c is None:
                continue
            i, j = move.indices
            match kind:
                case Kind.SYMMETRIC:
                    prefactor = rho[i - 1] - rho[j - 1] + 2 * move.r
                case Kind.ANTISYMMETRIC:
                    prefactor = (rho[i - 1] - rho[j - 1]) * move.sign
            total += prefactor * c

        if total == 0:
            continue

        e_rho = _integral(eigenvalue(rho, alpha), f"eigenvalue of {rho}")
        if e_top == e_rho:
            raise DegenerateEigenvalueError(
                f"e(kappa) = e(rho) for kappa={top}, rho={rho}, alpha={alpha}"
            )

        c = Fraction(two_over_alpha * total, e_top - e_rho)
        entries[rho] = _integral(c, f"coefficient of {rho}")

    logger.info("%s: %d nonzero coefficients", params.label, len(entries))
    return CoefficientTable(params=params, entries=entries)


@context_error_attributer
def brute_force_expand(
    params: PlasmaParams,
    max_N: int = BRUTE_FORCE_MAX_N,
    max_gamma: int = BRUTE_FORCE_MAX_GAMMA,
) -> CoefficientTable:
    """Oracle: multiply out the product and read off sorted exponents."""
    if params.N > max_N or params.Gamma > max_gamma:
        raise ResourceLimitError(
            f"brute force limited to N <= {max_N} and gamma <= {max_gamma}"
        )

    N = params.N
    z = symbols(f"z1:{N + 1}")
    poly = Poly(1, *z)
    for k in range(N):
        for j in range(k):
            poly *= Poly((z[k] - z[j]) ** params.half_gamma, *z)

    strict = params.kind.strict
    collected: dict[Partition, int] = {}
    for monom, coeff in poly.terms():
        if any(a < b for a, b in zip(monom, monom[1:])):
            continue
        mu = Partition.trusted(monom)
        if strict and not mu.is_strict:
            continue
        collected[mu] = int(coeff)

    top = params.top
    lead = collected.get(top, 0)
    if lead not in (1, -1):
        raise EngineError(f"leading coefficient {lead} at {top}")

    order = sorted(collected, reverse=True)
    entries = {mu: collected[mu] * lead for mu in order}
    return CoefficientTable(params=params, entries=entries)


def vanishing_sum(table: CoefficientTable) -> int:
    """Sum of c_mu m_mu(1, ..., 1), zero for the symmetric kind."""
    N = table.params.N
    return sum(
        c * (factorial(N) // mu.multiplicity_factorial)
        for mu, c in table.items()
    )
