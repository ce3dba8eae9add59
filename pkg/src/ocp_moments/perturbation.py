"""First order in Gamma - 2 of the soft-disk density moments.

Everything is written in terms of the normalised double integral
R(k1, k2) = I(k1, k2) / (k1! k2!), the probability that a Gamma(k1+1)
variate exceeds an independent Gamma(k2+1) variate. It is dyadic:
R(0, k2) = 2^-(k2+1) and R(k1+1, k2) = R(k1, k2) + C(k1+k2+1, k2) 2^-(k1+k2+2).
"""

from __future__ import annotations

__all__ = [
    "FAST_PATH_THRESHOLD",
    "DEFAULT_PARTICLE_LIMIT",
    "CalITable",
    "MTilde",
    "calI",
    "calI_asymptotic",
    "m_tilde",
    "m_tilde_split",
    "m_tilde_limits",
    "m_moment_slope",
    "m_moment_linearized",
    "calJ_difference",
    "calJ_quadrature",
]

import math
import logging
from fractions import Fraction
from dataclasses import dataclass

import numpy as np
import scipy.integrate
import scipy.special

from .disk import m_gamma2_closed
from .error import ResourceLimitError
from .numeric import erfc, factorial, rising

logger = logging.getLogger(__name__)

FAST_PATH_THRESHOLD = 64
# The float path holds several (N+n) x (N+n) float64 matrices.
DEFAULT_PARTICLE_LIMIT = 2048


class CalITable:
    """Exact R(k1, k2) for 0 <= k1, k2 <= max_k.

    Only k1 <= k2 is stored; the rest follows from R(k1,k2) + R(k2,k1) = 1.
    """

    def __init__(self, max_k: int):
        self.max_k = max_k
        # _upper[k2][k1] for k1 <= k2
        self._upper: list[list[Fraction]] = []
        for k2 in range(max_k + 1):
            row = [Fraction(1, 2 ** (k2 + 1))]
            for k1 in range(k2):
                step = math.comb(k1 + k2 + 1, k2)
                row.append(row[-1] + Fraction(step, 2 ** (k1 + k2 + 2)))
            self._upper.append(row)

    def ratio(self, k1: int, k2: int) -> Fraction:
        if k1 <= k2:
            return self._upper[k2][k1]
        return 1 - self._upper[k1][k2]

    def value(self, k1: int, k2: int) -> Fraction:
        return self.ratio(k1, k2) * factorial(k1) * factorial(k2)


def calI(k1: int, k2: int) -> Fraction:
    """I(k1, k2) = int_{0 <= t2 < t1} exp(-t1-t2) t1^k1 t2^k2."""
    return sum(
        (
            Fraction(factorial(k2 + l) * factorial(k1), 2 ** (k2 + l + 1) * factorial(l))
            for l in range(k1 + 1)
        ),
        start=Fraction(0),
    )


def calI_asymptotic(k1: int, k2: int) -> float:
    """Large-argument approximation of I(k1, k2) / (k1! k2!)."""
    if k1 + k2 < 1:
        raise ValueError("asymptotic form needs k1 + k2 >= 1")
    return 0.5 * erfc((k2 - k1) / math.sqrt(2 * (k1 + k2)))


@dataclass(frozen=True, slots=True)
class MTilde:
    m1: Fraction | float
    m2: Fraction | float
    m3: Fraction | float

    @property
    def total(self) -> Fraction | float:
        return self.m1 + self.m2 + self.m3


def _check_args(N: int, n: int) -> None:
    if N < 1 or n < 0:
        raise ValueError(f"need N >= 1 and n >= 0, got {N=} {n=}")


def _m_tilde_exact(N: int, n: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """(m1a, m1b, m2, m3) in exact arithmetic."""
    table = CalITable(N - 1 + n)
    R = table.ratio
    F = [rising(k, n) for k in range(N)]
    G = [
        sum((Fraction(F[k], k + 1 + l) for l in range(n)), start=Fraction(0))
        for k in range(N)
    ]
    P = [
        sum((R(a, k2) for k2 in range(N)), start=Fraction(0)) for a in range(N + n)
    ]

    m1a = Fraction(0)
    for k in range(N):
        m1a += n * F[k] - k * G[k]

    m1b = Fraction(0)
    m3 = Fraction(0)
    for k1 in range(N):
        for k2 in range(k1 + 1, N):
            r = R(k1, k2)
            m1b += r * (G[k1] - G[k2])
            m3 += (
                F[k1] * (r - R(k1 + n, k2)) + F[k2] * (r - R(k1, k2 + n))
            ) / (k2 - k1)

    m2 = Fraction(0)
    for k1 in range(N):
        base = P[k1] - R(k1, k1)
        for l in range(n):
            shifted = P[k1 + l] - R(k1 + l, k1)
            m2 += Fraction(F[k1], k1 + 1 + l) * (shifted - base)

    scale = Fraction(1, N**n)
    return m1a * scale / 2, -m1b * scale / 2, -m2 * scale / 2, m3 * scale


def _ratio_matrix(max_k: int) -> np.ndarray:
    """R(k1, k2) in floating point, indexed [k1, k2]."""
    k = np.arange(max_k + 1, dtype=np.float64)
    j = k[:, None]
    k2 = k[None, :]
    steps = np.exp(
        scipy.special.gammaln(j + k2 + 2)
        - scipy.special.gammaln(j + 2)
        - scipy.special.gammaln(k2 + 1)
        - (j + k2 + 2) * math.log(2)
    )
    R = np.empty((max_k + 1, max_k + 1))
    R[0] = 2.0 ** -(k + 1)
    R[1:] = R[0] + np.cumsum(steps[:-1], axis=0)
    # The recurrence is accurate where R is small; use the reflection elsewhere.
    lower = np.tril_indices(max_k + 1, -1)
    R[lower] = 1 - R.T[lower]
    return R


def _m_tilde_float(N: int, n: int) -> tuple[float, float, float, float]:
    R = _ratio_matrix(N - 1 + n)
    k = np.arange(N, dtype=np.float64)
    F = np.exp(scipy.special.gammaln(k + n + 1) - scipy.special.gammaln(k + 1))
    inv = np.stack([1 / (k + 1 + l) for l in range(n)]) if n else np.zeros((0, N))
    G = (F * inv).sum(axis=0)

    m1a = float(np.sum(n * F - k * G))

    upper = np.triu(np.ones((N, N), dtype=bool), 1)
    Rk = R[:N, :N]
    m1b = float(np.sum(np.where(upper, Rk * (G[:, None] - G[None, :]), 0.0)))

    gap = np.where(upper, np.subtract.outer(k, k).T, 1.0)
    shifted1 = R[n : N + n, :N]
    shifted2 = R[:N, n : N + n]
    m3_terms = (F[:, None] * (Rk - shifted1) + F[None, :] * (Rk - shifted2)) / gap
    m3 = float(np.sum(np.where(upper, m3_terms, 0.0)))

    P = R[: N + n, :N].sum(axis=1)
    m2 = 0.0
    idx = np.arange(N)
    base = P[:N] - R[idx, idx]
    for l in range(n):
        shifted = P[l : N + l] - R[idx + l, idx]
        m2 += float(np.sum(F / (k + 1 + l) * (shifted - base)))

    scale = float(N) ** -n
    return m1a * scale / 2, -m1b * scale / 2, -m2 * scale / 2, m3 * scale


def _m_tilde_parts(
    N: int, n: int, exact: bool | None, particle_limit: int = DEFAULT_PARTICLE_LIMIT
) -> tuple:
    _check_args(N, n)
    if N > particle_limit:
        raise ResourceLimitError(
            f"N={N} exceeds the particle limit {particle_limit}", context=f"N={N} n={n}"
        )
    if exact is None:
        exact = N <= FAST_PATH_THRESHOLD
    if exact:
        return _m_tilde_exact(N, n)
    logger.info("N=%d n=%d: floating-point m-tilde sums", N, n)
    return _m_tilde_float(N, n)


def m_tilde(
    N: int,
    n: int,
    exact: bool | None = None,
    particle_limit: int = DEFAULT_PARTICLE_LIMIT,
) -> MTilde:
    """Coefficients of -(Gamma-2) in the density moment M_N.

    Exact rationals up to FAST_PATH_THRESHOLD particles, float64 beyond,
    where the sums carry relative rounding errors of order 1e-12.
    N above particle_limit raises ResourceLimitError.
    """
    m1a, m1b, m2, m3 = _m_tilde_parts(N, n, exact, particle_limit)
    return MTilde(m1=m1a + m1b, m2=m2, m3=m3)


def m_tilde_split(
    N: int, n: int, exact: bool | None = None
) -> tuple[Fraction | float, Fraction | float]:
    m1a, m1b, _, _ = _m_tilde_parts(N, n, exact)
    return m1a, m1b


def m_tilde_limits(n: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Large-N values of (m1a, m1b, m2, m3)."""
    return (
        Fraction(n + 1, 4),
        Fraction(n - 1, 4),
        -Fraction(n - 1, 4),
        Fraction(n - 1, 4),
    )


def m_moment_slope(N: int, n: int, exact: bool | None = None) -> Fraction | float:
    """d M_N / d Gamma at Gamma = 2."""
    return -m_tilde(N, n, exact).total


def m_moment_linearized(N: int, n: int, Gamma: float | Fraction) -> Fraction | float:
    if Gamma == 2:
        return m_gamma2_closed(N, n)
    return m_gamma2_closed(N, n) + (Gamma - 2) * m_moment_slope(N, n)


def calJ_difference(k1: int, k2: int, n: int) -> Fraction:
    """J(k1+n, k2) - (k1+n)!/k1! J(k1, k2), reduced to I."""
    return sum(
        (
            calI(k1 + l, k2) * Fraction(factorial(k1 + n), factorial(k1 + l + 1))
            for l in range(n)
        ),
        start=Fraction(0),
    )


def _log_weighted(k_outer: int, k_inner: int) -> float:
    """int_0^inf e^-t t^k_outer / k_outer! log(t) P(k_inner + 1, t) dt"""

    def integrand(t: float) -> float:
        if t == 0.0:
            return 0.0
        density = math.exp(
            scipy.special.xlogy(k_outer, t) - t - scipy.special.gammaln(k_outer + 1)
        )
        return density * math.log(t) * scipy.special.gammainc(k_inner + 1, t)

    head, _ = scipy.integrate.quad(integrand, 0.0, 1.0, epsabs=0.0, epsrel=1e-13, limit=200)
    tail, _ = scipy.integrate.quad(
        integrand, 1.0, np.inf, epsabs=0.0, epsrel=1e-13, limit=400
    )
    return head + tail


def calJ_quadrature(k1: int, k2: int) -> float:
    """J(k1, k2) = int int e^(-t1-t2) t1^k1 t2^k2 log max(t1, t2), numerically."""
    scale = float(factorial(k1) * factorial(k2))
    return scale * (_log_weighted(k1, k2) + _log_weighted(k2, k1))
