"""Exact invariant checks."""

from __future__ import annotations

__all__ = [
    "CheckResult",
    "oracle_applicable",
    "check_table",
    "check_oracle",
    "check_perturbation",
    "check_evaluation_order",
    "run_suite",
]

import logging
from fractions import Fraction
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable

from .cache import cached_expand
from .disk import disk_sums, m_first_exact, m_gamma2_closed
from .expansion import CoefficientTable, brute_force_expand, vanishing_sum
from .models import PlasmaParams
from .numeric import factorial
from .partitions import (
    DEFAULT_MEMBER_LIMIT,
    AdmissibleSet,
    Kind,
    antichain_levels,
    enumerate_admissible,
    squeeze_graph,
)
from .perturbation import CalITable, m_tilde
from .sphere import (
    density_constancy_check,
    i_hat2_exact,
    i_hat_from_sums,
    i_hat_gamma2_closed,
    partition_identity_gap,
    sphere_sums,
)

logger = logging.getLogger(__name__)

GAMMA2_MAX_N = 8
GAMMA2_MAX_ORDER = 4


@dataclass(frozen=True, slots=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _equal(name: str, got: Fraction | int, expected: Fraction | int) -> CheckResult:
    if got == expected:
        return CheckResult(name, True)
    return CheckResult(name, False, f"got {got}, expected {expected}")


def oracle_applicable(params: PlasmaParams) -> bool:
    """Sizes at which the brute-force expansion stays cheap."""
    match params.Gamma:
        case 2:
            return params.N <= 6
        case 4 | 6:
            return params.N <= 5
        case 8:
            return params.N <= 4
        case _:
            return False


def check_table(table: CoefficientTable) -> list[CheckResult]:
    params = table.params
    label = params.label
    N, Gamma = params.N, params.Gamma

    ret = [
        _equal(f"{label}: normalisation", table[params.top], 1),
        _equal(f"{label}: partition identity", partition_identity_gap(table), 0),
        _equal(f"{label}: density constancy", density_constancy_check(table), 0),
    ]
    if params.kind is Kind.SYMMETRIC:
        ret.append(
            _equal(f"{label}: vanishing at equal arguments", vanishing_sum(table), 0)
        )

    closed = Gamma == 2 and N <= GAMMA2_MAX_N
    ns = list(range(1, GAMMA2_MAX_ORDER + 1)) if closed else [1]
    sphere = sphere_sums(table, ns)
    disk = disk_sums(table, [0, *ns])

    ret.append(
        _equal(f"{label}: sum rule", i_hat_from_sums(sphere, 1), i_hat2_exact(N, Gamma))
    )
    ret.append(_equal(f"{label}: disk normalisation", disk.m_moment(0), N))
    ret.append(
        _equal(f"{label}: disk first moment", disk.m_moment(1), m_first_exact(N, Gamma))
    )

    if closed:
        for n in ns:
            ret.append(
                _equal(
                    f"{label}: sphere closed form n={n}",
                    i_hat_from_sums(sphere, n),
                    i_hat_gamma2_closed(N, n),
                )
            )
            ret.append(
                _equal(
                    f"{label}: disk closed form n={n}",
                    disk.m_moment(n),
                    m_gamma2_closed(N, n),
                )
            )
    return ret


def check_oracle(table: CoefficientTable) -> CheckResult:
    name = f"{table.label}: oracle magnitudes"
    expected = brute_force_expand(table.params).magnitudes()
    got = table.magnitudes()
    if expected == got:
        return CheckResult(name, True)
    differing = set(expected.items()) ^ set(got.items())
    return CheckResult(name, False, f"{len(differing)} differing entries")


def check_evaluation_order(aset: AdmissibleSet) -> CheckResult:
    """Check the member order the recursion walks against the squeeze graph."""
    name = f"N={aset.N} gamma={2 * aset.half_gamma}: evaluation order"
    index = aset.index
    backward = [
        (source, mu)
        for source, mu in squeeze_graph(aset).edges
        if index[source] >= index[mu]
    ]
    if backward:
        source, mu = backward[0]
        return CheckResult(name, False, f"{mu} is evaluated before {source}")

    levels = antichain_levels(aset)
    if sum(map(len, levels)) != len(aset):
        return CheckResult(name, False, "squeeze levels do not cover the set")
    return CheckResult(name, True, f"{len(levels)} levels")


def check_perturbation(max_k: int = 40, max_N: int = 16) -> list[CheckResult]:
    table = CalITable(max_k)
    symmetric = all(
        table.ratio(k1, k2) + table.ratio(k2, k1) == 1
        for k1 in range(max_k + 1)
        for k2 in range(max_k + 1)
    )
    recurrence = all(
        table.value(k1 + 1, k2) - (k1 + 1) * table.value(k1, k2)
        == Fraction(factorial(k1 + k2 + 1), 2 ** (k1 + k2 + 2))
        for k1 in range(max_k)
        for k2 in range(max_k + 1)
    )
    ret = [
        CheckResult(f"I table symmetry k<={max_k}", symmetric),
        CheckResult(f"I table recurrence k<={max_k}", recurrence),
    ]

    for N in range(1, max_N + 1):
        ret.append(_equal(f"m1 N={N} n=1", m_tilde(N, 1, exact=True).m1, Fraction(1, 2)))
        for n in range(4):
            mt = m_tilde(N, n, exact=True)
            ret.append(_equal(f"m2+m3 N={N} n={n}", mt.m2 + mt.m3, 0))
    return ret


def run_suite(
    Ns: Iterable[int],
    gammas: Iterable[int],
    cache_dir: Path,
    member_limit: int = DEFAULT_MEMBER_LIMIT,
    progress: Callable[[str], None] | None = None,
) -> list[CheckResult]:
    ret: list[CheckResult] = []
    for Gamma in gammas:
        for N in Ns:
            params = PlasmaParams(N=N, Gamma=Gamma)
            if progress is not None:
                progress(params.label)
            table, _ = cached_expand(params, cache_dir, member_limit)
            ret.extend(check_table(table))
            ret.append(
                check_evaluation_order(
                    enumerate_admissible(N, params.half_gamma, member_limit)
                )
            )
            if oracle_applicable(params):
                ret.append(check_oracle(table))

    ret.extend(check_perturbation())
    logger.info("%d checks, %d failed", len(ret), sum(not r.passed for r in ret))
    return ret
