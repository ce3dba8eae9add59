"""Partitions, dominance order and squeezing moves."""

from __future__ import annotations

__all__ = [
    "DEFAULT_MEMBER_LIMIT",
    "Kind",
    "Partition",
    "AdmissibleSet",
    "Move",
    "dominance_leq",
    "staircase",
    "enumerate_admissible",
    "squeeze_predecessors",
    "raising_moves",
    "squeeze_graph",
    "antichain_levels",
]

import math
import logging
from enum import StrEnum
from collections import Counter
from functools import cached_property
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator, NamedTuple, Self

import networkx as nx

from .error import WeightMismatchError, ResourceLimitError
from .numeric import factorial

logger = logging.getLogger(__name__)

DEFAULT_MEMBER_LIMIT = 50_000_000


class Kind(StrEnum):
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"

    @classmethod
    def of(cls, half_gamma: int) -> Self:
        return cls.SYMMETRIC if half_gamma % 2 == 0 else cls.ANTISYMMETRIC

    @property
    def strict(self) -> bool:
        return self is Kind.ANTISYMMETRIC


class Partition(tuple[int, ...]):
    """Nonincreasing, zero padded sequence of nonnegative parts."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int]) -> Self:
        parts = tuple(parts)
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts are not nonincreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"negative part: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def trusted(cls, parts: Iterable[int]) -> Self:
        return tuple.__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def frequencies(self) -> dict[int, int]:
        return dict(Counter(self))

    @property
    def multiplicity_factorial(self) -> int:
        return math.prod(factorial(m) for m in Counter(self).values())

    @property
    def is_strict(self) -> bool:
        return all(a > b for a, b in zip(self, self[1:]))

    def __str__(self) -> str:
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"


def staircase(N: int, c: int) -> Partition:
    """c times (N-1, N-2, ..., 0)."""
    return Partition.trusted(c * (N - 1 - i) for i in range(N))


def dominance_leq(a: Partition, b: Partition) -> bool:
    if len(a) != len(b):
        raise WeightMismatchError(f"length {len(a)} != {len(b)}: {a} vs {b}")
    if a.weight != b.weight:
        raise WeightMismatchError(f"weight {a.weight} != {b.weight}: {a} vs {b}")

    return all(x <= y for x, y in zip(accumulate(a), accumulate(b)))


@dataclass(frozen=True)
class AdmissibleSet:
    N: int
    half_gamma: int
    kind: Kind
    members: tuple[Partition, ...]

    @property
    def top(self) -> Partition:
        return staircase(self.N, self.half_gamma)

    @property
    def count(self) -> int:
        return len(self.members)

    @cached_property
    def index(self) -> dict[Partition, int]:
        return {mu: i for i, mu in enumerate(self.members)}

    def __contains__(self, mu: object) -> bool:
        return mu in self.index

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


def _descend(
    N: int,
    strict: bool,
    top_prefix: list[int],
) -> Iterator[tuple[int, ...]]:
    parts = [0] * N

    def rec(k: int, remaining: int, cap: int, prefix: int) -> Iterator[tuple[int, ...]]:
        if k == N:
            yield tuple(parts)
            return

        m = N - k - 1
        if strict:
            lo = max(m, -(-(remaining + m * (m + 1) // 2) // (m + 1)))
            hi = min(cap, remaining - m * (m - 1) // 2)
        else:
            lo = -(-remaining // (m + 1))
            hi = min(cap, remaining)
        hi = min(hi, top_prefix[k] - prefix)

        for v in range(hi, lo - 1, -1):
            parts[k] = v
            yield from rec(k + 1, remaining - v, v - 1 if strict else v, prefix + v)

    top_weight = top_prefix[-1] if top_prefix else 0
    yield from rec(0, top_weight, top_prefix[0] if top_prefix else 0, 0)


def enumerate_admissible(
    N: int, half_gamma: int, member_limit: int = DEFAULT_MEMBER_LIMIT
) -> AdmissibleSet:
    """All partitions dominated by half_gamma * delta_N, in reverse lex order.

    The antisymmetric kind keeps only strictly decreasing partitions.
    """
    if N < 1 or half_gamma < 1:
        raise ValueError(f"{N=} and {half_gamma=} must be positive")

    kind = Kind.of(half_gamma)
    top = staircase(N, half_gamma)
    top_prefix = list(accumulate(top))

    members: list[Partition] = []
    for parts in _descend(N, kind.strict, top_prefix):
        if len(members) >= member_limit:
            raise ResourceLimitError(
                f"more than {member_limit} admissible partitions",
                context=f"N={N} gamma={2 * half_gamma}",
            )
        members.append(Partition.trusted(parts))

    logger.debug("N=%d gamma=%d: %d admissible partitions", N, 2 * half_gamma, len(members))
    return AdmissibleSet(N=N, half_gamma=half_gamma, kind=kind, members=tuple(members))


class Move(NamedTuple):
    source: Partition
    r: int
    indices: tuple[int, int]
    sign: int


def raising_moves(rho: Partition, largest: int, strict: bool) -> Iterator[Move]:
    """Moves of r units from part j to part i < j, reordered.

    `indices` are 1-based positions in rho. Moves whose largest part would
    exceed `largest` are skipped; with `strict`, moves producing a repeated
    part are skipped.
    """
    N = len(rho)
    for j in range(1, N):
        b0 = rho[j]
        for i in range(j):
            if strict and rho[i] == rho[j]:
                continue
            for r in range(1, b0 + 1):
                a = rho[i] + r
                if a > largest:
                    break
                b = b0 - r

                parts = list(rho)
                s = i
                while s > 0 and parts[s - 1] < a:
                    parts[s] = parts[s - 1]
                    s -= 1
                parts[s] = a
                if strict and s > 0 and parts[s - 1] == a:
                    continue

                t = j
                while t < N - 1 and parts[t + 1] > b:
                    parts[t] = parts[t + 1]
                    t += 1
                parts[t] = b
                if strict and t < N - 1 and parts[t + 1] == b:
                    continue

                sign = -1 if ((i - s) + (t - j)) % 2 else 1
                yield Move(Partition.trusted(parts), r, (i + 1, j + 1), sign)


def squeeze_predecessors(mu: Partition, top: Partition) -> list[Move]:
    """Partitions strictly dominating mu, reachable by one move, below top.

    The kind follows from the spacing of top. The permutation sign is
    reported for the antisymmetric kind only; it is +1 otherwise.
    """
    strict = len(top) > 1 and Kind.of(top[-2] - top[-1]).strict
    ret = []
    for move in raising_moves(mu, top[0], strict):
        if not dominance_leq(move.source, top):
            continue
        if not strict:
            move = move._replace(sign=1)
        ret.append(move)
    return ret


def squeeze_graph(aset: AdmissibleSet) -> nx.DiGraph:
    """Edges point from a squeeze predecessor to the partition it feeds."""
    graph = nx.DiGraph()
    graph.add_nodes_from(aset.members)

    strict = aset.kind.strict
    largest = aset.top[0]
    for mu in aset.members:
        for move in raising_moves(mu, largest, strict):
            if move.source in aset:
                graph.add_edge(move.source, mu)

    return graph


def antichain_levels(aset: AdmissibleSet) -> list[list[Partition]]:
    """Groups of partitions whose predecessors all lie in earlier groups."""
    graph = squeeze_graph(aset)
    index = aset.index
    return [
        sorted(level, key=index.__getitem__)
        for level in nx.topological_generations(graph)
    ]
