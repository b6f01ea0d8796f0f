"""Set-partition and capped subset enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterable, Iterator

from .exceptions import BudgetExceeded, ConfigError


@dataclass(frozen=True)
class BadPartition:
    """Blocks of a set partition, each block sorted, blocks ordered by their minimum."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else -1))
        if any(len(b) == 0 for b in blocks):
            raise ConfigError("partition blocks must be non-empty")
        flat = [v for b in blocks for v in b]
        if len(flat) != len(set(flat)):
            raise ConfigError("partition blocks must be disjoint")
        object.__setattr__(self, "blocks", blocks)

    def __len__(self):
        return len(self.blocks)

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for b in self.blocks for v in b)

    def as_lists(self):
        return [list(b) for b in self.blocks]


@dataclass(frozen=True)
class EnumBudget:
    """Caps for subset enumeration.

    ``max_subset_size=None`` means "twice the size of the bad set", resolved
    by the caller through :meth:`size_cap`.
    """

    max_subsets: int = 4096
    max_subset_size: int | None = None

    def __post_init__(self):
        if self.max_subsets < 1:
            raise ConfigError("max_subsets must be >= 1")
        if self.max_subset_size is not None and self.max_subset_size < 1:
            raise ConfigError("max_subset_size must be >= 1")

    def size_cap(self, n_bad: int) -> int:
        if self.max_subset_size is not None:
            return self.max_subset_size
        return max(1, 2 * n_bad)


def bell(n: int) -> int:
    """Bell number via the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length ``n`` in lexicographic order."""
    if n == 0:
        yield ()
        return
    a = [0] * n
    m = [0] * n  # m[i] = max(a[0..i-1]) (m[0] unused)
    while True:
        yield tuple(a)
        i = n - 1
        while i > 0 and a[i] > m[i]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        top = max(m[i], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = top


def enumerate_partitions(s: Iterable[int], max_size: int | None = None) -> Iterator[BadPartition]:
    """Every set partition of ``s`` exactly once, in restricted-growth-string order."""
    elems = sorted(s)
    if max_size is not None and len(elems) > max_size:
        raise BudgetExceeded(f"{len(elems)} elements exceed the partition cap {max_size}",
                             lower_bound=len(elems))
    for rgs in restricted_growth_strings(len(elems)):
        blocks = [[] for _ in range(max(rgs, default=-1) + 1)]
        for v, b in zip(elems, rgs):
            blocks[b].append(v)
        yield BadPartition(tuple(tuple(b) for b in blocks))


def enumerate_subsets(s: Iterable[int], budget: EnumBudget, size_cap: int | None = None):
    """Return ``(subsets, truncated)``.

    ``subsets`` is an iterator of frozensets ordered by size then
    lexicographically.  When ``2**|s|`` exceeds ``budget.max_subsets`` only
    subsets of size at most ``size_cap`` (default ``budget.max_subset_size``)
    are produced, followed by ``s`` itself, and ``truncated`` is ``True``.
    """
    elems = sorted(s)
    n = len(elems)
    if n < 63 and (1 << n) <= budget.max_subsets:
        return _subsets_upto(elems, n), False
    cap = size_cap if size_cap is not None else budget.max_subset_size
    if cap is None:
        raise ConfigError("a size cap is needed to truncate subset enumeration")
    cap = min(cap, n)
    it = _subsets_upto(elems, cap)
    if cap < n:
        it = chain(it, [frozenset(elems)])
    return it, True


def _subsets_upto(elems, cap):
    for r in range(cap + 1):
        for combo in combinations(elems, r):
            yield frozenset(combo)
