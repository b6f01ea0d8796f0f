"""Signed graphs, clusterings, mistake accounting and the delta-good predicates.

Labels are stored in a dense symmetric ``int8`` matrix using ``PLUS = 1``,
``MINUS = -1`` and ``MISSING = 0``; per-sign adjacency sets are kept alongside
for the neighbourhood scans that dominate the clustering routines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .exceptions import ConfigError, InputError

PLUS = 1
MINUS = -1
MISSING = 0

_SIGNS = (PLUS, MINUS, MISSING)


class SignedGraph:
    """Immutable complete-or-not signed graph on vertices ``0..n-1``.

    Every unordered pair ``u != v`` carries one of ``PLUS``, ``MINUS`` or
    ``MISSING``.  Instances are never mutated after construction; use
    :meth:`with_labels` or :meth:`induced` to derive new graphs.
    """

    __slots__ = ("_m", "_adj", "_plus_mask", "_minus_mask")

    def __init__(self, matrix):
        m = np.array(matrix, dtype=np.int8, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InputError(f"label matrix must be square, got shape {m.shape}")
        if not np.isin(m, _SIGNS).all():
            raise InputError("labels must be in {+1, -1, 0}")
        if not np.array_equal(m, m.T):
            raise InputError("label matrix must be symmetric")
        np.fill_diagonal(m, MISSING)
        m.setflags(write=False)
        self._m = m
        self._adj = None
        self._plus_mask = None
        self._minus_mask = None

    @classmethod
    def from_edges(cls, n, plus=(), minus=()):
        """Build a graph from lists of ``PLUS`` and ``MINUS`` pairs; others are missing."""
        if n < 0:
            raise InputError("vertex count must be non-negative")
        m = np.zeros((n, n), dtype=np.int8)
        seen = set()
        for sign, pairs in ((PLUS, plus), (MINUS, minus)):
            for u, v in pairs:
                _check_pair(u, v, n)
                key = (min(u, v), max(u, v))
                if key in seen:
                    raise InputError(f"pair {key} labelled twice")
                seen.add(key)
                m[u, v] = m[v, u] = sign
        return cls(m)

    @classmethod
    def complete(cls, n, sign=PLUS):
        m = np.full((n, n), sign, dtype=np.int8)
        return cls(m)

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return self._m.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        """Read-only label matrix."""
        return self._m

    def __len__(self):
        return self.n

    def label(self, u: int, v: int) -> int:
        _check_pair(u, v, self.n)
        return int(self._m[u, v])

    def _neighbours(self):
        if self._adj is None:
            adj = {}
            for sign in _SIGNS:
                mask = self._m == sign
                if sign == MISSING:
                    np.fill_diagonal(mask, False)
                adj[sign] = tuple(frozenset(np.flatnonzero(row).tolist()) for row in mask)
            self._adj = adj
        return self._adj

    def plus(self, v: int) -> frozenset:
        return self._neighbours()[PLUS][v]

    def minus(self, v: int) -> frozenset:
        return self._neighbours()[MINUS][v]

    def missing(self, v: int) -> frozenset:
        return self._neighbours()[MISSING][v]

    def neighbours(self, v: int, sign: int) -> frozenset:
        return self._neighbours()[sign][v]

    def pairs(self, sign: int):
        """Yield the pairs ``(u, v)``, ``u < v``, carrying ``sign``."""
        iu, iv = np.triu_indices(self.n, k=1)
        sel = self._m[iu, iv] == sign
        return zip(iu[sel].tolist(), iv[sel].tolist())

    def count(self, sign: int) -> int:
        iu, iv = np.triu_indices(self.n, k=1)
        return int(np.count_nonzero(self._m[iu, iv] == sign))

    @property
    def n_plus(self):
        return self.count(PLUS)

    @property
    def n_minus(self):
        return self.count(MINUS)

    @property
    def n_missing(self):
        return self.count(MISSING)

    def count_between(self, a: Iterable[int], b: Iterable[int], sign: int) -> int:
        """Number of ``sign`` pairs with one end in ``a`` and the other in ``b``.

        ``a`` and ``b`` are expected to be disjoint.
        """
        b = b if isinstance(b, (set, frozenset)) else set(b)
        adj = self._neighbours()[sign]
        return sum(len(adj[u] & b) for u in a)

    def is_complete_on(self, vertices: Iterable[int]) -> bool:
        vs = np.fromiter(vertices, dtype=np.intp)
        sub = self._m[np.ix_(vs, vs)]
        return int(np.count_nonzero(sub == MISSING)) == len(vs)

    # -- derived graphs ----------------------------------------------------

    def induced(self, vertices: Iterable[int]):
        """Return ``(subgraph, index)`` where ``index[i]`` is the original id of local vertex ``i``.

        Local ids follow increasing original id, so lowest-index tie-breaks are
        preserved by the relabelling.
        """
        index = tuple(sorted(set(vertices)))
        for v in index:
            _check_vertex(v, self.n)
        vs = np.asarray(index, dtype=np.intp)
        return SignedGraph(self._m[np.ix_(vs, vs)]), index

    def with_labels(self, updates: Iterable[tuple[int, int, int]]) -> "SignedGraph":
        m = self._m.copy()
        for u, v, sign in updates:
            _check_pair(u, v, self.n)
            if sign not in _SIGNS:
                raise InputError(f"unknown label {sign!r}")
            m[u, v] = m[v, u] = sign
        return SignedGraph(m)

    # -- scoring helpers ---------------------------------------------------

    def _masks(self):
        if self._plus_mask is None:
            self._plus_mask = self._m == PLUS
            self._minus_mask = self._m == MINUS
        return self._plus_mask, self._minus_mask

    def score_labels(self, labels) -> tuple[int, int]:
        """``(positive, negative)`` mistakes of a label vector; no validation."""
        lab = np.asarray(labels)
        same = lab[:, None] == lab[None, :]
        plus, minus = self._masks()
        pos = int(np.count_nonzero(plus & ~same)) // 2
        neg = int(np.count_nonzero(minus & same)) // 2
        return pos, neg

    def __eq__(self, other):
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return np.array_equal(self._m, other._m)

    __hash__ = None

    def __repr__(self):
        return (f"SignedGraph(n={self.n}, plus={self.n_plus}, "
                f"minus={self.n_minus}, missing={self.n_missing})")


def _check_vertex(v, n):
    if not (isinstance(v, (int, np.integer)) and 0 <= v < n):
        raise InputError(f"vertex id {v!r} out of range 0..{n - 1}")


def _check_pair(u, v, n):
    _check_vertex(u, n)
    _check_vertex(v, n)
    if u == v:
        raise InputError(f"self pair ({u}, {v}) has no label")


@dataclass(frozen=True)
class Clustering:
    """Total assignment of vertices ``0..n-1`` to cluster ids.

    Ids are normalised to ``0..c-1`` in order of first appearance, so two
    clusterings compare equal exactly when they induce the same partition.
    """

    labels: tuple

    def __post_init__(self):
        seen = {}
        out = []
        for x in self.labels:
            if x not in seen:
                seen[x] = len(seen)
            out.append(seen[x])
        object.__setattr__(self, "labels", tuple(out))

    @classmethod
    def from_labels(cls, labels):
        return cls(tuple(np.asarray(labels).tolist()))

    @classmethod
    def from_clusters(cls, clusters: Iterable[Iterable[int]], n: int | None = None):
        """Build from disjoint vertex groups; they must cover ``0..n-1`` exactly."""
        clusters = [sorted(c) for c in clusters]
        clusters = [c for c in clusters if c]
        total = sum(len(c) for c in clusters)
        if n is None:
            n = total
        labels = [-1] * n
        for cid, c in enumerate(clusters):
            for v in c:
                if not (0 <= v < n):
                    raise InputError(f"vertex {v} out of range 0..{n - 1}")
                if labels[v] != -1:
                    raise InputError(f"vertex {v} appears in two clusters")
                labels[v] = cid
        missing = [v for v, x in enumerate(labels) if x == -1]
        if missing:
            raise InputError(f"vertices without a cluster: {missing[:10]}")
        return cls(tuple(labels))

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    @property
    def n_clusters(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    @property
    def clusters(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in range(self.n_clusters)]
        for v, c in enumerate(self.labels):
            out[c].append(v)
        return tuple(tuple(c) for c in out)

    def cluster_of(self, v: int) -> tuple[int, ...]:
        c = self.labels[v]
        return tuple(u for u, x in enumerate(self.labels) if x == c)


@dataclass(frozen=True)
class MistakeReport:
    positive: int
    negative: int

    @property
    def total(self) -> int:
        return self.positive + self.negative

    def as_dict(self):
        return {"positive": self.positive, "negative": self.negative, "total": self.total}


@dataclass(frozen=True)
class DeltaParams:
    """The cleanliness parameter delta, kept as an exact rational."""

    delta: Fraction = Fraction(1, 65)

    def __post_init__(self):
        d = Fraction(self.delta)
        object.__setattr__(self, "delta", d)
        if not (0 < d <= Fraction(1, 5)):
            raise ConfigError(f"delta must lie in (0, 1/5], got {d}")

    def threshold(self, factor: int) -> Fraction:
        t = factor * self.delta
        if t > 1:
            raise ConfigError(f"{factor}*delta = {t} exceeds 1; the predicate is vacuous")
        return t


def neighborhoods(g: SignedGraph, s: Iterable[int]):
    """Positive, negative and empty neighbours of the vertex set ``s`` (excluding ``s``)."""
    s = set(s)
    for v in s:
        _check_vertex(v, g.n)
    plus, minus, empty = set(), set(), set()
    for v in s:
        plus |= g.plus(v)
        minus |= g.minus(v)
        empty |= g.missing(v)
    return frozenset(plus - s), frozenset(minus - s), frozenset(empty - s)


def count_mistakes(g: SignedGraph, c) -> MistakeReport:
    """Count positive (split ``PLUS``) and negative (joined ``MINUS``) mistakes."""
    labels = c.labels if isinstance(c, Clustering) else tuple(c)
    if len(labels) != g.n:
        raise InputError(f"clustering covers {len(labels)} vertices, graph has {g.n}")
    pos, neg = g.score_labels(labels)
    return MistakeReport(pos, neg)


def blocks_to_labels(n: int, blocks: Iterable[Iterable[int]]) -> np.ndarray:
    lab = np.full(n, -1, dtype=np.intp)
    for cid, blk in enumerate(blocks):
        for v in blk:
            lab[v] = cid
    if (lab < 0).any():
        raise InputError("blocks do not cover every vertex")
    return lab


def mistakes_of_blocks(g: SignedGraph, blocks: Sequence[Iterable[int]]) -> int:
    """Total mistakes of a clustering given as a list of vertex groups covering ``g``."""
    return sum(g.score_labels(blocks_to_labels(g.n, blocks)))


def _within(count: int, factor: int, p: DeltaParams, size: int) -> bool:
    # count <= factor * delta * size, in integers
    t = p.threshold(factor)
    return count * t.denominator <= t.numerator * size


def is_delta_good_vertex(h: SignedGraph, v: int, c: Iterable[int], p: DeltaParams,
                         factor: int = 1) -> bool:
    """``|N-(v) & C| <= f*delta*|C|`` and ``|N+(v) - C| <= f*delta*|C|``."""
    c = c if isinstance(c, (set, frozenset)) else set(c)
    size = len(c)
    minus_in = len(h.minus(v) & c)
    plus_out = len(h.plus(v) - c)
    return _within(minus_in, factor, p, size) and _within(plus_out, factor, p, size)


def is_delta_good_badset(h: SignedGraph, b: Iterable[int], c: Iterable[int], p: DeltaParams,
                         factor: int = 1) -> bool:
    """``|E-(B, C-B)|`` and ``|E+(B, V-C)|`` both at most ``f*delta*|B|*|C|``; needs ``B <= C``."""
    b = frozenset(b)
    c = frozenset(c)
    if not b <= c:
        raise InputError("bad set must be contained in the cluster")
    outside = frozenset(range(h.n)) - c
    neg_in = h.count_between(b, c - b, MINUS)
    pos_out = h.count_between(b, outside, PLUS)
    size = len(b) * len(c)
    return _within(neg_in, factor, p, size) and _within(pos_out, factor, p, size)


def is_delta_clean(h: SignedGraph, c: Iterable[int], b: Iterable[int], p: DeltaParams,
                   factor: int = 1) -> bool:
    c = frozenset(c)
    b = frozenset(b)
    inter = b & c
    if inter and inter != b:
        raise InputError("bad set partially overlaps the cluster")
    if not inter:
        return all(is_delta_good_vertex(h, v, c, p, factor) for v in sorted(c))
    return (all(is_delta_good_vertex(h, v, c, p, factor) for v in sorted(c - b))
            and is_delta_good_badset(h, b, c, p, factor))
