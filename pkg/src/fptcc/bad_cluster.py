"""Clustering a PLUS-connected piece whose bad vertices must share one cluster.

The entry point is :func:`bad_cluster`.  It canonicalises the piece into a
working graph (bad set made an all-``PLUS`` clique, mixed-sign bad edges of
each good vertex cancelled down to the majority sign), then builds
candidates through ``clean_cluster``-style cleaning, the negative-heavy and
replacement routines, and bounded neighbour guessing.  Candidates are always
compared by their mistakes on the piece as given, never on the working
graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .complete import SolverChoice, constrained_cc, solve_complete
from .enumeration import EnumBudget, enumerate_subsets
from .exceptions import InputError, InvariantViolation, PreconditionError
from .graph import (MINUS, MISSING, PLUS, Clustering, DeltaParams, SignedGraph,
                    is_delta_clean, is_delta_good_badset, is_delta_good_vertex,
                    mistakes_of_blocks)


@dataclass(frozen=True)
class WorkingGraph:
    graph: SignedGraph
    bad: frozenset

    @property
    def n(self):
        return self.graph.n

    @property
    def vertices(self) -> frozenset:
        return frozenset(range(self.graph.n))

    @property
    def good(self) -> frozenset:
        return self.vertices - self.bad

    def _touching(self, sign):
        out = set()
        for b in self.bad:
            out |= self.graph.neighbours(b, sign)
        return frozenset(out - self.bad)

    @property
    def plus_of_bad(self) -> frozenset:
        """Good vertices with a ``PLUS`` edge to the bad set."""
        return self._touching(PLUS)

    @property
    def minus_of_bad(self) -> frozenset:
        return self._touching(MINUS)

    @property
    def empty_of_bad(self) -> frozenset:
        """Good vertices with no labelled edge to the bad set."""
        return self.good - self.plus_of_bad - self.minus_of_bad

    def edges_from_bad(self, other: Iterable[int], sign: int) -> int:
        other = frozenset(other) - self.bad
        return self.graph.count_between(self.bad, other, sign)


@dataclass(frozen=True)
class CleanPair:
    c_prime: frozenset
    c: frozenset


def canonicalize(g_sub: SignedGraph, b: Iterable[int]) -> WorkingGraph:
    """Make ``b`` an all-``PLUS`` clique and cancel opposite-sign bad edges per vertex.

    A vertex with ``l1`` plus and ``l2`` minus edges to ``b`` keeps ``|l1 - l2|``
    edges of the majority sign, those to the lowest-indexed bad endpoints.
    """
    b = frozenset(b)
    for v in b:
        if not 0 <= v < g_sub.n:
            raise InputError(f"bad vertex {v} out of range")
    bl = sorted(b)
    updates = [(u, v, PLUS) for i, u in enumerate(bl) for v in bl[i + 1:]]
    for v in range(g_sub.n):
        if v in b:
            continue
        pl = sorted(g_sub.plus(v) & b)
        mi = sorted(g_sub.minus(v) & b)
        if len(pl) >= len(mi):
            keep, drop = pl[:len(pl) - len(mi)], pl[len(pl) - len(mi):] + mi
        else:
            keep, drop = mi[:len(mi) - len(pl)], mi[len(mi) - len(pl):] + pl
        updates.extend((v, x, MISSING) for x in drop)
    return WorkingGraph(g_sub.with_labels(updates), b)


def clean_cluster(h: WorkingGraph, u: int, p: DeltaParams) -> CleanPair:
    """Grow and clean a cluster around the good vertex ``u``.

    Start from ``N+[u]`` plus the bad set, repeatedly drop the lowest-indexed
    good member (other than ``u``) that is 3-delta-bad, then either accept the
    result as ``C'`` or fall back to ``({u}, {u})``.  ``C`` adds every vertex
    with nearly all of its ``PLUS`` edges into ``C'``.
    """
    if u in h.bad:
        raise InputError("clean_cluster needs a good seed vertex")
    g = h.graph
    a = set(g.plus(u)) | {u} | set(h.bad)
    changed = True
    while changed:
        changed = False
        for v in sorted(a - h.bad - {u}):
            if not is_delta_good_vertex(g, v, a, p, 3):
                a.discard(v)
                changed = True
                break
    a = frozenset(a)
    if not (is_delta_good_badset(g, h.bad, a, p, 3) and is_delta_good_vertex(g, u, a, p, 3)):
        single = frozenset({u})
        return CleanPair(single, single)
    t = p.threshold(9)
    size = len(a)
    added = set()
    for v in range(g.n):
        plus = g.plus(v)
        inside = len(plus & a)
        outside = len(plus - a)
        if (inside * t.denominator >= (t.denominator - t.numerator) * size
                and outside * t.denominator <= t.numerator * size):
            added.add(v)
    return CleanPair(a, a | added)


def large_neighbourhood(h: WorkingGraph, p: DeltaParams) -> bool:
    """``|N+(B)| > 2|B|^2 + (2/delta)|B|``."""
    nb = len(h.bad)
    return len(h.plus_of_bad) > 2 * nb * nb + Fraction(2) / p.delta * nb


def select_y(h: WorkingGraph, p: DeltaParams, clean=None):
    """Best cleaned cluster seeded at a positive neighbour of the bad set.

    Returns ``(y, CleanPair)`` or ``None`` when no seed qualifies.
    """
    if not large_neighbourhood(h, p):
        raise PreconditionError("select_y needs |N+(B)| > 2|B|^2 + (2/delta)|B|")
    clean = clean or (lambda v: clean_cluster(h, v, p))
    bad = h.bad
    best = None
    for v in sorted(h.plus_of_bad):
        pair = clean(v)
        if not (bad | {v}) <= pair.c_prime:
            continue
        if not len(pair.c_prime) * p.delta > len(bad):
            continue
        if not is_delta_clean(h.graph, pair.c, bad, p, 13):
            continue
        leaving = h.edges_from_bad(h.vertices - pair.c, PLUS)
        if best is None or leaving < best[0]:
            best = (leaving, v, pair)
    return None if best is None else (best[1], best[2])


class BadClusterSolver:
    """One run of the bad-set clustering on a single piece.

    Holds the piece, its working graph and per-run caches; reports whether
    any subset enumeration was truncated and how many candidates were scored.
    """

    def __init__(self, g_sub: SignedGraph, b: Iterable[int], p: DeltaParams = DeltaParams(),
                 solvers: SolverChoice = SolverChoice(), budget: EnumBudget = EnumBudget(),
                 working: WorkingGraph | None = None):
        b = frozenset(b)
        if not b:
            raise InputError("the bad set must be non-empty")
        self.g = g_sub
        self.h = working if working is not None else canonicalize(g_sub, b)
        self.B = self.h.bad
        self.p = p
        self.solvers = solvers
        self.budget = budget
        self.truncated = False
        self.n_candidates = 0
        self._solved = {}
        self._clean = {}
        self._replaced = {}
        self._c2 = None

    # -- plumbing ------------------------------------------------------

    @property
    def V(self) -> frozenset:
        return self.h.vertices

    def complete(self, vertices) -> list:
        key = frozenset(vertices)
        if key not in self._solved:
            self._solved[key] = solve_complete(self.h.graph, key, self.solvers) if key else []
        return self._solved[key]

    def merge(self, cluster) -> list:
        cluster = frozenset(cluster)
        return [cluster] + list(self.complete(self.V - cluster))

    def score(self, blocks) -> int:
        return mistakes_of_blocks(self.g, blocks)

    def best(self, candidates) -> list:
        best, best_cost = None, None
        for blocks in candidates:
            self.n_candidates += 1
            cost = self.score(blocks)
            if best_cost is None or cost < best_cost:
                best, best_cost = blocks, cost
        return best

    def subsets(self, s):
        it, truncated = enumerate_subsets(s, self.budget, self.budget.size_cap(len(self.B)))
        self.truncated |= truncated
        return it

    def clean(self, u) -> CleanPair:
        if u not in self._clean:
            self._clean[u] = clean_cluster(self.h, u, self.p)
        return self._clean[u]

    @property
    def c2(self) -> list:
        """Complete-solve everything but the bad set, then add the bad set as its own cluster."""
        if self._c2 is None:
            self._c2 = self.merge(self.B)
        return self._c2

    # -- the case analysis ---------------------------------------------

    def run(self) -> list:
        h, B = self.h, self.B
        if large_neighbourhood(h, self.p):
            sel = select_y(h, self.p, self.clean)
            if sel is None:
                result = self.c2
            else:
                c = sel[1].c
                if h.edges_from_bad(c, MINUS) <= h.edges_from_bad(c, PLUS):
                    result = self.best([self.merge(c), self.c2])
                else:
                    result = self.more_negative_edges(c)
        else:
            result = self.bounded_positive_neighbors()
        result = self.best([result, self.c2])
        self._check(result)
        return result

    def _check(self, blocks):
        if sum(1 for blk in blocks if self.B & blk) != 1 or not any(self.B <= blk for blk in blocks):
            raise InvariantViolation("bad set split across clusters")

    def more_negative_edges(self, c) -> list:
        h, B = self.h, self.B
        c = frozenset(c)
        if not B <= c:
            raise InputError("the cluster must contain the bad set")
        if not h.edges_from_bad(c, MINUS) > h.edges_from_bad(c, PLUS):
            raise PreconditionError("more_negative_edges needs more MINUS than PLUS edges from B into C")
        negative = h.minus_of_bad & c
        cands = []
        if len(negative) < 3 * len(B):
            for r in self.subsets(negative):
                cands.append(self.merge(c - r))
        else:
            picked = sorted(negative)[:3 * len(B)]
            for b_minus in self.subsets(picked):
                if len(b_minus) >= len(B):
                    cands.append(self.good_replace_bad(b_minus))
        cands.append(self.c2)
        return self.best(cands)

    def good_replace_bad(self, b_plus) -> list:
        h, B = self.h, self.B
        bp = frozenset(b_plus)
        if bp & B:
            raise PreconditionError("B+ must consist of good vertices")
        if len(bp) < len(B):
            raise PreconditionError("good_replace_bad needs |B+| >= |B|")
        if bp in self._replaced:
            return self._replaced[bp]
        g = h.graph
        updates = []
        for v in sorted(self.V - B - bp):
            l3 = len(g.plus(v) & B)
            l4 = len(g.minus(v) & B)
            plus_bp = sorted(g.plus(v) & bp)
            minus_bp = sorted(g.minus(v) & bp)
            if l3 > len(plus_bp):
                updates.extend((v, x, PLUS) for x in minus_bp[:len(minus_bp) // 2])
            elif l4 > len(minus_bp):
                updates.extend((v, x, MINUS) for x in plus_bp[:len(plus_bp) // 2])
        hat = g.with_labels(updates)
        blocks = constrained_cc(hat, self.V - B, bp, self.solvers)
        out = [blk | B if bp <= blk else blk for blk in blocks]
        self._replaced[bp] = out
        return out

    def bounded_positive_neighbors(self) -> list:
        h, B = self.h, self.B
        if large_neighbourhood(h, self.p):
            raise PreconditionError("bounded_positive_neighbors needs |N+(B)| <= 2|B|^2 + (2/delta)|B|")
        results = []
        for n_sub in self.subsets(h.plus_of_bad):
            if not n_sub:
                c_dd = self.c2
            else:
                pair = self.clean(min(n_sub))
                cu = pair.c | B
                if h.edges_from_bad(cu, MINUS) <= h.edges_from_bad(cu, PLUS):
                    c_dd = self.merge(cu)
                else:
                    c_dd = self.more_negative_edges(cu)
            results.append(self.find_neighbors(frozenset(), n_sub, c_dd))
        return self.best(results)

    def find_neighbors(self, b_plus_acc, n_prime, c_dd, depth=0) -> list:
        B = self.B
        if depth > len(B):
            return c_dd
        bp = frozenset(b_plus_acc) | frozenset(n_prime)
        if not n_prime:
            return self.merge(bp | B)
        if len(bp) >= len(B):
            return self.good_replace_bad(bp)
        rest = self.V - bp - B
        g = self.h.graph
        reach = set()
        for v in bp:
            reach |= g.plus(v)
        reach &= rest
        if len(reach) > (2 + Fraction(2) / self.p.delta) * len(B) ** 2:
            return c_dd
        return self.best(self.find_neighbors(bp, n2, c_dd, depth + 1)
                         for n2 in self.subsets(reach))


def bad_cluster(g_sub: SignedGraph, b: Iterable[int], p: DeltaParams = DeltaParams(),
                solvers: SolverChoice = SolverChoice(),
                budget: EnumBudget = EnumBudget()) -> Clustering:
    """Clustering of ``g_sub`` with every vertex of ``b`` in one cluster."""
    blocks = BadClusterSolver(g_sub, b, p, solvers, budget).run()
    return Clustering.from_clusters(blocks, g_sub.n)
