"""Correlation clustering sub-solvers for inputs without missing pairs.

All solvers take a graph plus the vertex subset to cluster and return a list
of frozensets covering exactly that subset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import BudgetExceeded, ConfigError, InputError
from .graph import MINUS, MISSING, PLUS, SignedGraph

EXACT_CAP = 12


@dataclass(frozen=True)
class SolverChoice:
    kind: str = "pivot"
    repeats: int = 5
    seed: int = 0
    exact_cap: int = EXACT_CAP

    def __post_init__(self):
        if self.kind not in ("pivot", "exact"):
            raise ConfigError(f"unknown complete solver {self.kind!r}")
        if self.repeats < 1:
            raise ConfigError("repeats must be >= 1")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")

    def with_seed(self, seed: int) -> "SolverChoice":
        return SolverChoice(self.kind, self.repeats, seed, self.exact_cap)


def _vertex_list(g, vertices):
    vs = sorted(range(g.n) if vertices is None else set(vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise InputError(f"vertex {v} out of range")
    return vs


def _require_complete(g, vs):
    idx = np.asarray(vs, dtype=np.intp)
    sub = g.matrix[np.ix_(idx, idx)]
    if int(np.count_nonzero(sub == MISSING)) != len(vs):
        raise InputError("the complete solvers need every pair of the subset labelled")


def score_blocks(g: SignedGraph, blocks: Iterable[Iterable[int]]) -> int:
    """Mistakes of ``blocks`` counted only over pairs inside their union."""
    blocks = [sorted(b) for b in blocks]
    vs = [v for b in blocks for v in b]
    if not vs:
        return 0
    idx = np.asarray(vs, dtype=np.intp)
    lab = np.repeat(np.arange(len(blocks)), [len(b) for b in blocks])
    sub = g.matrix[np.ix_(idx, idx)]
    same = lab[:, None] == lab[None, :]
    pos = np.count_nonzero((sub == PLUS) & ~same)
    neg = np.count_nonzero((sub == MINUS) & same)
    return int(pos + neg) // 2


# -- exact branch and bound over weighted units -----------------------------

def _best_assignment(plus_w, minus_w, n_forced=0, base=0):
    """Minimum-cost restricted growth string over weighted units.

    ``plus_w[i][j]``/``minus_w[i][j]`` hold the number of ``PLUS``/``MINUS``
    pairs between units ``i`` and ``j``.  The first ``n_forced`` units must
    land in distinct clusters.  The first optimal string in restricted
    growth order is returned together with its cost (plus ``base``).
    """
    n = len(plus_w)
    best = [None, None]
    assign = [0] * n
    members = []  # members[c] = list of units in cluster c

    def rec(i, cost):
        if best[0] is not None and cost >= best[0]:
            return
        if i == n:
            best[0] = cost
            best[1] = tuple(assign)
            return
        pw, mw = plus_w[i], minus_w[i]
        plus_prev = sum(pw[j] for j in range(i))
        for c, mem in enumerate(members):
            if i < n_forced:
                break
            p_in = sum(pw[j] for j in mem)
            m_in = sum(mw[j] for j in mem)
            assign[i] = c
            mem.append(i)
            rec(i + 1, cost + m_in + plus_prev - p_in)
            mem.pop()
        assign[i] = len(members)
        members.append([i])
        rec(i + 1, cost + plus_prev)
        members.pop()

    rec(0, 0)
    return best[0] + base, best[1]


def _pair_weights(g, units):
    m = g.matrix
    k = len(units)
    plus_w = [[0] * k for _ in range(k)]
    minus_w = [[0] * k for _ in range(k)]
    for i in range(k):
        ui = np.asarray(units[i], dtype=np.intp)
        for j in range(i + 1, k):
            uj = np.asarray(units[j], dtype=np.intp)
            sub = m[np.ix_(ui, uj)]
            p = int(np.count_nonzero(sub == PLUS))
            q = int(np.count_nonzero(sub == MINUS))
            plus_w[i][j] = plus_w[j][i] = p
            minus_w[i][j] = minus_w[j][i] = q
    return plus_w, minus_w


def exact_cc(g: SignedGraph, vertices: Iterable[int] | None = None, cap: int = EXACT_CAP):
    """Optimal clustering of ``vertices`` (all of ``g`` by default) by exhaustive search.

    Missing pairs are allowed and simply never count.  Ties resolve to the
    first optimum in restricted-growth order.
    """
    vs = _vertex_list(g, vertices)
    if len(vs) > cap:
        raise BudgetExceeded(f"{len(vs)} vertices exceed the exact solver cap {cap}",
                             lower_bound=len(vs))
    if not vs:
        return []
    plus_w, minus_w = _pair_weights(g, [[v] for v in vs])
    _, rgs = _best_assignment(plus_w, minus_w)
    return _rgs_blocks([[v] for v in vs], rgs)


def exact_cc_grouped(g: SignedGraph, groups: Sequence[Iterable[int]],
                     vertices: Iterable[int] | None = None, cap: int = EXACT_CAP):
    """Optimal clustering where each group stays whole and groups stay apart."""
    vs = _vertex_list(g, vertices)
    groups = [sorted(set(gr)) for gr in groups if gr]
    grouped = set()
    for gr in groups:
        if grouped & set(gr):
            raise InputError("groups must be disjoint")
        grouped |= set(gr)
    if not grouped <= set(vs):
        raise InputError("groups must lie inside the vertex set")
    free = [v for v in vs if v not in grouped]
    if len(free) > cap:
        raise BudgetExceeded(f"{len(free)} free vertices exceed the exact solver cap {cap}",
                             lower_bound=len(free))
    units = groups + [[v] for v in free]
    if not units:
        return []
    base = sum(score_blocks(g, [gr]) for gr in groups)
    plus_w, minus_w = _pair_weights(g, units)
    _, rgs = _best_assignment(plus_w, minus_w, n_forced=len(groups), base=base)
    return _rgs_blocks(units, rgs)


def _rgs_blocks(units, rgs):
    out = [set() for _ in range(max(rgs) + 1)]
    for unit, c in zip(units, rgs):
        out[c].update(unit)
    return [frozenset(b) for b in out]


# -- pivot ---------------------------------------------------------------

def repeat_rngs(seed: int, repeats: int, key: Sequence[int] = ()):
    """Deterministic independent generators, one per repeat index."""
    ss = np.random.SeedSequence(entropy=[seed, len(key), *key])
    return [np.random.default_rng(s) for s in ss.spawn(repeats)]


def _pivot_once(plus_sets, order):
    remaining = set(order)
    blocks = []
    for p in order:
        if p not in remaining:
            continue
        cluster = {p} | (plus_sets[p] & remaining)
        remaining -= cluster
        blocks.append(cluster)
    return blocks


def pivot_cc(g: SignedGraph, vertices: Iterable[int] | None = None, *, seed: int = 0,
             repeats: int = 1, rngs=None):
    """Randomised pivot, best of ``repeats`` runs rescored on ``g``.

    Pivots are drawn uniformly among unclustered vertices (a uniformly random
    order).  Ties between runs go to the lowest repeat index.
    """
    vs = _vertex_list(g, vertices)
    _require_complete(g, vs)
    if not vs:
        return []
    vset = set(vs)
    plus_sets = {v: g.plus(v) & vset for v in vs}
    if rngs is None:
        rngs = repeat_rngs(seed, repeats, vs)
    arr = np.asarray(vs)
    best, best_cost = None, None
    for rng in rngs:
        blocks = _pivot_once(plus_sets, rng.permutation(arr).tolist())
        cost = score_blocks(g, blocks)
        if best_cost is None or cost < best_cost:
            best, best_cost = blocks, cost
    return [frozenset(b) for b in best]


def constrained_cc(g: SignedGraph, vertices: Iterable[int] | None, must_link: Iterable[int],
                   choice: SolverChoice = SolverChoice()):
    """Clustering of ``vertices`` keeping ``must_link`` inside a single cluster.

    With ``choice.kind == "exact"`` this is :func:`exact_cc_grouped`.  Otherwise
    ``must_link`` is contracted to one meta-vertex labelled with the majority
    sign towards each other vertex (ties go to ``MINUS``), pivot runs on the
    contracted graph and every run is rescored on the uncontracted one.
    """
    vs = _vertex_list(g, vertices)
    ml = sorted(set(must_link))
    if not set(ml) <= set(vs):
        raise InputError("must_link must lie inside the vertex set")
    _require_complete(g, vs)
    if choice.kind == "exact":
        return exact_cc_grouped(g, [ml] if ml else [], vs, cap=choice.exact_cap)
    if len(ml) <= 1:
        return pivot_cc(g, vs, seed=choice.seed, repeats=choice.repeats)
    mlset = set(ml)
    meta = ml[0]
    rest = [v for v in vs if v not in mlset]
    restset = set(rest)
    plus_sets = {v: set(g.plus(v) & restset) for v in rest}
    meta_plus = set()
    for v in rest:
        p = len(g.plus(v) & mlset)
        q = len(g.minus(v) & mlset)
        if p > q:
            meta_plus.add(v)
            plus_sets[v].add(meta)
    plus_sets[meta] = meta_plus
    units = [meta] + rest
    arr = np.asarray(sorted(units))
    best, best_cost = None, None
    for rng in repeat_rngs(choice.seed, choice.repeats, vs):
        blocks = _pivot_once(plus_sets, rng.permutation(arr).tolist())
        for b in blocks:
            if meta in b:
                b.update(mlset)
        cost = score_blocks(g, blocks)
        if best_cost is None or cost < best_cost:
            best, best_cost = blocks, cost
    return [frozenset(b) for b in best]


def solve_complete(g: SignedGraph, vertices: Iterable[int] | None, choice: SolverChoice):
    """Dispatch to the configured complete solver."""
    if choice.kind == "exact":
        vs = _vertex_list(g, vertices)
        _require_complete(g, vs)
        return exact_cc(g, vs, cap=choice.exact_cap)
    return pivot_cc(g, vertices, seed=choice.seed, repeats=choice.repeats)
