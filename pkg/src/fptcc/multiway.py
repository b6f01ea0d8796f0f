"""Terminal graph construction, multiway cut solvers and cut application.

Node convention for terminal graphs built from a signed graph: good vertex
``v`` keeps its id, the contracted block ``i`` becomes node ``-(i + 1)``
(see :func:`terminal_node`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

import networkx as nx
import numpy as np

from .enumeration import BadPartition
from .exceptions import BudgetExceeded, InputError, InvariantViolation
from .graph import MINUS, MISSING, PLUS, SignedGraph
from .maxflow import FlowNetwork

EXACT_CUT_CAP = 16


def terminal_node(i: int) -> int:
    return -(i + 1)


def _key(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class TerminalGraph:
    """Weighted undirected graph with designated terminal nodes."""

    nodes: tuple
    terminals: tuple
    weights: Mapping = field(default_factory=dict)

    def __post_init__(self):
        nodes = tuple(sorted(set(self.nodes) | set(self.terminals)))
        weights = {}
        for (u, v), w in self.weights.items():
            if u == v:
                raise InputError("self loops are not allowed")
            if w < 0:
                raise InputError("edge weights must be non-negative")
            if w:
                k = _key(u, v)
                weights[k] = weights.get(k, 0) + int(w)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "terminals", tuple(self.terminals))
        object.__setattr__(self, "weights", weights)
        node_set = set(nodes)
        for u, v in weights:
            if u not in node_set or v not in node_set:
                raise InputError(f"edge ({u}, {v}) references an unknown node")

    @property
    def non_terminals(self) -> tuple:
        ts = set(self.terminals)
        return tuple(v for v in self.nodes if v not in ts)

    @property
    def total_weight(self) -> int:
        return sum(self.weights.values())

    def to_networkx(self, without=()) -> nx.Graph:
        skip = {_key(u, v) for u, v in without}
        g = nx.Graph()
        g.add_nodes_from(self.nodes)
        for (u, v), w in self.weights.items():
            if (u, v) not in skip:
                g.add_edge(u, v, weight=w)
        return g


@dataclass(frozen=True)
class CutSet:
    edges: frozenset
    weight: int

    @classmethod
    def of(cls, tg: TerminalGraph, edges):
        edges = frozenset(_key(u, v) for u, v in edges)
        return cls(edges, sum(tg.weights[e] for e in edges))


def separates_terminals(tg: TerminalGraph, edges) -> bool:
    """True when removing ``edges`` leaves no two terminals connected."""
    comp = _components_without(tg, {_key(u, v) for u, v in edges})
    roots = [comp[t] for t in tg.terminals]
    return len(set(roots)) == len(roots)


def _components_without(tg, removed):
    parent = {v: v for v in tg.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in tg.weights:
        if e not in removed:
            a, b = find(e[0]), find(e[1])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return {v: find(v) for v in tg.nodes}


def build_auxiliary(g: SignedGraph, p: BadPartition) -> TerminalGraph:
    """Contract each block of ``p`` in the ``PLUS`` graph of ``g`` into a terminal."""
    owner = {}
    for i, blk in enumerate(p.blocks):
        for v in blk:
            owner[v] = terminal_node(i)
    weights = {}
    for u, v in g.pairs(PLUS):
        a, b = owner.get(u, u), owner.get(v, v)
        if a == b:
            continue
        k = _key(a, b)
        weights[k] = weights.get(k, 0) + 1
    good = [v for v in range(g.n) if v not in owner]
    terminals = tuple(terminal_node(i) for i in range(len(p.blocks)))
    return TerminalGraph(tuple(good), terminals, weights)


def multiway_cut_isolating(tg: TerminalGraph) -> CutSet:
    """Isolating-cut 2(1 - 1/k)-approximation with greedy pruning of redundant edges."""
    ts = tg.terminals
    if len(ts) <= 1:
        return CutSet(frozenset(), 0)
    index = {v: i for i, v in enumerate(tg.nodes)}
    sink = len(tg.nodes)
    big = tg.total_weight + 1
    cuts = []
    for t in ts:
        net = FlowNetwork(sink + 1)
        for (u, v), w in tg.weights.items():
            net.add_undirected(index[u], index[v], w)
        for other in ts:
            if other != t:
                net.add_edge(index[other], sink, big)
        net.max_flow(index[t], sink)
        side = net.reachable(index[t])
        edges = frozenset(e for e in tg.weights
                          if (index[e[0]] in side) != (index[e[1]] in side))
        cuts.append(CutSet.of(tg, edges))
    heaviest = max(range(len(cuts)), key=lambda i: (cuts[i].weight, -i))
    union = set()
    for i, c in enumerate(cuts):
        if i != heaviest:
            union |= c.edges
    chosen = set(union)
    for e in sorted(union, key=lambda e: (-tg.weights[e], e)):
        chosen.discard(e)
        if not separates_terminals(tg, chosen):
            chosen.add(e)
    result = CutSet.of(tg, chosen)
    if not separates_terminals(tg, result.edges):
        raise InvariantViolation("isolating cut failed to separate the terminals")
    return result


def multiway_cut_exact(tg: TerminalGraph, cap: int = EXACT_CUT_CAP) -> CutSet:
    """Minimum multiway cut by enumerating terminal assignments of the free nodes.

    Connected components holding fewer than two terminals cost nothing and
    are skipped, so only free nodes sharing a component with at least two
    terminals count against ``cap``.
    """
    ts = set(tg.terminals)
    if len(ts) <= 1:
        return CutSet(frozenset(), 0)
    comp = _components_without(tg, set())
    groups = {}
    for v in tg.nodes:
        groups.setdefault(comp[v], []).append(v)
    work = [vs for vs in groups.values() if sum(v in ts for v in vs) >= 2]
    n_free = sum(sum(v not in ts for v in vs) for vs in work)
    if n_free > cap:
        raise BudgetExceeded(f"{n_free} free nodes exceed the exact multiway cut cap {cap}",
                             lower_bound=n_free)
    cut = set()
    for vs in work:
        cut |= _exact_component(tg, vs, ts)
    result = CutSet.of(tg, cut)
    if not separates_terminals(tg, result.edges):
        raise InvariantViolation("exact cut failed to separate the terminals")
    return result


def _exact_component(tg, vs, ts):
    terms = [v for v in vs if v in ts]
    free = [v for v in vs if v not in ts]
    vset = set(vs)
    edges = [(e, w) for e, w in tg.weights.items() if e[0] in vset]
    k = len(terms)
    tpos = {t: i for i, t in enumerate(terms)}
    fpos = {v: i for i, v in enumerate(free)}
    m = len(free)
    # vectorise over the trailing free nodes, loop over a prefix
    tail = min(m, 10)
    head = m - tail
    codes = np.arange(k ** tail)
    tail_assign = np.empty((k ** tail, tail), dtype=np.int8)
    for j in range(tail):
        tail_assign[:, tail - 1 - j] = (codes // k ** j) % k
    best_cost, best_assign = None, None
    for prefix in product(range(k), repeat=head):
        cost = np.zeros(len(codes), dtype=np.int64)

        def col(v):
            if v in tpos:
                return tpos[v]
            i = fpos[v]
            return prefix[i] if i < head else tail_assign[:, i - head]

        for (a, b), w in edges:
            ca, cb = col(a), col(b)
            cost += w * np.asarray(ca != cb, dtype=np.int64)
        i = int(np.argmin(cost))
        if best_cost is None or cost[i] < best_cost:
            best_cost = int(cost[i])
            best_assign = list(prefix) + tail_assign[i].tolist()
    label = dict(tpos)
    for v, i in fpos.items():
        label[v] = best_assign[i]
    return {e for e, _ in edges if label[e[0]] != label[e[1]]}


@dataclass(frozen=True)
class Component:
    vertices: tuple
    block: int | None  # index of the partition block it hosts, None if good-only

    @property
    def good_only(self) -> bool:
        return self.block is None


def apply_cut(g: SignedGraph, p: BadPartition, f: CutSet):
    """Remove the cut's ``PLUS`` edges and split into ``PLUS``-connected pieces.

    Returns ``(h, components)``.  Removed block-block and block-good pairs
    become ``MISSING`` in ``h``; removed good-good pairs become ``MINUS``.
    Cut edges whose ends still land in one component are restored, so every
    demoted pair of ``h`` joins two different components.
    """
    owner = {}
    for i, blk in enumerate(p.blocks):
        for v in blk:
            owner[v] = terminal_node(i)
    blocks = {terminal_node(i): blk for i, blk in enumerate(p.blocks)}

    def pairs_of(edge):
        a, b = edge
        ea = blocks.get(a, (a,))
        eb = blocks.get(b, (b,))
        return [(u, v) for u in ea for v in eb if g.label(u, v) == PLUS]

    removed = {}
    for u, v in g.pairs(PLUS):
        a, b = owner.get(u), owner.get(v)
        if a is not None and b is not None and a != b:
            removed[(u, v)] = None
    for edge in sorted(f.edges):
        for u, v in pairs_of(edge):
            removed[_key(u, v)] = edge

    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        a, b = find(a), find(b)
        if a != b:
            parent[max(a, b)] = min(a, b)

    for blk in p.blocks:
        for v in blk[1:]:
            union(blk[0], v)
    for u, v in g.pairs(PLUS):
        if (u, v) not in removed:
            union(u, v)

    roots = [find(blk[0]) for blk in p.blocks]
    if len(set(roots)) != len(roots):
        raise InvariantViolation("cut leaves two blocks PLUS-connected")

    for pair, edge in list(removed.items()):
        if edge is not None and find(pair[0]) == find(pair[1]):
            del removed[pair]

    updates = []
    for u, v in removed:
        both_good = u not in owner and v not in owner
        updates.append((u, v, MINUS if both_good else MISSING))
    h = g.with_labels(updates)

    members = {}
    for v in range(g.n):
        members.setdefault(find(v), []).append(v)
    block_of_root = {r: i for i, r in enumerate(roots)}
    comps = [Component(tuple(vs), block_of_root.get(r))
             for r, vs in sorted(members.items(), key=lambda kv: kv[1][0])]
    return h, comps
