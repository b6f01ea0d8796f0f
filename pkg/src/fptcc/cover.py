"""Bad vertices: an exact minimum vertex cover of the missing-pair graph.

The search is a bounded search tree run with iterative deepening on the cover
size.  Before each branching step the usual safe reductions are applied:
isolated vertices are dropped, the neighbour of a degree-1 vertex is taken,
a vertex whose closed neighbourhood contains that of a neighbour is taken,
and a vertex of degree above the remaining budget is taken.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .exceptions import BudgetExceeded, InputError
from .graph import SignedGraph


@dataclass(frozen=True)
class CoverResult:
    bad_vertices: frozenset

    @property
    def k(self) -> int:
        return len(self.bad_vertices)


def empty_edge_graph(g: SignedGraph) -> nx.Graph:
    """Simple graph on ``g``'s vertices whose edges are its missing pairs."""
    g0 = nx.Graph()
    g0.add_nodes_from(range(g.n))
    g0.add_edges_from(g.pairs(0))
    return g0


def is_vertex_cover(g0: nx.Graph, cover) -> bool:
    cover = set(cover)
    return all(u in cover or v in cover for u, v in g0.edges())


def min_vertex_cover(g0: nx.Graph, k_max: int) -> CoverResult:
    """Minimum vertex cover of ``g0`` provided its size is at most ``k_max``.

    Raises :class:`BudgetExceeded` (with ``lower_bound = k_max + 1``) otherwise.
    """
    if k_max < 0:
        raise InputError("k_max must be non-negative")
    adj = {v: set(g0.adj[v]) - {v} for v in g0.nodes}
    for k in range(k_max + 1):
        found = _cover_at_most(_copy(adj), k)
        if found is not None:
            return CoverResult(frozenset(found))
    raise BudgetExceeded(
        f"minimum vertex cover of the missing-pair graph exceeds {k_max}",
        lower_bound=k_max + 1,
    )


def _copy(adj):
    return {v: set(ns) for v, ns in adj.items() if ns}


def _take(adj, v, taken):
    taken.append(v)
    for u in adj.pop(v, ()):
        ns = adj[u]
        ns.discard(v)
        if not ns:
            del adj[u]


def _reduce(adj, k, taken):
    """Apply reductions in place; return the remaining budget or -1 on failure."""
    changed = True
    while changed and adj:
        changed = False
        for v in sorted(adj):
            if v not in adj:
                continue
            ns = adj[v]
            if len(ns) > k:
                if k <= 0:
                    return -1
                _take(adj, v, taken)
                k -= 1
                changed = True
            elif len(ns) == 1:
                (u,) = ns
                if k <= 0:
                    return -1
                _take(adj, u, taken)
                k -= 1
                changed = True
            else:
                closed_v = ns | {v}
                for u in sorted(ns):
                    # N[v] <= N[u] means u is in some minimum cover
                    if closed_v <= adj[u] | {u}:
                        if k <= 0:
                            return -1
                        _take(adj, u, taken)
                        k -= 1
                        changed = True
                        break
    return k


def _cover_at_most(adj, k):
    taken = []
    k = _reduce(adj, k, taken)
    if k < 0:
        return None
    if not adj:
        return taken
    n_edges = sum(len(ns) for ns in adj.values()) // 2
    max_deg = max(len(ns) for ns in adj.values())
    if k == 0 or n_edges > k * max_deg:
        return None
    u = min(adj)
    v = min(adj[u])
    for pick in (u, v):
        branch = _copy(adj)
        _take(branch, pick, [])
        sub = _cover_at_most(branch, k - 1)
        if sub is not None:
            return taken + [pick] + sub
    return None
