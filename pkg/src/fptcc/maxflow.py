"""Highest-label push-relabel maximum flow on integer capacities."""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    """Directed residual network over nodes ``0..n-1``.

    Edges are stored in flat arrays; edge ``e ^ 1`` is the reverse of ``e``.
    """

    def __init__(self, n: int):
        self.n = n
        self.head = []
        self.cap = []
        self.out = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap: int, rev_cap: int = 0) -> int:
        if cap < 0 or rev_cap < 0:
            raise ValueError("capacities must be non-negative")
        e = len(self.head)
        self.head += [v, u]
        self.cap += [cap, rev_cap]
        self.out[u].append(e)
        self.out[v].append(e + 1)
        return e

    def add_undirected(self, u: int, v: int, cap: int) -> int:
        return self.add_edge(u, v, cap, cap)

    def max_flow(self, s: int, t: int) -> int:
        """Push the maximum flow from ``s`` to ``t``; residual capacities are updated in place."""
        if s == t:
            raise ValueError("source and sink coincide")
        n = self.n
        head, cap, out = self.head, self.cap, self.out
        height = [0] * n
        excess = [0] * n
        current = [0] * n
        buckets = [[] for _ in range(2 * n + 1)]
        active = [False] * n
        height[s] = n

        def activate(v):
            if v != s and v != t and not active[v] and excess[v] > 0:
                active[v] = True
                buckets[height[v]].append(v)

        for e in out[s]:
            c = cap[e]
            if c > 0:
                v = head[e]
                cap[e] -= c
                cap[e ^ 1] += c
                excess[v] += c
                excess[s] -= c
                activate(v)

        top = n
        while True:
            while top >= 0 and not buckets[top]:
                top -= 1
            if top < 0:
                break
            u = buckets[top].pop()
            active[u] = False
            # discharge u
            while excess[u] > 0:
                edges = out[u]
                if current[u] == len(edges):
                    best = 2 * n
                    for e in edges:
                        if cap[e] > 0:
                            best = min(best, height[head[e]])
                    height[u] = best + 1
                    current[u] = 0
                    if height[u] > 2 * n - 1:
                        break
                    continue
                e = edges[current[u]]
                v = head[e]
                if cap[e] > 0 and height[u] == height[v] + 1:
                    d = min(excess[u], cap[e])
                    cap[e] -= d
                    cap[e ^ 1] += d
                    excess[u] -= d
                    excess[v] += d
                    activate(v)
                else:
                    current[u] += 1
            if height[u] > top:
                top = height[u]
        return excess[t]

    def reachable(self, s: int) -> set:
        """Nodes reachable from ``s`` through positive residual capacity."""
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.out[u]:
                v = self.head[e]
                if self.cap[e] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


def min_cut(n: int, edges, s: int, t: int):
    """Minimum ``s``-``t`` cut of an undirected graph.

    ``edges`` holds ``(u, v, capacity)`` triples.  Returns ``(value, source_side)``
    where ``source_side`` is the smallest source side of a minimum cut.
    """
    net = FlowNetwork(n)
    for u, v, c in edges:
        net.add_undirected(u, v, c)
    value = net.max_flow(s, t)
    return value, net.reachable(s)
