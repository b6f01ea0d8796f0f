import itertools

import numpy as np
import pytest

from fptcc.enumeration import BadPartition
from fptcc.exceptions import BudgetExceeded, InputError
from fptcc.graph import MINUS, MISSING, PLUS, SignedGraph
from fptcc.multiway import (CutSet, TerminalGraph, apply_cut, build_auxiliary,
                            multiway_cut_exact, multiway_cut_isolating, separates_terminals,
                            terminal_node)

from conftest import random_signed_graph


def random_terminal_graph(rng, n_free, k):
    terms = tuple(terminal_node(i) for i in range(k))
    nodes = tuple(range(n_free))
    everything = list(terms) + list(nodes)
    weights = {}
    for a, b in itertools.combinations(everything, 2):
        if a < 0 and b < 0:
            continue
        if rng.random() < 0.35:
            weights[(a, b)] = int(rng.integers(1, 4))
    return TerminalGraph(nodes, terms, weights)


def brute_cut_by_edges(tg):
    """Smallest-weight separating edge subset (tiny graphs only)."""
    edges = sorted(tg.weights)
    best = None
    for r in range(len(edges) + 1):
        for sub in itertools.combinations(edges, r):
            w = sum(tg.weights[e] for e in sub)
            if best is not None and w >= best:
                continue
            if separates_terminals(tg, sub):
                best = w
    return best


def brute_cut_by_assignment(tg):
    """Independent recomputation: label every free node with a terminal."""
    ts = list(tg.terminals)
    free = list(tg.non_terminals)
    best = None
    for labels in itertools.product(range(len(ts)), repeat=len(free)):
        lab = {t: i for i, t in enumerate(ts)}
        lab.update(zip(free, labels))
        w = sum(wt for (a, b), wt in tg.weights.items() if lab[a] != lab[b])
        best = w if best is None else min(best, w)
    return best


def test_terminal_graph_merges_and_validates():
    tg = TerminalGraph((0, 1), (-1,), {(0, 1): 2, (1, 0): 1, (0, -1): 0})
    assert tg.weights == {(0, 1): 3}
    with pytest.raises(InputError):
        TerminalGraph((0,), (-1,), {(0, 5): 1})
    with pytest.raises(InputError):
        TerminalGraph((0,), (-1,), {(0, -1): -1})


def test_path_example():
    # t1 - a - t2 with weights 1 and 2: the cheaper edge is cut
    tg = TerminalGraph((0,), (-1, -2), {(-1, 0): 1, (0, -2): 2})
    for solver in (multiway_cut_exact, multiway_cut_isolating):
        cut = solver(tg)
        assert cut.weight == 1 and cut.edges == {(-1, 0)}


def test_single_terminal_needs_no_cut():
    tg = TerminalGraph((0, 1), (-1,), {(-1, 0): 1, (0, 1): 1})
    assert multiway_cut_exact(tg).weight == 0
    assert multiway_cut_isolating(tg).weight == 0


def test_exact_matches_edge_subset_brute_force():
    rng = np.random.default_rng(31)
    for _ in range(60):
        tg = random_terminal_graph(rng, int(rng.integers(0, 5)), int(rng.integers(2, 4)))
        if len(tg.weights) > 12:
            continue
        exact = multiway_cut_exact(tg)
        assert exact.weight == brute_cut_by_edges(tg)


def test_isolating_within_factor_two():
    rng = np.random.default_rng(32)
    for _ in range(150):
        k = int(rng.integers(2, 4))
        tg = random_terminal_graph(rng, int(rng.integers(0, 8)), k)
        exact = multiway_cut_exact(tg)
        approx = multiway_cut_isolating(tg)
        assert separates_terminals(tg, approx.edges)
        assert exact.weight == brute_cut_by_assignment(tg)
        assert exact.weight <= approx.weight <= 2 * (1 - 1 / k) * exact.weight + 1e-9


def test_exact_cap():
    tg = TerminalGraph(tuple(range(5)), (-1, -2),
                       {(-1, 0): 1, (0, 1): 1, (1, 2): 1, (2, 3): 1, (3, 4): 1, (4, -2): 1})
    with pytest.raises(BudgetExceeded):
        multiway_cut_exact(tg, cap=4)
    # free nodes in components without two terminals are not counted
    tg2 = TerminalGraph(tuple(range(6)), (-1, -2), {(-1, 0): 1, (0, -2): 1, (1, 2): 1})
    assert multiway_cut_exact(tg2, cap=1).weight == 1


def test_build_auxiliary_contracts_blocks():
    g = SignedGraph.from_edges(5, plus=[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)], minus=[(0, 4)])
    tg = build_auxiliary(g, BadPartition(((0, 1), (4,))))
    assert tg.terminals == (-1, -2)
    assert tg.non_terminals == (2, 3)
    assert tg.weights == {(-1, 2): 2, (2, 3): 1, (-2, 3): 1}


def test_apply_cut_demotion_rules():
    # blocks {0} and {1}; good vertex 2 joined to both; 3 hangs off 2
    g = SignedGraph.from_edges(4, plus=[(0, 1), (0, 2), (1, 2), (2, 3)], minus=[(0, 3), (1, 3)])
    p = BadPartition(((0,), (1,)))
    tg = build_auxiliary(g, p)
    cut = multiway_cut_exact(tg)
    assert cut.weight == 2                        # terminal-terminal edge plus one more
    h, comps = apply_cut(g, p, cut)
    assert h.label(0, 1) == MISSING               # block-block PLUS pair always removed
    removed = [e for e in [(0, 2), (1, 2)] if h.label(*e) != PLUS]
    assert len(removed) == 1 and h.label(*removed[0]) == MISSING
    assert sorted(len(c.vertices) for c in comps) == [1, 3]
    assert {c.block for c in comps} == {0, 1}


def test_apply_cut_good_good_becomes_minus():
    g = SignedGraph.from_edges(3, plus=[(0, 1), (1, 2)], minus=[(0, 2)])
    p = BadPartition(((0,), (2,)))
    h, comps = apply_cut(g, p, CutSet.of(build_auxiliary(g, p), [(-1, 1)]))
    assert h.label(0, 1) == MISSING
    tg = TerminalGraph((1, 3), (-1, -2), {(-1, 1): 1, (1, 3): 1, (3, -2): 1})
    g2 = SignedGraph.from_edges(4, plus=[(0, 1), (1, 3), (3, 2)],
                                minus=[(0, 2), (0, 3), (1, 2)])
    h2, comps2 = apply_cut(g2, p, CutSet.of(tg, [(1, 3)]))
    assert h2.label(1, 3) == MINUS
    assert [c.vertices for c in comps2] == [(0, 1), (2, 3)]


def test_apply_cut_components_are_plus_closed():
    rng = np.random.default_rng(33)
    for _ in range(80):
        n = int(rng.integers(3, 10))
        g = random_signed_graph(rng, n, p_missing=0.2, p_plus=0.5)
        bad = sorted(rng.choice(n, size=int(rng.integers(1, 3)), replace=False).tolist())
        p = BadPartition(tuple((b,) for b in bad))
        tg = build_auxiliary(g, p)
        for cut in (multiway_cut_exact(tg), multiway_cut_isolating(tg)):
            h, comps = apply_cut(g, p, cut)
            where = {v: i for i, c in enumerate(comps) for v in c.vertices}
            assert sorted(where) == list(range(n))
            for u, v in h.pairs(PLUS):
                assert where[u] == where[v]
            hosts = [c.block for c in comps if c.block is not None]
            assert sorted(hosts) == list(range(len(p)))
            for c in comps:
                sub_h, _ = h.induced(c.vertices)
                sub_g, _ = g.induced(c.vertices)
                if c.block is None or len(p.blocks[c.block]) == 1:
                    assert np.array_equal(sub_h.matrix, sub_g.matrix)
            changed = np.argwhere(np.triu(h.matrix != g.matrix))
            for u, v in changed:
                assert where[int(u)] != where[int(v)] or (u in bad and v in bad)
