import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fptcc.cover import empty_edge_graph, is_vertex_cover, min_vertex_cover
from fptcc.exceptions import BudgetExceeded, InputError
from fptcc.graph import SignedGraph

from conftest import random_signed_graph


def brute_cover_size(g0):
    nodes = sorted(g0.nodes)
    edges = list(g0.edges())
    for r in range(len(nodes) + 1):
        for cand in itertools.combinations(nodes, r):
            s = set(cand)
            if all(u in s or v in s for u, v in edges):
                return r
    return len(nodes)


def test_empty_edge_graph_has_missing_pairs_only():
    g = SignedGraph.from_edges(4, plus=[(0, 1)], minus=[(2, 3)])
    g0 = empty_edge_graph(g)
    assert sorted(g0.nodes) == [0, 1, 2, 3]
    assert sorted(tuple(sorted(e)) for e in g0.edges()) == [(0, 2), (0, 3), (1, 2), (1, 3)]


def test_complete_graph_has_empty_cover():
    g = SignedGraph.complete(6, -1)
    assert min_vertex_cover(empty_edge_graph(g), 0).k == 0


def test_star_and_path_examples():
    star = nx.star_graph(5)
    assert min_vertex_cover(star, 3).bad_vertices == frozenset({0})
    path = nx.path_graph(5)
    res = min_vertex_cover(path, 3)
    assert res.k == 2 and is_vertex_cover(path, res.bad_vertices)


def test_budget_exceeded_reports_lower_bound():
    g0 = nx.complete_graph(5)          # cover size 4
    with pytest.raises(BudgetExceeded) as info:
        min_vertex_cover(g0, 2)
    assert info.value.lower_bound == 3
    assert min_vertex_cover(g0, 4).k == 4
    with pytest.raises(InputError):
        min_vertex_cover(g0, -1)


def test_matches_brute_force_on_random_graphs():
    rng = np.random.default_rng(11)
    for _ in range(150):
        n = int(rng.integers(1, 12))
        g = random_signed_graph(rng, n, p_missing=float(rng.uniform(0.05, 0.5)))
        g0 = empty_edge_graph(g)
        opt = brute_cover_size(g0)
        res = min_vertex_cover(g0, n)
        assert res.k == opt
        assert is_vertex_cover(g0, res.bad_vertices)
        if opt > 0:
            with pytest.raises(BudgetExceeded):
                min_vertex_cover(g0, opt - 1)


@given(st.integers(2, 10), st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=25))
@settings(max_examples=120, deadline=None)
def test_cover_property(n, raw):
    g0 = nx.Graph()
    g0.add_nodes_from(range(n))
    g0.add_edges_from((u % n, v % n) for u, v in raw if u % n != v % n)
    res = min_vertex_cover(g0, n)
    assert is_vertex_cover(g0, res.bad_vertices)
    assert res.k == brute_cover_size(g0)
    # deterministic
    assert min_vertex_cover(g0, n) == res
