from fractions import Fraction

import pytest
from hypothesis import given

from graphexplore.graph import (
    Graph,
    GraphClass,
    GraphError,
    NotCactusError,
    classify,
    cycle_decomposition,
    dumps,
    loads,
    long_edge,
    shortest_path,
)

from conftest import cactus_graphs, connected_graphs


def brute_paths(g, u, v):
    """All simple u-v paths with their lengths."""
    out = []

    def go(x, path, length):
        if x == v:
            out.append((length, path))
            return
        for y, w in g.neighbors(x).items():
            if y not in path:
                go(y, path + [y], length + w)

    go(u, [u], Fraction(0))
    return out


@given(connected_graphs(max_n=7))
def test_shortest_path_matches_enumeration(g):
    for u in sorted(g.vertices):
        for v in sorted(g.vertices):
            d, path = shortest_path(g, u, v)
            paths = brute_paths(g, u, v)
            best = min(length for length, _ in paths)
            assert d == best
            assert path == min(p for length, p in paths if length == best)


def test_validation_errors():
    with pytest.raises(GraphError):
        Graph([(0, 0, 1)], 0)
    with pytest.raises(GraphError):
        Graph([(0, 1, 0)], 0)
    with pytest.raises(GraphError):
        Graph([(0, 1, 1), (1, 0, 2)], 0)
    with pytest.raises(GraphError):
        Graph([(0, 1, 0.5)], 0)
    with pytest.raises(GraphError):
        Graph([(0, 1, 1), (2, 3, 1)], 0)
    with pytest.raises(GraphError):
        Graph([(0, 1, -2)], 0)


def test_single_vertex_graph():
    g = Graph([], 4, vertices=[4])
    assert g.n == 1 and g.m == 0
    assert classify(g) is GraphClass.TREE
    assert loads(dumps(g)) == g


def test_classify_examples():
    tri = [(0, 1, 1), (1, 2, 1), (0, 2, 1)]
    assert classify(Graph(tri[:2], 0)) is GraphClass.TREE
    assert classify(Graph(tri, 0)) is GraphClass.UNICYCLIC
    bowtie = tri + [(2, 3, 1), (3, 4, 1), (2, 4, 1)]
    assert classify(Graph(bowtie, 0)) is GraphClass.CACTUS
    k4 = tri + [(0, 3, 1), (1, 3, 1), (2, 3, 1)]
    assert classify(Graph(k4, 0)) is GraphClass.GENERAL
    with pytest.raises(NotCactusError):
        cycle_decomposition(Graph(k4, 0))


def test_long_edge():
    g = Graph([(0, 1, 1), (1, 2, 1), (0, 2, 3)], 0)
    (c,), bridges = cycle_decomposition(g)
    assert not bridges
    assert long_edge(c).key == (0, 2)
    # exactly half is not long
    g = Graph([(0, 1, 1), (1, 2, 1), (0, 2, 2)], 0)
    (c,), _ = cycle_decomposition(g)
    assert long_edge(c) is None


@given(cactus_graphs())
def test_cactus_decomposition_partitions_edges(g):
    cycles, bridges = cycle_decomposition(g)
    keys = [k for c in cycles for k in c.keys] + [e.key for e in bridges]
    assert sorted(keys) == sorted(e.key for e in g.edges)
    assert g.m - g.n + 1 == len(cycles)
    for c in cycles:
        assert len(c.edges) >= 3
        le = long_edge(c)
        heavy = [e for e in c.edges if 2 * e.weight > c.total_length]
        assert (le is None) == (not heavy)


@given(connected_graphs())
def test_text_round_trip(g):
    h = loads(dumps(g))
    assert h == g
    assert dumps(h) == dumps(g)


def test_loader_rejects_bad_input():
    with pytest.raises(GraphError):
        loads("edge 0 1 1\n")
    with pytest.raises(GraphError):
        loads("graph 2 2 0\nedge 0 1 1\n")
    with pytest.raises(GraphError):
        loads("graph 2 1 0\nedge 0 1 x\n")
    with pytest.raises(GraphError):
        loads("graph 2 1 0\nmeta family x\nedge 0 1 1\n")
    g = loads("# comment\ngraph 2 1 0\nedge 0 1 3/2  # trailing\n")
    assert g.weight(1, 0) == Fraction(3, 2)
