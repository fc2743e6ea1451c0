from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphexplore.engine import IllegalMove, Tour, UnknownVertex, start
from graphexplore.graph import Graph

from conftest import connected_graphs


def explore_partially(g, picks):
    """Drive a state with arbitrary legal moves chosen by ``picks``."""
    st_ = start(g)
    for p in picks:
        edges = st_.boundary_edges()
        if not edges:
            break
        e = edges[p % len(edges)]
        st_.walk(e.u)
        st_.traverse(e)
    return st_


def known_oracle(g, visited, u, v):
    """Shortest u-v length over simple paths in the known subgraph with visited interiors."""
    best = None

    def go(x, seen, length):
        nonlocal best
        if best is not None and length >= best:
            return
        if x == v:
            best = length
            return
        if x not in visited:
            return
        for y, w in g.neighbors(x).items():
            if y in seen:
                continue
            if x not in visited and y not in visited:
                continue
            go(y, seen | {y}, length + w)

    go(u, {u}, Fraction(0))
    return best


@given(connected_graphs(max_n=8), st.lists(st.integers(0, 50), max_size=8))
def test_boundary_recomputation(g, picks):
    s = explore_partially(g, picks)
    visited = s.visited
    expected = {
        (x, y) for x in visited for y in g.neighbors(x) if y not in visited
    }
    assert {(e.u, e.v) for e in s.boundary_edges()} == expected
    for e in s.boundary_edges():
        assert e.weight == g.weight(e.u, e.v)
    order = [e.order() for e in s.boundary_edges()]
    assert order == sorted(order)


@given(connected_graphs(max_n=7), st.lists(st.integers(0, 50), max_size=6))
def test_known_distance_matches_materialized_subgraph(g, picks):
    s = explore_partially(g, picks)
    known = sorted(v for v in g.vertices if s.is_known(v))
    for u in sorted(s.visited):
        for v in known:
            assert s.known_distance(u, v) == known_oracle(g, s.visited, u, v)
            res = s.known_path(u, v)
            if res is not None:
                d, path = res
                assert d == s.known_distance(u, v)
                assert all(x in s.visited for x in path[:-1])


@given(connected_graphs(max_n=8), st.lists(st.integers(0, 50), max_size=8))
def test_tour_is_legal_walk(g, picks):
    s = explore_partially(g, picks)
    t = s.tour
    assert t.is_valid()
    for step in t.steps:
        assert g.weight(step.u, step.v) == step.weight
    assert set(t.vertex_sequence()) == set(s.visited)
    assert Tour.loads(t.dumps(), start=g.start).steps == t.steps


def test_information_hiding():
    g = Graph([(0, 1, 1), (1, 2, 1), (2, 3, 1)], 0)
    s = start(g)
    assert s.visited == {0}
    assert not s.is_known(2)
    with pytest.raises(UnknownVertex):
        s.known_neighbors(1)
    with pytest.raises(UnknownVertex):
        s.known_distance(0, 2)
    with pytest.raises(UnknownVertex):
        s.tips_within(1, 5)
    assert {e.key for e in s.known_edges()} == {(0, 1)}


def test_illegal_moves():
    g = Graph([(0, 1, 1), (1, 2, 1), (0, 3, 2)], 0)
    s = start(g)
    with pytest.raises(IllegalMove):
        s.walk(1)
    with pytest.raises(IllegalMove):
        s.traverse((1, 2))
    s.traverse((0, 1))
    with pytest.raises(IllegalMove):
        s.traverse((0, 3))  # not standing at 0
    with pytest.raises(IllegalMove):
        s.traverse((0, 1))  # no longer a boundary edge
    assert s.walk(0) == 1
    assert s.position == 0


def test_unvisited_tip_cannot_be_path_interior():
    # 0-1 (1), 1-2 (1), 0-2 (5): after visiting only 0 and 1, vertex 2 is a tip
    g = Graph([(0, 1, 1), (1, 2, 1), (0, 2, 5), (2, 3, 1)], 0)
    s = start(g)
    s.traverse((0, 1))
    assert s.known_distance(0, 2) == 2
    assert not s.is_known(3)


def test_trace_round_trip_and_totals():
    g = Graph([(0, 1, Fraction(1, 2)), (1, 2, 3)], 0)
    s = start(g)
    s.traverse((0, 1))
    s.traverse((1, 2))
    s.walk(0)
    text = s.tour.dumps()
    assert text.splitlines()[-1] == "total 7/1"
    t = Tour.loads(text)
    assert t.total_cost == 7 and t.closed
    with pytest.raises(ValueError):
        Tour.loads("step 0 1 1/2\ntotal 2\n")


def test_nearest_unvisited_tie_breaks_by_id():
    g = Graph([(0, 5, 1), (0, 3, 1), (0, 4, 2)], 0)
    s = start(g)
    assert s.nearest_unvisited() == (1, 3)
