import itertools
from fractions import Fraction

import pytest
from hypothesis import given

from graphexplore.graph import Graph, shortest_path
from graphexplore.opt import InstanceTooLarge, opt_cactus, opt_exact

from conftest import cactus_graphs, connected_graphs


def brute_opt(g):
    others = sorted(v for v in g.vertices if v != g.start)
    d = {(u, v): shortest_path(g, u, v)[0] for u in g.vertices for v in g.vertices}
    best = None
    for perm in itertools.permutations(others):
        seq = [g.start, *perm, g.start]
        length = sum((d[a, b] for a, b in zip(seq, seq[1:])), Fraction(0))
        best = length if best is None else min(best, length)
    return best if best is not None else Fraction(0)


@given(connected_graphs(max_n=6))
def test_exact_matches_permutations(g):
    assert opt_exact(g).length == brute_opt(g)


@given(cactus_graphs(max_n=10))
def test_cactus_formula_matches_exact(g):
    assert opt_cactus(g).length == opt_exact(g).length


def test_examples():
    tri = Graph([(0, 1, 1), (1, 2, 1), (0, 2, 5)], 0)
    assert opt_cactus(tri).length == 4
    tri = Graph([(0, 1, 1), (1, 2, 1), (0, 2, 2)], 0)
    assert opt_cactus(tri).length == 4
    path = Graph([(0, 1, Fraction(1, 3)), (1, 2, 2)], 1)
    assert opt_cactus(path).length == Fraction(14, 3) == opt_exact(path).length
    assert opt_exact(Graph([], 0, vertices=[0])).length == 0


def test_size_limit():
    g = Graph([(i, i + 1, 1) for i in range(15)], 0)
    with pytest.raises(InstanceTooLarge):
        opt_exact(g)
    assert opt_exact(g, limit=16).length == 30


def test_huge_weights_stay_exact():
    big = 10**30
    g = Graph([(0, 1, big), (1, 2, big + 1), (0, 2, Fraction(1, 7))], 0)
    assert opt_exact(g).length == opt_cactus(g).length == 2 * (big + Fraction(1, 7))
