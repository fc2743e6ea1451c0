from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphexplore.engine import BoundaryEdge, start
from graphexplore.generators import gen_spiked_path
from graphexplore.graph import Graph, GraphClass, classify
from graphexplore.harness import blocking_bound
from graphexplore.opt import opt_cactus
from graphexplore.strategies import (
    CACTUS_DELTA,
    BlockingParams,
    blockers,
    is_blocked,
    parse_delta,
    run_blocking,
    run_dfs,
    run_nn,
)
from graphexplore.surd import exact_sign

from conftest import cactus_graphs, connected_graphs

from test_engine import known_oracle

deltas = st.sampled_from([Fraction(-1), Fraction(-1, 2), Fraction(0), CACTUS_DELTA, Fraction(1, 2), Fraction(2)])


def nn_oracle(g):
    """Textbook NN with brute-force known distances."""
    visited = {g.start}
    at, cost = g.start, Fraction(0)
    while len(visited) < g.n:
        tips = {y for x in visited for y in g.neighbors(x) if y not in visited}
        dist = {v: known_oracle(g, visited, at, v) for v in tips}
        target = min(tips, key=lambda v: (dist[v], v))
        cost += dist[target]
        visited.add(target)
        at = target
    if at != g.start:
        cost += known_oracle(g, visited, at, g.start)
    return cost, at


@given(connected_graphs(max_n=7))
def test_nn_matches_oracle(g):
    run = run_nn(g)
    cost, _ = nn_oracle(g)
    assert run.cost == cost
    assert run.tour.closed and run.state.is_complete


@given(connected_graphs(max_n=9, max_extra=0))
def test_dfs_on_trees_walks_every_edge_twice(g):
    assert run_dfs(g).cost == 2 * g.total_weight()


@given(connected_graphs(max_n=9))
def test_dfs_is_blocking_minus_one(g):
    assert run_dfs(g).tour.steps == run_blocking(g, BlockingParams(-1)).tour.steps
    assert run_dfs(g).tour.steps == run_blocking(g, BlockingParams(-3)).tour.steps


@given(connected_graphs(max_n=9), deltas)
def test_blocking_complete_and_ledger_consistent(g, delta):
    run = run_blocking(g, BlockingParams(delta), audit=True)
    assert run.state.is_complete and run.tour.closed and run.tour.is_valid()
    assert run.state.ledger_total() == run.cost
    assert all(c == 1 for c in run.state.charge_count.values())
    if exact_sign(delta) > 0:
        for key, amount in run.ledger.items():
            assert amount <= (4 + 2 * delta) * g.weight(*key)


@given(cactus_graphs(), deltas)
def test_blocking_within_class_bound_on_cacti(g, delta):
    run = run_blocking(g, BlockingParams(delta), audit=True)
    assert not run.violations
    bound = blocking_bound(classify(g), delta)
    if bound is not None and g.n > 1:
        assert exact_sign(run.cost / opt_cactus(g).length - bound) <= 0


def test_is_blocked_example():
    # from 0: a heavy edge to 1 and a cheap edge to 2; 2's tip is near 0
    g = Graph([(0, 1, 4), (0, 2, 1), (1, 3, 1)], 0)
    s = start(g)
    heavy = BoundaryEdge(0, 1, Fraction(4))
    light = BoundaryEdge(0, 2, Fraction(1))
    assert is_blocked(s, heavy, BlockingParams(0)) == light
    assert is_blocked(s, light, BlockingParams(0)) is None
    # with delta = -1 the radius vanishes
    assert is_blocked(s, heavy, BlockingParams(-1)) is None
    # radius (1+delta)*4 = 1 reaches exactly; 1 - tiny does not
    assert is_blocked(s, heavy, BlockingParams(Fraction(-3, 4))) == light
    assert is_blocked(s, heavy, BlockingParams(Fraction(-3, 4) - Fraction(1, 1000))) is None


def test_equal_weights_do_not_block():
    g = Graph([(0, 1, 1), (0, 2, 1)], 0)
    s = start(g)
    assert blockers(s, BoundaryEdge(0, 1, Fraction(1)), BlockingParams(5)) == []


@pytest.mark.parametrize("delta", [Fraction(-1, 2), Fraction(0), Fraction(1)])
def test_spiked_path_first_long_edge_blocked_at_exact_radius(delta):
    inst = gen_spiked_path(3, delta)
    g = inst.graph
    near = inst.named["l1_near"]
    tip = inst.named["s1_tip"]
    spikes = {v for k, v in inst.named.items() if k.endswith("_tip")}
    s = start(g)
    # walk along the path, never taking the spike tips
    while not s.is_visited(near):
        e = next(e for e in s.boundary_edges() if e.u == s.position and e.v not in spikes)
        s.traverse(e)
    l1 = next(e for e in s.boundary_edges() if e.u == near)
    assert l1.weight == inst.predictions["l1"]
    assert s.known_distance(near, tip) == (1 + delta) * l1.weight
    assert tip in {f.v for f in blockers(s, l1, BlockingParams(delta))}
    assert not blockers(s, l1, BlockingParams(delta - Fraction(1, 100)))


def test_parse_delta():
    assert parse_delta("1/sqrt2-1") == CACTUS_DELTA
    assert parse_delta("-1/2") == Fraction(-1, 2)
    assert parse_delta("0.25") == Fraction(1, 4)
    with pytest.raises(ValueError):
        parse_delta("abc")


def test_blocking_on_cactus_delta_is_exact_surd():
    g = Graph([(0, 1, 1), (1, 2, 1), (0, 2, 3), (2, 3, 2)], 0)
    assert classify(g) is GraphClass.UNICYCLIC
    run = run_blocking(g, BlockingParams(CACTUS_DELTA), audit=True)
    assert not run.violations
    assert run.cost >= opt_cactus(g).length


def test_event_log_charges_sum_to_cost():
    g = Graph([(0, 1, 1), (1, 2, 2), (0, 2, 2), (2, 3, 1)], 0)
    run = run_blocking(g, BlockingParams(Fraction(1, 2)))
    assert sum(ev.charge for ev in run.events) == run.cost
    assert len(run.dump_events().splitlines()) == len(run.events) == g.n - 1


@pytest.mark.parametrize("delta", [Fraction(-3, 4), Fraction(-1, 4), Fraction(0)])
@pytest.mark.parametrize("family", ["double_sp", "sp_cycle"])
def test_gadget_ratios_approach_limit_from_below(family, delta):
    from graphexplore.generators import generate

    inst = generate(family, m=20, delta=delta)
    run = run_blocking(inst.graph, BlockingParams(delta, inst.tie_break))
    ratio = run.cost / opt_cactus(inst.graph).length
    limit = inst.predictions["ratio_limit"]
    assert limit - Fraction(1, 20) < ratio < limit
