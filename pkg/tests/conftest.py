from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graphexplore.graph import Graph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

weights = st.builds(Fraction, st.integers(1, 12), st.integers(1, 3))


@st.composite
def connected_graphs(draw, min_n=1, max_n=9, max_extra=6):
    """Arbitrary connected graphs: random spanning tree plus random chords."""
    n = draw(st.integers(min_n, max_n))
    edges = {}
    for v in range(1, n):
        p = draw(st.integers(0, v - 1))
        edges[(p, v)] = draw(weights)
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in edges]
    if pairs:
        extra = draw(st.lists(st.sampled_from(pairs), max_size=max_extra, unique=True))
        for a, b in extra:
            edges[(a, b)] = draw(weights)
    start = draw(st.integers(0, n - 1))
    return Graph([(a, b, w) for (a, b), w in edges.items()], start, vertices=range(n))


@st.composite
def cactus_graphs(draw, max_n=10):
    """Cacti: a tree whose chords close edge-disjoint cycles."""
    g = draw(connected_graphs(min_n=1, max_n=max_n, max_extra=0))
    n = g.n
    parent = {}
    for e in g.edges:
        parent[max(e.u, e.v)] = min(e.u, e.v)
    used = set()
    edges = {e.key: e.weight for e in g.edges}

    def up(v):
        path = [v]
        while v in parent:
            v = parent[v]
            path.append(v)
        return path

    for _ in range(draw(st.integers(0, 4))):
        if n < 3:
            break
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(0, n - 1))
        if a == b or (min(a, b), max(a, b)) in edges:
            continue
        pa, pb = up(a), up(b)
        common = next(x for x in pa if x in set(pb))
        ka = pa[: pa.index(common) + 1]
        kb = pb[: pb.index(common) + 1]
        tree_edges = {(min(x, y), max(x, y)) for p in (ka, kb) for x, y in zip(p, p[1:])}
        if tree_edges & used:
            continue
        used |= tree_edges
        edges[(min(a, b), max(a, b))] = draw(weights)
    return Graph([(a, b, w) for (a, b), w in edges.items()], g.start, vertices=range(n))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
