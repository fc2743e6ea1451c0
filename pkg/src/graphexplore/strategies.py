"""Online exploration strategies: Nearest Neighbor, DFS and Blocking(delta).

All three drive an :class:`~graphexplore.engine.ExplorationState` and never look
at the hidden graph.  The optional :class:`Auditor` does look at it; it only
observes and records invariant violations.
"""

from __future__ import annotations

import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import BoundaryEdge, ExplorationState, Tour, start
from .graph import Graph, NotCactusError, cycle_decomposition, long_edge
from .surd import QuadSurd, as_exact, exact_sign

__all__ = [
    "CACTUS_DELTA",
    "Auditor",
    "BlockRecord",
    "BlockingParams",
    "Event",
    "StrategyRun",
    "TIE_BREAKS",
    "blockers",
    "format_delta",
    "is_blocked",
    "parse_delta",
    "run_blocking",
    "run_dfs",
    "run_nn",
]

#: 1/sqrt(2) - 1, the parameter with the best cactus guarantee.
CACTUS_DELTA = QuadSurd(-1, Fraction(1, 2))

_DELTA_ALIASES = {
    "1/sqrt2-1": CACTUS_DELTA,
    "1/sqrt(2)-1": CACTUS_DELTA,
    "sqrt2/2-1": CACTUS_DELTA,
    "cactus": CACTUS_DELTA,
}


def parse_delta(text: str):
    """Parse ``"-1/2"``, ``"0.25"``, ``"2"`` or ``"1/sqrt2-1"`` into an exact value."""
    key = text.strip().replace(" ", "").lower()
    if key in _DELTA_ALIASES:
        return _DELTA_ALIASES[key]
    try:
        return Fraction(key)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse blocking parameter {text!r}") from None


def format_delta(delta) -> str:
    if delta == CACTUS_DELTA:
        return "1/sqrt2-1"
    return str(delta)


TIE_BREAKS = ("weight", "id")


@dataclass(frozen=True)
class BlockingParams:
    """Blocking parameter and the order among simultaneously eligible edges.

    ``tie_break="weight"`` picks the smallest (weight, from, to); ``"id"`` picks
    the smallest (from, to) regardless of weight.
    """

    delta: object = Fraction(0)
    tie_break: str = "weight"

    def __post_init__(self):
        object.__setattr__(self, "delta", as_exact(self.delta))
        if self.tie_break not in TIE_BREAKS:
            raise ValueError(f"tie_break must be one of {TIE_BREAKS}")

    def order(self, e: BoundaryEdge):
        return (e.u, e.v) if self.tie_break == "id" else (e.weight, e.u, e.v)

    @property
    def factor(self):
        return 1 + self.delta

    @property
    def dfs_degenerate(self) -> bool:
        return self.delta <= -1


@dataclass(frozen=True)
class BlockRecord:
    blocked_edge: BoundaryEdge
    blocker_tip: int


@dataclass
class Event:
    """One iteration of Blocking's while loop."""

    y: int
    edge: BoundaryEdge
    blocked: list[tuple[BoundaryEdge, tuple[int, ...]]]
    walk_in: Fraction = Fraction(0)
    walk_out: Fraction = Fraction(0)

    @property
    def charge(self) -> Fraction:
        return self.walk_in + self.edge.weight + self.walk_out

    def line(self) -> str:
        e = self.edge
        blocked = ",".join(
            f"{b.u}-{b.v}<{'|'.join(map(str, tips))}" for b, tips in self.blocked
        ) or "-"
        return (
            f"iter y={self.y} edge={e.u}-{e.v} w={e.weight} "
            f"in={self.walk_in} out={self.walk_out} charge={self.charge} blocked={blocked}"
        )


@dataclass
class StrategyRun:
    strategy: str
    tour: Tour
    state: ExplorationState
    events: list[Event] = field(default_factory=list)
    records: list[BlockRecord] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    audit_checks: int = 0

    @property
    def cost(self) -> Fraction:
        return self.tour.total_cost

    @property
    def ledger(self) -> dict[tuple[int, int], Fraction]:
        return self.state.ledger

    def dump_events(self) -> str:
        return "".join(ev.line() + "\n" for ev in self.events)


@contextmanager
def _recursion_room(depth: int):
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * depth + 1000))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


# --- blocking condition ----------------------------------------------------------------


def _blocking_status(st: ExplorationState, params: BlockingParams):
    """Map every boundary edge to the boundary edges blocking it (possibly none)."""
    edges = st.boundary_edges()
    status: dict[tuple[int, int], tuple[BoundaryEdge, ...]] = {}
    factor = params.factor
    if exact_sign(factor) <= 0:
        return edges, {(e.u, e.v): () for e in edges}
    # one search per source vertex, out to the largest radius needed there
    radius: dict[int, object] = {}
    n_shorter: list[int] = []
    first_of_weight = 0
    for i, e in enumerate(edges):
        if i and e.weight != edges[i - 1].weight:
            first_of_weight = i
        n_shorter.append(first_of_weight)
        if first_of_weight:
            bound = factor * e.weight
            if e.u not in radius or radius[e.u] < bound:
                radius[e.u] = bound
    reach = {u: st.tips_within(u, bound) for u, bound in radius.items()}
    for i, e in enumerate(edges):
        k = n_shorter[i]
        if not k:
            status[(e.u, e.v)] = ()
            continue
        dist = reach[e.u]
        bound = factor * e.weight
        status[(e.u, e.v)] = tuple(
            f for f in edges[:k] if f.v in dist and dist[f.v] <= bound
        )
    return edges, status


def blockers(st: ExplorationState, e: BoundaryEdge, params: BlockingParams) -> list[BoundaryEdge]:
    """Every boundary edge that blocks ``e`` right now, in (weight, from, to) order."""
    if not st.is_boundary(e.u, e.v):
        raise ValueError(f"({e.u}, {e.v}) is not a boundary edge")
    bound = params.factor * e.weight
    if exact_sign(bound) <= 0:
        return []
    dist = st.tips_within(e.u, bound)
    return [
        f for f in st.boundary_edges()
        if f.weight < e.weight and f.v in dist and dist[f.v] <= bound
    ]


def is_blocked(st: ExplorationState, e: BoundaryEdge, params: BlockingParams) -> BoundaryEdge | None:
    found = blockers(st, e, params)
    return found[0] if found else None


# --- instrumentation -------------------------------------------------------------------


class Auditor:
    """Checks the charge bound and the long-edge properties during a Blocking run.

    Cycle structure comes from the full graph, so auditing only makes sense on
    trees, unicyclic graphs and cacti; on other graphs the cycle checks are skipped.
    """

    def __init__(self, graph: Graph, params: BlockingParams):
        self.graph = graph
        self.params = params
        self.violations: list[str] = []
        self.long_edges: dict[tuple[int, int], tuple] = {}
        self.checks = 0
        try:
            cycles, _ = cycle_decomposition(graph)
        except NotCactusError:
            cycles = []
        for c in cycles:
            le = long_edge(c)
            if le is not None:
                self.long_edges[le.key] = (c, le)

    def on_evaluate(self, edges, status) -> None:
        factor = self.params.factor
        for e in edges:
            hit = self.long_edges.get(e.key)
            if hit is None or status[(e.u, e.v)]:
                continue
            c, _ = hit
            self.checks += 1
            rest = c.total_length - e.weight
            if exact_sign(factor * e.weight - rest) >= 0:
                self.violations.append(
                    f"unblocked long edge {e.u}-{e.v}: (1+delta)*{e.weight} >= {rest}"
                )

    def on_traverse(self, st: ExplorationState, e: BoundaryEdge) -> None:
        if exact_sign(self.params.delta) <= 0:
            return
        hit = self.long_edges.get(e.key)
        if hit is None:
            return
        c, _ = hit
        others = [
            f for f in st.boundary_edges() if f.key in c.keys and f.key != e.key
        ]
        self.checks += 1
        if others:
            self.violations.append(
                f"long edge {e.u}-{e.v} traversed while {len(others)} other boundary edge(s) of its cycle exist"
            )

    def finish(self, st: ExplorationState) -> None:
        delta = self.params.delta
        if exact_sign(delta) > 0:
            for key, amount in st.ledger.items():
                self.checks += 1
                if amount > (4 + 2 * delta) * self.graph.weight(*key):
                    self.violations.append(f"edge {key} charged {amount} > (4+2delta)|e|")
        for key, count in st.charge_count.items():
            if count > 1:
                self.violations.append(f"edge {key} charged {count} times")
        if st.ledger_total() != st.tour.total_cost:
            self.violations.append(
                f"ledger total {st.ledger_total()} != tour cost {st.tour.total_cost}"
            )


# --- strategies ------------------------------------------------------------------------


def run_blocking(g: Graph, params: BlockingParams | None = None, audit: bool = False) -> StrategyRun:
    """Explore ``g`` with Blocking(delta) and return the closed tour with its charges."""
    params = params or BlockingParams()
    st = start(g)
    auditor = Auditor(g, params) if audit else None
    blocked_by: dict[tuple[int, int], set[int]] = {}
    records: list[BlockRecord] = []
    events: list[Event] = []
    cache: dict = {}

    def evaluate():
        if cache.get("version") != st.version:
            edges, status = _blocking_status(st, params)
            for e in edges:
                for f in status[(e.u, e.v)]:
                    tips = blocked_by.setdefault((e.u, e.v), set())
                    if f.v not in tips:
                        tips.add(f.v)
                        records.append(BlockRecord(e, f.v))
            if auditor is not None:
                auditor.on_evaluate(edges, status)
            cache.update(version=st.version, edges=edges, status=status)
        return cache["edges"], cache["status"]

    def explore(y: int) -> None:
        while True:
            edges, status = evaluate()
            eligible = [
                e for e in edges
                if not status[(e.u, e.v)]
                and (e.u == y or y in blocked_by.get((e.u, e.v), ()))
            ]
            if not eligible:
                return
            chosen = min(eligible, key=params.order)
            event = Event(y, chosen, [(e, tuple(f.v for f in status[(e.u, e.v)]))
                                      for e in edges if status[(e.u, e.v)]])
            event.walk_in = st.walk(chosen.u)
            if auditor is not None:
                auditor.on_traverse(st, chosen)
            st.traverse(chosen)
            explore(chosen.v)
            event.walk_out = st.walk(y)
            st.charge(chosen, event.charge)
            events.append(event)

    with _recursion_room(g.n):
        explore(g.start)
    run = StrategyRun("blocking", st.tour, st, events, records)
    if not st.is_complete:
        run.violations.append("exploration ended with unvisited vertices")
    if auditor is not None:
        auditor.finish(st)
        run.violations.extend(auditor.violations)
        run.audit_checks = auditor.checks
    return run


def run_dfs(g: Graph) -> StrategyRun:
    """Depth-first exploration; returns to the discovering vertex by a shortest known path."""
    st = start(g)

    def visit(y: int) -> None:
        while True:
            here = [e for e in st.boundary_edges() if e.u == y]
            if not here:
                return
            e = here[0]
            st.traverse(e)
            visit(e.v)
            st.walk(y)

    with _recursion_room(g.n):
        visit(g.start)
    return StrategyRun("dfs", st.tour, st)


def run_nn(g: Graph) -> StrategyRun:
    """Nearest Neighbor: always go to the closest unvisited vertex, then return home."""
    st = start(g)
    while not st.is_complete:
        _, target = st.nearest_unvisited()
        _, path = st.known_path(st.position, target)
        st.walk(path[-2])
        st.traverse((path[-2], target))
    st.walk(g.start)
    return StrategyRun("nn", st.tour, st)

