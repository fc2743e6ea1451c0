"""The online information model.

An :class:`ExplorationState` owns the hidden graph.  Strategies see only what a
searcher standing in the graph could know: visited vertices, the edges incident
to them, boundary edges, distances inside that known part, and the current position.
Every move goes through :meth:`ExplorationState.walk` or
:meth:`ExplorationState.traverse`, which append to the tour and reject illegal moves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .graph import Edge, Graph, edge_key
from .paths import distances, lex_shortest_path

__all__ = [
    "BoundaryEdge",
    "ExplorationState",
    "IllegalMove",
    "Step",
    "Tour",
    "UnknownVertex",
    "start",
]


class IllegalMove(RuntimeError):
    """A strategy asked for a move the searcher cannot make."""


class UnknownVertex(LookupError):
    """A query touched a vertex the searcher has not seen yet."""


class BoundaryEdge(NamedTuple):
    """Known edge ``(u, v)`` with ``u`` visited and ``v`` not."""

    u: int
    v: int
    weight: Fraction

    @property
    def key(self) -> tuple[int, int]:
        return edge_key(self.u, self.v)

    def order(self) -> tuple[Fraction, int, int]:
        return (self.weight, self.u, self.v)


class Step(NamedTuple):
    u: int
    v: int
    weight: Fraction


@dataclass
class Tour:
    start: int
    steps: list[Step] = field(default_factory=list)
    total_cost: Fraction = Fraction(0)

    @property
    def end(self) -> int:
        return self.steps[-1].v if self.steps else self.start

    @property
    def closed(self) -> bool:
        return self.end == self.start

    def vertex_sequence(self) -> list[int]:
        return [self.start] + [s.v for s in self.steps]

    def is_valid(self) -> bool:
        at = self.start
        for s in self.steps:
            if s.u != at:
                return False
            at = s.v
        return sum((s.weight for s in self.steps), Fraction(0)) == self.total_cost

    def dumps(self) -> str:
        lines = [f"step {s.u} {s.v} {s.weight.numerator}/{s.weight.denominator}" for s in self.steps]
        t = self.total_cost
        lines.append(f"total {t.numerator}/{t.denominator}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str, start: int | None = None) -> Tour:
        steps = []
        total = None
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "step" and len(parts) == 4:
                steps.append(Step(int(parts[1]), int(parts[2]), Fraction(parts[3])))
            elif parts[0] == "total" and len(parts) == 2:
                total = Fraction(parts[1])
            else:
                raise ValueError(f"bad trace line {line!r}")
        if start is None:
            if not steps:
                raise ValueError("start vertex needed for an empty trace")
            start = steps[0].u
        tour = cls(start, steps, sum((s.weight for s in steps), Fraction(0)))
        if total is not None and total != tour.total_cost:
            raise ValueError(f"trace total {total} does not match steps {tour.total_cost}")
        return tour


class ExplorationState:
    """Fog-of-war view of a graph, mutated by a single searcher."""

    def __init__(self, graph: Graph):
        self._g = graph
        self._visited: set[int] = set()
        self._boundary: dict[tuple[int, int], BoundaryEdge] = {}
        self._into: dict[int, set[int]] = {}
        self._sorted_cache: tuple[int, list[BoundaryEdge]] | None = None
        self.position = graph.start
        self.tour = Tour(graph.start)
        self.ledger: dict[tuple[int, int], Fraction] = {}
        self.charge_count: dict[tuple[int, int], int] = {}
        self.version = 0
        self._visit(graph.start)

    # --- read-only views ---------------------------------------------------------

    @property
    def start_vertex(self) -> int:
        return self._g.start

    @property
    def visited(self) -> frozenset[int]:
        return frozenset(self._visited)

    def is_visited(self, v: int) -> bool:
        return v in self._visited

    @property
    def is_complete(self) -> bool:
        return len(self._visited) == self._g.n

    def is_known(self, v: int) -> bool:
        return v in self._visited or v in self._into

    def known_edges(self) -> set[Edge]:
        out = set()
        for x in self._visited:
            for y, w in self._g._adj[x].items():
                a, b = edge_key(x, y)
                out.add(Edge(a, b, w))
        return out

    def known_neighbors(self, v: int) -> dict[int, Fraction]:
        """Neighbors of a visited vertex with edge weights."""
        if v not in self._visited:
            raise UnknownVertex(f"vertex {v} has not been visited")
        return dict(self._g._adj[v])

    def boundary_edges(self) -> list[BoundaryEdge]:
        """All boundary edges, ordered by (weight, u, v)."""
        if self._sorted_cache is None or self._sorted_cache[0] != self.version:
            edges = sorted(self._boundary.values(), key=BoundaryEdge.order)
            self._sorted_cache = (self.version, edges)
        return list(self._sorted_cache[1])

    def is_boundary(self, u: int, v: int) -> bool:
        return (u, v) in self._boundary

    # --- distances in the known graph ----------------------------------------------

    def _known_nbrs(self, v: int):
        adj = self._g._iadj[v]
        if v in self._visited:
            return adj.items()
        return [(w, wt) for w, wt in adj.items() if w in self._visited]

    def _check_endpoints(self, u: int, v: int) -> None:
        if u not in self._visited:
            raise UnknownVertex(f"vertex {u} has not been visited")
        if not self.is_known(v):
            raise UnknownVertex(f"vertex {v} is not known")

    def known_path(self, u: int, v: int) -> tuple[Fraction, list[int]] | None:
        """Shortest walkable known path; interior vertices are all visited.

        Among shortest paths the lexicographically smallest vertex sequence wins.
        ``None`` if no such path exists.
        """
        self._check_endpoints(u, v)
        res = lex_shortest_path(self._known_nbrs, self._visited.__contains__, u, v)
        if res is None:
            return None
        d, path = res
        return Fraction(d, self._g.scale), path

    def known_distance(self, u: int, v: int) -> Fraction | None:
        self._check_endpoints(u, v)
        dist = distances(self._known_nbrs, self._visited.__contains__, u)
        d = dist.get(v)
        return None if d is None else Fraction(d, self._g.scale)

    def tips_within(self, u: int, bound) -> dict[int, Fraction]:
        """Unvisited boundary tips at known distance <= ``bound`` from ``u``.

        ``bound`` may be any exact real supporting ``math.floor`` (Fraction or surd).
        """
        if u not in self._visited:
            raise UnknownVertex(f"vertex {u} has not been visited")
        if bound < 0:
            return {}
        cutoff = math.floor(bound * self._g.scale)
        dist = distances(self._known_nbrs, self._visited.__contains__, u, cutoff)
        return {
            v: Fraction(d, self._g.scale) for v, d in dist.items() if v not in self._visited
        }

    def nearest_unvisited(self) -> tuple[Fraction, int] | None:
        """Closest unvisited vertex from the current position; ties by smaller ID."""
        best_d = None
        best_v = None
        unvisited = self._into.__contains__
        dist = distances(
            self._known_nbrs, self._visited.__contains__, self.position, nearest=unvisited
        )
        for v, d in dist.items():
            if v in self._visited:
                continue
            if best_d is None or d < best_d or (d == best_d and v < best_v):
                best_d, best_v = d, v
        if best_v is None:
            return None
        return Fraction(best_d, self._g.scale), best_v

    # --- moves ---------------------------------------------------------------------

    def _visit(self, x: int) -> None:
        self._visited.add(x)
        for u in self._into.pop(x, ()):
            del self._boundary[(u, x)]
        for w, wt in self._g._adj[x].items():
            if w not in self._visited:
                self._boundary[(x, w)] = BoundaryEdge(x, w, wt)
                self._into.setdefault(w, set()).add(x)
        self.version += 1

    def _step(self, u: int, v: int) -> Fraction:
        w = self._g._adj[u][v]
        self.tour.steps.append(Step(u, v, w))
        self.tour.total_cost += w
        self.position = v
        return w

    def walk(self, target: int) -> Fraction:
        """Move to a visited vertex along the shortest known path; returns its cost."""
        if target not in self._visited:
            raise IllegalMove(f"walk target {target} has not been visited")
        if target == self.position:
            return Fraction(0)
        res = lex_shortest_path(
            self._known_nbrs, self._visited.__contains__, self.position, target
        )
        if res is None:
            raise IllegalMove(f"no known path from {self.position} to {target}")
        _, path = res
        cost = Fraction(0)
        for a, b in zip(path, path[1:]):
            cost += self._step(a, b)
        return cost

    def traverse(self, e) -> Fraction:
        """Cross boundary edge ``e = (u, v)`` from the current position ``u``."""
        u, v = e[0], e[1]
        if (u, v) not in self._boundary:
            raise IllegalMove(f"({u}, {v}) is not a boundary edge")
        if self.position != u:
            raise IllegalMove(f"searcher is at {self.position}, not at {u}")
        cost = self._step(u, v)
        self._visit(v)
        return cost

    def charge(self, e, amount: Fraction) -> None:
        key = edge_key(e[0], e[1])
        if not self._g.has_edge(*key):
            raise IllegalMove(f"cannot charge non-edge {key}")
        self.ledger[key] = self.ledger.get(key, Fraction(0)) + amount
        self.charge_count[key] = self.charge_count.get(key, 0) + 1

    def ledger_entry(self, u: int, v: int) -> Fraction:
        return self.ledger.get(edge_key(u, v), Fraction(0))

    def ledger_total(self) -> Fraction:
        return sum(self.ledger.values(), Fraction(0))


def start(g: Graph) -> ExplorationState:
    return ExplorationState(g)
