"""Immutable weighted undirected graphs with exact rational weights.

Weights are :class:`fractions.Fraction`.  Internally every weight is also kept as an
integer multiple of ``1 / scale`` (``scale`` is the lcm of all denominators), so path
searches run on plain ints and stay exact.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, NamedTuple

from .paths import distances, lex_shortest_path

__all__ = [
    "Cycle",
    "Edge",
    "Graph",
    "GraphClass",
    "GraphError",
    "NotCactusError",
    "classify",
    "cycle_decomposition",
    "dumps",
    "edge_key",
    "loads",
    "long_edge",
    "read_graph",
    "shortest_path",
    "write_graph",
]


class GraphError(ValueError):
    pass


class NotCactusError(GraphError):
    pass


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Edge(NamedTuple):
    u: int
    v: int
    weight: Fraction

    @property
    def key(self) -> tuple[int, int]:
        return edge_key(self.u, self.v)


def _as_weight(w) -> Fraction:
    if isinstance(w, float):
        raise GraphError(f"weights must be exact rationals, got float {w!r}")
    return Fraction(w)


class Graph:
    """Connected simple graph with positive rational weights and a start vertex.

    ``edges`` is any iterable of ``(u, v, weight)``.  ``vertices`` only needs to be
    given for the single-vertex graph; otherwise it is taken from the edges.
    """

    __slots__ = ("vertices", "start", "_adj", "_iadj", "scale", "_edges")

    def __init__(self, edges: Iterable, start: int, vertices: Iterable[int] | None = None):
        adj: dict[int, dict[int, Fraction]] = {}
        canon: dict[tuple[int, int], Fraction] = {}
        for item in edges:
            u, v, w = item
            u, v, w = int(u), int(v), _as_weight(w)
            if u < 0 or v < 0:
                raise GraphError(f"vertex ids must be non-negative: ({u}, {v})")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if w <= 0:
                raise GraphError(f"non-positive weight {w} on edge ({u}, {v})")
            key = edge_key(u, v)
            if key in canon:
                raise GraphError(f"parallel edge between {key[0]} and {key[1]}")
            canon[key] = w
            adj.setdefault(u, {})[v] = w
            adj.setdefault(v, {})[u] = w
        verts = set(adj)
        if vertices is not None:
            given = {int(x) for x in vertices}
            if not verts <= given:
                raise GraphError("edge endpoints missing from the vertex set")
            verts = given
        verts.add(int(start))
        if any(x < 0 for x in verts):
            raise GraphError("vertex ids must be non-negative")
        for x in verts:
            adj.setdefault(x, {})
        if vertices is not None and int(start) not in {int(x) for x in vertices}:
            raise GraphError(f"start {start} is not a vertex")

        self.vertices = frozenset(verts)
        self.start = int(start)
        self._adj = adj
        self._edges = tuple(Edge(u, v, w) for (u, v), w in sorted(canon.items()))
        self.scale = math.lcm(*(w.denominator for w in canon.values())) if canon else 1
        self._iadj = {
            x: {y: int(w * self.scale) for y, w in nbrs.items()} for x, nbrs in adj.items()
        }
        if len(distances(self._int_neighbors, _always, self.start)) != len(self.vertices):
            raise GraphError("graph is not connected")

    # --- basic queries -------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def neighbors(self, v: int) -> dict[int, Fraction]:
        return dict(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def weight(self, u: int, v: int) -> Fraction:
        try:
            return self._adj[u][v]
        except KeyError:
            raise GraphError(f"no edge between {u} and {v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj.get(u, ())

    def total_weight(self) -> Fraction:
        return sum((e.weight for e in self._edges), Fraction(0))

    def with_start(self, start: int) -> Graph:
        return Graph(self._edges, start, self.vertices)

    def _int_neighbors(self, v: int):
        return self._iadj[v].items()

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.vertices, self._edges, self.start) == (other.vertices, other._edges, other.start)

    def __hash__(self):
        return hash((self.vertices, self._edges, self.start))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, start={self.start})"


def _always(_v: int) -> bool:
    return True


# --- classification and cycles -----------------------------------------------------


class GraphClass(enum.Enum):
    TREE = "tree"
    UNICYCLIC = "unicyclic"
    CACTUS = "cactus"
    GENERAL = "general"


@dataclass(frozen=True)
class Cycle:
    """A simple cycle; ``vertices[i]`` and ``vertices[i+1]`` are joined by ``edges[i]``."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    @property
    def total_length(self) -> Fraction:
        return sum((e.weight for e in self.edges), Fraction(0))

    @property
    def keys(self) -> frozenset[tuple[int, int]]:
        return frozenset(e.key for e in self.edges)


def cycle_decomposition(g: Graph) -> tuple[list[Cycle], set[Edge]]:
    """Split the edges of a cactus into its cycles and its bridges.

    Every back edge of a DFS tree closes one cycle along tree edges; in a cactus
    no tree edge is claimed twice.  Raises :class:`NotCactusError` otherwise.
    """
    parent: dict[int, int | None] = {g.start: None}
    depth = {g.start: 0}
    back: list[tuple[int, int]] = []
    stack = [(g.start, iter(sorted(g._adj[g.start])))]
    while stack:
        v, it = stack[-1]
        for w in it:
            if w not in depth:
                parent[w] = v
                depth[w] = depth[v] + 1
                stack.append((w, iter(sorted(g._adj[w]))))
                break
            if w != parent[v] and depth[w] < depth[v]:
                back.append((v, w))
        else:
            stack.pop()

    claimed: set[tuple[int, int]] = set()
    cycles = []
    for low, high in back:
        verts = [low]
        x = low
        while x != high:
            p = parent[x]
            key = edge_key(x, p)
            if key in claimed:
                raise NotCactusError(f"edge {key} lies on more than one cycle")
            claimed.add(key)
            verts.append(p)
            x = p
        # verts runs low -> ... -> high; the back edge closes it
        ring = tuple(reversed(verts))
        edges = tuple(
            Edge(a, b, g._adj[a][b]) for a, b in zip(ring, ring[1:] + ring[:1])
        )
        cycles.append(Cycle(ring, edges))
    cycle_keys = claimed | {edge_key(a, b) for a, b in back}
    bridges = {e for e in g.edges if e.key not in cycle_keys}
    return cycles, bridges


def classify(g: Graph) -> GraphClass:
    if g.m == g.n - 1:
        return GraphClass.TREE
    if g.m == g.n:
        return GraphClass.UNICYCLIC
    try:
        cycle_decomposition(g)
    except NotCactusError:
        return GraphClass.GENERAL
    return GraphClass.CACTUS


def long_edge(c: Cycle) -> Edge | None:
    """The edge of ``c`` heavier than half the cycle, if there is one."""
    total = c.total_length
    heaviest = max(c.edges, key=lambda e: e.weight)
    return heaviest if 2 * heaviest.weight > total else None


def shortest_path(g: Graph, u: int, v: int) -> tuple[Fraction, list[int]]:
    """Length and lexicographically smallest vertex sequence of a shortest u-v path."""
    for x in (u, v):
        if x not in g.vertices:
            raise GraphError(f"unknown vertex {x}")
    d, path = lex_shortest_path(g._int_neighbors, _always, u, v)
    return Fraction(d, g.scale), path


# --- text format -------------------------------------------------------------------


def dumps(g: Graph) -> str:
    lines = [f"graph {g.n} {g.m} {g.start}"]
    for e in g.edges:
        lines.append(f"edge {e.u} {e.v} {e.weight.numerator}/{e.weight.denominator}")
    return "\n".join(lines) + "\n"


def _parse_fraction(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise GraphError(f"bad weight {tok!r}") from None


def loads(text: str) -> Graph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "graph":
            if header is not None or len(parts) != 4:
                raise GraphError(f"line {lineno}: bad graph header")
            header = tuple(int(p) for p in parts[1:])
        elif parts[0] == "edge":
            if header is None or len(parts) != 4:
                raise GraphError(f"line {lineno}: bad edge line")
            edges.append((int(parts[1]), int(parts[2]), _parse_fraction(parts[3])))
        else:
            raise GraphError(f"line {lineno}: unknown record {parts[0]!r}")
    if header is None:
        raise GraphError("missing graph header")
    n, m, start = header
    if len(edges) != m:
        raise GraphError(f"header announces {m} edges, found {len(edges)}")
    vertices = [start] if m == 0 else None
    g = Graph(edges, start, vertices)
    if g.n != n:
        raise GraphError(f"header announces {n} vertices, found {g.n}")
    return g


def read_graph(path: str | Path) -> Graph:
    return loads(Path(path).read_text())


def write_graph(g: Graph, path: str | Path) -> None:
    Path(path).write_text(dumps(g))
