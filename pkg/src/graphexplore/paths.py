"""Dijkstra variants on integer-scaled weights.

Both routines take a ``neighbors(v)`` callable yielding ``(w, weight)`` pairs and an
``expandable(v)`` predicate.  Vertices that are not expandable can end a path but
never appear in its interior; this is how the known-graph walkability rule of the
exploration engine is expressed, while the full graph simply passes ``lambda v: True``.
"""

from __future__ import annotations

import heapq
from typing import Callable, Iterable

Neighbors = Callable[[int], Iterable[tuple[int, int]]]
Expandable = Callable[[int], bool]


def distances(
    neighbors: Neighbors,
    expandable: Expandable,
    source: int,
    cutoff: int | None = None,
    nearest: Expandable | None = None,
) -> dict[int, int]:
    """Settled distances from ``source``; with ``cutoff`` only those <= cutoff.

    With ``nearest`` the search stops once every vertex tied with the closest
    vertex satisfying the predicate has been settled.
    """
    dist: dict[int, int] = {}
    heap = [(0, source)]
    while heap:
        d, v = heapq.heappop(heap)
        if v in dist:
            continue
        if cutoff is not None and d > cutoff:
            break
        dist[v] = d
        if nearest is not None and cutoff is None and nearest(v):
            cutoff = d
        if v != source and not expandable(v):
            continue
        for w, wt in neighbors(v):
            if w not in dist:
                heapq.heappush(heap, (d + wt, w))
    return dist


def lex_shortest_path(
    neighbors: Neighbors,
    expandable: Expandable,
    source: int,
    target: int,
) -> tuple[int, list[int]] | None:
    """Shortest walkable path with the lexicographically smallest vertex sequence.

    Distances to ``target`` are computed backwards, then the path is grown greedily
    from ``source`` by always taking the smallest-ID vertex that stays on a shortest
    path.  Returns ``None`` when ``target`` is unreachable.
    """
    if source == target:
        return 0, [source]
    to_target: dict[int, int] = {}
    heap = [(0, target)]
    while heap:
        d, v = heapq.heappop(heap)
        if v in to_target:
            continue
        to_target[v] = d
        if v == source:
            break
        for w, wt in neighbors(v):
            if w not in to_target and (w == source or expandable(w)):
                heapq.heappush(heap, (d + wt, w))
    if source not in to_target:
        return None

    path = [source]
    cur = source
    while cur != target:
        remaining = to_target[cur]
        best = None
        for w, wt in neighbors(cur):
            if w != target and not expandable(w):
                continue
            if to_target.get(w) is not None and wt + to_target[w] == remaining:
                if best is None or w < best:
                    best = w
        assert best is not None, "backward distances inconsistent"
        path.append(best)
        cur = best
    return to_target[source], path
