"""Offline optimum tours: closed form on cacti, Held-Karp on small graphs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Cycle, Edge, Graph, cycle_decomposition
from .paths import distances

__all__ = ["DEFAULT_EXACT_LIMIT", "InstanceTooLarge", "OptResult", "opt_cactus", "opt_exact"]

DEFAULT_EXACT_LIMIT = 14


class InstanceTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OptResult:
    length: Fraction
    method: str
    per_cycle_detail: tuple[tuple[Cycle, Edge | None, Fraction], ...] = ()


def opt_cactus(g: Graph) -> OptResult:
    """Optimal closed tour of a cactus.

    Bridges are walked twice.  A cycle is either walked once around, or, when it
    has a long edge, everything but the long edge is walked twice; this is
    ``min(|C|, 2(|C| - max edge))``.  Raises ``NotCactusError`` on other graphs.
    """
    cycles, bridges = cycle_decomposition(g)
    length = 2 * sum((e.weight for e in bridges), Fraction(0))
    detail = []
    for c in cycles:
        total = c.total_length
        heaviest = max(c.edges, key=lambda e: e.weight)
        around = total
        skip_long = 2 * (total - heaviest.weight)
        contribution = min(around, skip_long)
        detail.append((c, heaviest if skip_long < around else None, contribution))
        length += contribution
    return OptResult(length, "cactus-closed-form", tuple(detail))


def _closure(g: Graph, order: list[int]) -> list[list[int]]:
    rows = []
    for v in order:
        dist = distances(g._int_neighbors, lambda _x: True, v)
        rows.append([dist[w] for w in order])
    return rows


def opt_exact(g: Graph, limit: int = DEFAULT_EXACT_LIMIT) -> OptResult:
    """Shortest closed walk from the start visiting every vertex (Held-Karp).

    Runs on the shortest-path metric closure, so revisits are accounted for.
    Refuses graphs with more than ``limit`` vertices.
    """
    if g.n > limit:
        raise InstanceTooLarge(f"{g.n} vertices exceeds the exact-oracle limit {limit}")
    if g.n == 1:
        return OptResult(Fraction(0), "exact-dp")
    others = sorted(v for v in g.vertices if v != g.start)
    order = [g.start] + others
    closure = _closure(g, order)
    k = len(others)
    max_d = max(max(row) for row in closure)
    inf = max_d * (g.n + 1) + 1
    dtype = np.int64 if inf < 2**62 // 4 else object

    dmat = np.array([row[1:] for row in closure[1:]], dtype=dtype)
    from_start = np.array(closure[0][1:], dtype=dtype)
    dp = np.full((1 << k, k), inf, dtype=dtype)
    bits = np.arange(k)
    dp[1 << bits, bits] = from_start
    for mask in range(1, 1 << k):
        row = dp[mask]
        inside = (mask >> bits) & 1 == 1
        outside = ~inside
        if not outside.any():
            continue
        cand = (row[inside][:, None] + dmat[inside]).min(axis=0)
        ks = bits[outside]
        targets = mask | (1 << ks)
        dp[targets, ks] = np.minimum(dp[targets, ks], cand[outside])
    full = (1 << k) - 1
    best = min(int(dp[full, j]) + closure[j + 1][0] for j in range(k))
    return OptResult(Fraction(best, g.scale), "exact-dp")
