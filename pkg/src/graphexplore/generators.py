"""Instance families: the worst-case constructions and seeded random graphs.

Vertex IDs are part of each construction.  The strategies break ties by smaller
ID, so every generator numbers its vertices such that those deterministic ties
reproduce the adversarial choices the lower-bound arguments rely on.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .graph import Graph, GraphError, dumps, loads

__all__ = [
    "FAMILIES",
    "InstanceDescriptor",
    "dump_meta",
    "gen_double_sp",
    "gen_gk",
    "gen_planar_lower",
    "gen_random",
    "gen_sp_cycle",
    "gen_spiked_path",
    "generate",
    "load_meta",
    "planar_witness_tour",
    "read_instance",
    "write_instance",
    "spiked_path_lengths",
]


@dataclass
class InstanceDescriptor:
    graph: Graph
    family: str
    params: dict = field(default_factory=dict)
    named: dict[str, int] = field(default_factory=dict)
    predictions: dict[str, Fraction] = field(default_factory=dict)
    tie_break: str = "weight"

    @property
    def name(self) -> str:
        if not self.params:
            return self.family
        inner = ",".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.family}({inner})"


# --- G_k: Nearest Neighbor lower bound on trees -------------------------------------------


def _gk_edges(k: int, next_id: int, edges: list) -> tuple[int, int, int, int]:
    """Append the edges of G_k and return (l, r, m, next free id).

    IDs follow the order in which Nearest Neighbor is meant to visit the vertices:
    first copy, second copy, then the middle vertex.
    """
    if k == 1:
        l, r, m = next_id, next_id + 1, next_id + 2
        edges += [(l, r, 1), (r, m, 1)]
        return l, r, m, next_id + 3
    l1, r1, _, nid = _gk_edges(k - 1, next_id, edges)
    l2, r2, _, nid = _gk_edges(k - 1, nid, edges)
    mid = nid
    edges += [(r1, l2, k), (l2, mid, 1)]
    return l1, r2, mid, nid + 1


def gen_gk(k: int) -> InstanceDescriptor:
    if k < 1:
        raise ValueError("G_k needs k >= 1")
    edges: list = []
    l, r, m, n = _gk_edges(k, 0, edges)
    g = Graph(edges, l)
    two_k = 2**k
    return InstanceDescriptor(
        g,
        "gk",
        {"k": k},
        {"l": l, "r": r, "m": m},
        {
            "n": Fraction(2 ** (k + 1) - 1),
            "nn_cost": Fraction((k + 2) * two_k - 2),
            "opt": Fraction(6 * two_k - 2 * k - 6),
            "p": Fraction(2 ** (k + 1) - k - 2),
            "w": Fraction(3 * two_k - k - 3),
        },
    )


# --- spiked paths: Blocking lower bounds on unicyclic graphs ------------------------------


def _rational_delta(delta) -> Fraction:
    try:
        d = Fraction(delta)
    except TypeError:
        raise ValueError("spiked paths need a rational delta") from None
    if d <= -1:
        raise ValueError("spiked paths need delta > -1")
    return d


def spiked_path_lengths(m: int, delta) -> list[Fraction]:
    """|l_i| = (i + |l_1| + ... + |l_{i-1}|) / (1 + delta) for i = 1..m."""
    d = _rational_delta(delta)
    out: list[Fraction] = []
    acc = Fraction(0)
    for i in range(1, m + 1):
        li = (i + acc) / (1 + d)
        out.append(li)
        acc += li
    return out


@dataclass
class _SpikedPath:
    entry: int
    exit: int
    edges: list
    spike_tips: list[int]
    long_edges: list[tuple[int, int]]
    lengths: list[Fraction]
    next_id: int


def _spiked_path(m: int, delta, first_id: int) -> _SpikedPath:
    """SP_m numbered from ``first_id``: path vertices, l endpoints, entry, spike tips.

    Path: entry -(1)- v_0 -(1/k)- v_1 ... v_{mk} -(l_1)- ... -(l_m)- exit.
    Spike s_i hangs at v_{1+(m-i)k}.  Path vertices come before spike tips, so at
    equal weights the path edge is preferred over the spike.  The entry gets a
    larger ID than every l endpoint, so under the ID tie-break an unblocked l_i
    goes before anything still pending at the entry.
    """
    if m < 1:
        raise ValueError("spiked paths need m >= 1")
    d = _rational_delta(delta)
    k = math.ceil(1 + d) + 1
    step = Fraction(1, k)
    lengths = spiked_path_lengths(m, d)
    path = list(range(first_id, first_id + m * k + 1))
    ends = list(range(path[-1] + 1, path[-1] + 1 + m))
    entry = ends[-1] + 1
    nid = entry + 1
    edges = [(entry, path[0], Fraction(1))]
    edges += [(a, b, step) for a, b in zip(path, path[1:])]
    chain = [path[-1]] + ends
    long_edges = []
    for (a, b), li in zip(zip(chain, chain[1:]), lengths):
        edges.append((a, b, li))
        long_edges.append((a, b))
    tips = []
    for i in range(1, m + 1):
        tip = nid
        nid += 1
        edges.append((path[1 + (m - i) * k], tip, step))
        tips.append(tip)
    return _SpikedPath(entry, ends[-1], edges, tips, long_edges, lengths, nid)


def _sp_meta(sp: _SpikedPath, prefix: str = "") -> dict[str, int]:
    named = {f"{prefix}entry": sp.entry, f"{prefix}exit": sp.exit}
    for i, tip in enumerate(sp.spike_tips, 1):
        named[f"{prefix}s{i}_tip"] = tip
    for i, (a, _) in enumerate(sp.long_edges, 1):
        named[f"{prefix}l{i}_near"] = a
    return named


def gen_spiked_path(m: int, delta) -> InstanceDescriptor:
    """A standalone SP_m, started at its entry node."""
    d = _rational_delta(delta)
    sp = _spiked_path(m, d, 0)
    g = Graph(sp.edges, sp.entry)
    k = math.ceil(1 + d) + 1
    return InstanceDescriptor(
        g,
        "spiked_path",
        {"m": m, "delta": d},
        _sp_meta(sp),
        {
            "k": Fraction(k),
            "sum_l": sum(sp.lengths, Fraction(0)),
            "other_weight": 1 + m * (1 + Fraction(1, k)),
            **{f"l{i}": li for i, li in enumerate(sp.lengths, 1)},
        },
    )


def gen_double_sp(m: int, delta) -> InstanceDescriptor:
    """Two spiked paths closed into one cycle through two hubs.

    ``s`` is the entry of SP1.  Hub A joins s and SP2's exit; hub B joins SP1's
    exit and SP2's entry; all four hub edges have unit length.  SP1 gets the
    smallest IDs, so at s the SP1 entry edge beats the equally long edge to A.
    """
    d = _rational_delta(delta)
    sp1 = _spiked_path(m, d, 0)
    sp2 = _spiked_path(m, d, sp1.next_id)
    hub_b = sp2.next_id
    hub_a = hub_b + 1
    one = Fraction(1)
    edges = sp1.edges + sp2.edges + [
        (sp1.exit, hub_b, one),
        (hub_b, sp2.entry, one),
        (sp2.exit, hub_a, one),
        (hub_a, sp1.entry, one),
    ]
    g = Graph(edges, sp1.entry)
    named = {"s": sp1.entry, "hub_a": hub_a, "hub_b": hub_b}
    named.update(_sp_meta(sp1, "sp1_"))
    named.update(_sp_meta(sp2, "sp2_"))
    sum_l = sum(sp1.lengths, Fraction(0))
    return InstanceDescriptor(
        g,
        "double_sp",
        {"m": m, "delta": d},
        named,
        {"sum_l": sum_l, "ratio_limit": 4 + 2 * d},
        tie_break="id",
    )


def gen_sp_cycle(m: int, delta) -> InstanceDescriptor:
    """One spiked path whose entry and exit are joined through a hub by two unit edges."""
    d = _rational_delta(delta)
    sp = _spiked_path(m, d, 0)
    hub = sp.next_id
    one = Fraction(1)
    edges = sp.edges + [(sp.exit, hub, one), (hub, sp.entry, one)]
    g = Graph(edges, sp.entry)
    named = {"s": sp.entry, "hub": hub}
    named.update(_sp_meta(sp))
    predictions = {"sum_l": sum(sp.lengths, Fraction(0))}
    if d <= 0:
        # the limit is only claimed for non-positive delta
        predictions["ratio_limit"] = 3 + (d * d + d / 2) / (1 + d)
    return InstanceDescriptor(g, "sp_cycle", {"m": m, "delta": d}, named, predictions)


# --- planar family: Blocking degenerates for delta <= 0 -----------------------------------


def gen_planar_lower(m: int) -> InstanceDescriptor:
    """s and p joined by a unit path of m edges and by m paths of weights 1, 1, m.

    IDs: s = 0, the unit path 1..m (p = m), then a_i, b_i pairs.  The unit path's
    first edge thus wins the tie against the unit edges s-a_i.
    """
    if m < 1:
        raise ValueError("planar family needs m >= 1")
    s, p = 0, m
    edges = [(i, i + 1, Fraction(1)) for i in range(m)]
    named = {"s": s, "p": p}
    nid = m + 1
    for i in range(1, m + 1):
        a, b = nid, nid + 1
        nid += 2
        edges += [(s, a, Fraction(1)), (a, b, Fraction(1)), (b, p, Fraction(m))]
        named[f"a{i}"] = a
        named[f"b{i}"] = b
    g = Graph(edges, s)
    return InstanceDescriptor(
        g,
        "planar",
        {"m": m},
        named,
        {
            "n": Fraction(3 * m + 1),
            "opt_upper": Fraction(6 * m),
            "opt_witness": Fraction(6 * m - 2),
            "blocking_cost_lb": Fraction(2 * m * m),
            "ratio_lb": Fraction(m, 3),
        },
    )


def planar_witness_tour(m: int) -> list[int]:
    """A closed tour of length 6m - 2 on the planar family (m >= 1).

    Walk the unit path to p, come back through b_1, a_1, then sweep the
    remaining a_i, b_i pairs out and back from s.
    """
    inst_ids = gen_planar_lower(m).named
    s = inst_ids["s"]
    seq = list(range(0, m + 1)) + [inst_ids["b1"], inst_ids["a1"], s]
    for i in range(2, m + 1):
        a, b = inst_ids[f"a{i}"], inst_ids[f"b{i}"]
        seq += [a, b, a, s]
    return seq


# --- seeded random families ---------------------------------------------------------------


def _random_weight(rng: random.Random, max_num: int, max_den: int) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))


def _random_tree(rng: random.Random, n: int) -> tuple[list[tuple[int, int]], dict[int, int]]:
    parent = {}
    pairs = []
    for v in range(1, n):
        p = rng.randrange(v)
        parent[v] = p
        pairs.append((p, v))
    return pairs, parent


def _tree_path(parent: dict[int, int], a: int, b: int) -> list[tuple[int, int]]:
    def chain(x):
        out = [x]
        while x in parent:
            x = parent[x]
            out.append(x)
        return out

    ca, cb = chain(a), chain(b)
    common = set(ca) & set(cb)
    top_a = next(i for i, x in enumerate(ca) if x in common)
    lca = ca[top_a]
    top_b = cb.index(lca)
    walk = ca[: top_a + 1] + list(reversed(cb[:top_b]))
    return [tuple(sorted(e)) for e in zip(walk, walk[1:])]


FAMILIES = ("tree", "unicyclic", "cactus")


def _close_cycles(rng, n, parent, family, max_cycles):
    """Greedily add chords whose tree paths are pairwise edge-disjoint."""
    want = 1 if family == "unicyclic" else rng.randint(2, max(2, max_cycles or n // 2))
    used: set[tuple[int, int]] = set()
    chords = []
    candidates = [
        (a, b) for a in range(n) for b in range(a + 1, n)
        if parent.get(b) != a and parent.get(a) != b
    ]
    rng.shuffle(candidates)
    for a, b in candidates:
        path = _tree_path(parent, a, b)
        if used.isdisjoint(path):
            used.update(path)
            chords.append((a, b))
            if len(chords) == want:
                break
    return chords


def gen_random(
    family: str,
    n: int,
    seed: int,
    max_num: int = 20,
    max_den: int = 4,
    max_cycles: int | None = None,
) -> InstanceDescriptor:
    """Seeded random tree, unicyclic graph or cactus on vertices 0..n-1, start 0.

    Weights are ``randint(1, max_num) / randint(1, max_den)``.  Cacti come from a
    random tree in which random tree paths are closed into edge-disjoint cycles;
    a cactus here always has at least two cycles so it classifies as such.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown random family {family!r}")
    minimum = {"tree": 1, "unicyclic": 3, "cactus": 5}[family]
    if n < minimum:
        raise ValueError(f"a random {family} needs n >= {minimum}")
    rng = random.Random(f"{family}:{n}:{seed}:{max_num}:{max_den}")
    for _ in range(100):
        pairs, parent = _random_tree(rng, n)
        chords = [] if family == "tree" else _close_cycles(rng, n, parent, family, max_cycles)
        if family != "cactus" or len(chords) >= 2:
            break
    else:
        raise GraphError("could not place two edge-disjoint cycles")
    edges = [(a, b, _random_weight(rng, max_num, max_den)) for a, b in pairs + chords]
    g = Graph(edges, 0, range(n))
    return InstanceDescriptor(
        g,
        family,
        {"n": n, "seed": seed},
        {"s": 0},
        {},
    )


# --- dispatch and sidecar format --------------------------------------------------------------


def generate(family: str, **params) -> InstanceDescriptor:
    """Build an instance by family name; used by the CLI and the experiment config."""
    if family == "gk":
        return gen_gk(int(params["k"]))
    if family == "spiked_path":
        return gen_spiked_path(int(params["m"]), params.get("delta", Fraction(0)))
    if family == "double_sp":
        return gen_double_sp(int(params["m"]), params.get("delta", Fraction(0)))
    if family == "sp_cycle":
        return gen_sp_cycle(int(params["m"]), params.get("delta", Fraction(0)))
    if family == "planar":
        return gen_planar_lower(int(params["m"]))
    if family in FAMILIES:
        extra = {k: int(v) for k, v in params.items() if k in ("max_num", "max_den", "max_cycles")}
        return gen_random(family, int(params["n"]), int(params.get("seed", 0)), **extra)
    raise ValueError(f"unknown family {family!r}")


def dump_meta(inst: InstanceDescriptor) -> str:
    lines = [f"meta family {inst.family}", f"meta tie_break {inst.tie_break}"]
    for k, v in inst.params.items():
        lines.append(f"meta param.{k} {v}")
    for k, v in inst.named.items():
        lines.append(f"meta named.{k} {v}")
    for k, v in inst.predictions.items():
        lines.append(f"meta predict.{k} {v}")
    return "\n".join(lines) + "\n"


def load_meta(text: str) -> dict[str, str]:
    out = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 2)
        if len(parts) != 3 or parts[0] != "meta":
            raise ValueError(f"bad meta line {line!r}")
        out[parts[1]] = parts[2]
    return out


def write_instance(inst: InstanceDescriptor, path: str | Path) -> tuple[Path, Path]:
    """Write ``path`` (graph format) and ``path.meta`` (sidecar)."""
    path = Path(path)
    meta = path.with_name(path.name + ".meta")
    path.write_text(dumps(inst.graph))
    meta.write_text(dump_meta(inst))
    return path, meta


def read_instance(path: str | Path) -> InstanceDescriptor:
    path = Path(path)
    g = loads(path.read_text())
    meta_path = path.with_name(path.name + ".meta")
    if not meta_path.exists():
        return InstanceDescriptor(g, "file", {"path": str(path)})
    meta = load_meta(meta_path.read_text())
    inst = InstanceDescriptor(g, meta.get("family", "file"), tie_break=meta.get("tie_break", "weight"))
    for key, value in meta.items():
        group, _, name = key.partition(".")
        if group == "param":
            inst.params[name] = value
        elif group == "named":
            inst.named[name] = int(value)
        elif group == "predict":
            inst.predictions[name] = Fraction(value)
    return inst
