"""Acceptance claims, each a function returning a :class:`ClaimResult`.

``reproduce()`` runs them all; the CLI's ``reproduce`` command and the
acceptance tests both go through here.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .generators import (
    InstanceDescriptor,
    gen_double_sp,
    gen_gk,
    gen_planar_lower,
    gen_random,
    gen_sp_cycle,
    gen_spiked_path,
    planar_witness_tour,
)
from .graph import classify, shortest_path
from .harness import compute_opt
from .opt import opt_cactus, opt_exact
from .strategies import CACTUS_DELTA, BlockingParams, run_blocking, run_dfs, run_nn
from .surd import QuadSurd, exact_sign

__all__ = ["CLAIMS", "ClaimResult", "acceptance_corpus", "reproduce", "render_claims"]


@dataclass
class ClaimResult:
    id: str
    claim: str
    measured: str
    bound: str
    passed: bool
    seconds: float = 0.0

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"


def _seeded(family: str, count: int, n_lo: int, n_hi: int, salt: int = 0) -> list[InstanceDescriptor]:
    span = n_hi - n_lo + 1
    return [gen_random(family, n_lo + i % span, seed=salt * 100_000 + i) for i in range(count)]


@lru_cache(maxsize=1)
def acceptance_corpus() -> tuple[InstanceDescriptor, ...]:
    """Shared corpus for the invariant and completeness claims."""
    out = [gen_gk(k) for k in range(1, 6)]
    for fam in ("tree", "unicyclic", "cactus"):
        out += _seeded(fam, 25, 5 if fam == "cactus" else 3, 30, salt=7)
    for m in range(1, 4):
        out.append(gen_spiked_path(m, 1))
    for m in range(1, 6):
        out.append(gen_double_sp(m, Fraction(-1, 2)))
        out.append(gen_double_sp(m, 1))
        out.append(gen_sp_cycle(m, Fraction(-1, 2)))
    out += [gen_planar_lower(m) for m in range(1, 5)]
    return tuple(out)


POSITIVE_DELTAS = (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2))
NONPOSITIVE_DELTAS = (Fraction(0), Fraction(-1, 2), CACTUS_DELTA, Fraction(-3, 4), Fraction(-1))


def _fmt(x) -> str:
    if isinstance(x, QuadSurd):
        return f"{x} ~ {float(x):.6g}"
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x} ~ {float(x):.6g}"
    return str(x)


def _timed(fn):
    def wrapper() -> ClaimResult:
        t0 = time.perf_counter()
        res = fn()
        res.seconds = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# --- G_k ------------------------------------------------------------------------------------


@_timed
def claim_nn_formula() -> ClaimResult:
    t0 = time.perf_counter()
    bad = []
    for k in range(1, 9):
        inst = gen_gk(k)
        nn = run_nn(inst.graph).cost
        opt = opt_cactus(inst.graph).length
        if nn != (k + 2) * 2**k - 2 or opt != 6 * 2**k - 2 * k - 6:
            bad.append(k)
    dt = time.perf_counter() - t0
    return ClaimResult(
        "1", "NN(G_k) and OPT(G_k) closed forms, k=1..8",
        f"mismatches at k={bad}" if bad else f"all exact, {dt:.3f}s",
        "exact, < 1 s", not bad and dt < 1.0,
    )


def _log2_exact(x: int) -> int:
    if x <= 0 or x & (x - 1):
        raise ValueError(f"{x} is not a power of two")
    return x.bit_length() - 1


@_timed
def claim_nn_log_ratio() -> ClaimResult:
    worst = None
    ok = True
    for k in range(1, 9):
        g = gen_gk(k).graph
        ratio = run_nn(g).cost / opt_cactus(g).length
        bound = Fraction(_log2_exact(g.n + 1) + 1, 6)
        slack = ratio - bound
        ok &= slack >= 0
        if worst is None or slack < worst[0]:
            worst = (slack, k, ratio, bound)
    slack, k, ratio, bound = worst
    return ClaimResult(
        "2", "NN ratio >= (log2(n+1)+1)/6 on G_k, k=1..8",
        f"tightest k={k}: {_fmt(ratio)}", f">= {_fmt(bound)}", ok,
    )


@_timed
def claim_shortest_path() -> ClaimResult:
    bad = []
    for k in range(1, 9):
        inst = gen_gk(k)
        d, _ = shortest_path(inst.graph, inst.named["l"], inst.named["r"])
        if d != 2 ** (k + 1) - k - 2:
            bad.append(k)
    return ClaimResult(
        "3", "d(l_k, r_k) = 2^(k+1) - k - 2, k=1..8",
        f"mismatches at k={bad}" if bad else "all exact", "exact", not bad,
    )


# --- upper bounds ---------------------------------------------------------------------------


def _worst_ratio(instances, params: BlockingParams | None, bound) -> tuple[object, str, list[str]]:
    worst, where, problems = Fraction(0), "", []
    for inst in instances:
        p = params or BlockingParams(Fraction(-1, 2), inst.tie_break)
        run = run_blocking(inst.graph, p, audit=True)
        opt = opt_cactus(inst.graph).length
        ratio = run.cost / opt
        problems += [f"{inst.name}: {v}" for v in run.violations]
        if exact_sign(ratio - bound) > 0:
            problems.append(f"{inst.name}: ratio {ratio} above bound")
        if ratio > worst:
            worst, where = ratio, inst.name
    return worst, where, problems


@_timed
def claim_unicyclic_bound() -> ClaimResult:
    t0 = time.perf_counter()
    batch = _seeded("unicyclic", 200, 3, 60, salt=1)
    for m in range(1, 21):
        batch.append(gen_double_sp(m, Fraction(-1, 2)))
        batch.append(gen_sp_cycle(m, Fraction(-1, 2)))
    bound = Fraction(3)
    worst, where, problems = _worst_ratio(batch, None, bound)
    dt = time.perf_counter() - t0
    return ClaimResult(
        "4", f"Blocking(-1/2) <= 3 on {len(batch)} unicyclic graphs",
        f"max {_fmt(worst)} ({where}), {dt:.1f}s" + (f"; {problems[:3]}" if problems else ""),
        "<= 3, < 30 s", not problems and dt < 30,
    )


@_timed
def claim_cactus_bound() -> ClaimResult:
    t0 = time.perf_counter()
    batch = _seeded("cactus", 200, 5, 60, salt=2)
    bound = Fraction(5, 2) + QuadSurd(0, 1)
    worst, where, problems = _worst_ratio(batch, BlockingParams(CACTUS_DELTA), bound)
    dt = time.perf_counter() - t0
    return ClaimResult(
        "5", f"Blocking(1/sqrt2-1) <= 5/2+sqrt2 on {len(batch)} cacti",
        f"max {_fmt(worst)} ({where}), {dt:.1f}s" + (f"; {problems[:3]}" if problems else ""),
        f"<= {_fmt(bound)}, < 30 s", not problems and dt < 30,
    )


# --- lower bounds ---------------------------------------------------------------------------


@_timed
def claim_convergence() -> ClaimResult:
    parts, ok = [], True
    for delta in (Fraction(-1, 2), Fraction(1)):
        inst = gen_double_sp(40, delta)
        run = run_blocking(inst.graph, BlockingParams(delta, inst.tie_break))
        ratio = run.cost / opt_cactus(inst.graph).length
        target = 4 + 2 * delta
        ok &= target - Fraction(1, 5) <= ratio < target
        parts.append(f"delta={delta}: {float(ratio):.6g} (gap {float(target - ratio):.3g})")
    return ClaimResult(
        "6", "double SP m=40 approaches 4+2delta from below",
        "; ".join(parts), "[4+2delta-0.2, 4+2delta)", ok,
    )


@_timed
def claim_planar_blocking() -> ClaimResult:
    parts, ok = [], True
    for m in (6, 9, 12):
        inst = gen_planar_lower(m)
        opt, method = compute_opt(inst)
        for delta in (Fraction(0), Fraction(-1, 2)):
            cost = run_blocking(inst.graph, BlockingParams(delta)).cost
            # opt here is an upper bound, so cost/opt under-reports the true ratio
            good = cost >= 2 * m * m and cost / opt >= Fraction(m, 3)
            ok &= good
            parts.append(f"m={m},d={delta}: {cost}/{opt}")
    return ClaimResult(
        "7a", "planar family: Blocking(0|-1/2) cost >= 2m^2, ratio >= m/3, m=6,9,12",
        "; ".join(parts), "cost >= 2m^2, ratio >= m/3", ok,
    )


@_timed
def claim_planar_opt() -> ClaimResult:
    g = gen_planar_lower(2).graph
    opt = opt_exact(g).length
    tour = planar_witness_tour(2)
    walked = sum(g.weight(a, b) for a, b in zip(tour, tour[1:]))
    return ClaimResult(
        "7b", "planar family: opt_exact(m=2) = 6m = 12",
        f"{opt} (closed tour {'-'.join(map(str, tour))} has length {walked})", "= 12", opt == 12,
    )


# --- structural -----------------------------------------------------------------------------


@_timed
def claim_dfs_equivalence() -> ClaimResult:
    bad, total = [], 0
    for fam, lo in (("tree", 2), ("unicyclic", 3), ("cactus", 5)):
        for inst in _seeded(fam, 100, lo, 40, salt=3):
            total += 1
            if classify(inst.graph).value != fam:
                bad.append(f"{inst.name} misclassified")
                continue
            a = run_dfs(inst.graph).tour.steps
            b = run_blocking(inst.graph, BlockingParams(-1)).tour.steps
            if a != b:
                bad.append(inst.name)
    return ClaimResult(
        "8", f"Blocking(-1) tour == DFS tour on {total} graphs",
        f"{len(bad)} differ" + (f": {bad[:3]}" if bad else ""), "0 differ", not bad,
    )


@_timed
def claim_oracle_agreement() -> ClaimResult:
    t0 = time.perf_counter()
    batch = _seeded("cactus", 200, 5, 12, salt=4)
    bad = [i.name for i in batch if opt_cactus(i.graph).length != opt_exact(i.graph).length]
    dt = time.perf_counter() - t0
    return ClaimResult(
        "9", f"opt_cactus == opt_exact on {len(batch)} cacti, n <= 12",
        f"{len(bad)} disagree, {dt:.1f}s", "0 disagree, < 60 s", not bad and dt < 60,
    )


def _audited_runs(deltas):
    for inst in acceptance_corpus():
        for delta in deltas:
            params = BlockingParams(delta, inst.tie_break)
            yield inst, delta, run_blocking(inst.graph, params, audit=True)


@_timed
def claim_charge_bound() -> ClaimResult:
    runs, problems = 0, []
    for inst, delta, run in _audited_runs(POSITIVE_DELTAS):
        runs += 1
        cap = 4 + 2 * delta
        for key, amount in run.ledger.items():
            if amount > cap * inst.graph.weight(*key):
                problems.append(f"{inst.name} d={delta} edge {key}")
        for key, count in run.state.charge_count.items():
            if count > 1:
                problems.append(f"{inst.name} d={delta} edge {key} x{count}")
        if run.state.ledger_total() != run.cost:
            problems.append(f"{inst.name} d={delta} ledger != cost")
    return ClaimResult(
        "10", f"ledger <= (4+2delta)|e|, single charge ({runs} runs, delta>0)",
        f"{len(problems)} violations" + (f": {problems[:3]}" if problems else ""),
        "0 violations", not problems,
    )


@_timed
def claim_long_edge() -> ClaimResult:
    runs, problems, checks = 0, [], 0
    for inst, delta, run in _audited_runs(POSITIVE_DELTAS + NONPOSITIVE_DELTAS):
        runs += 1
        checks += run.audit_checks
        problems += [f"{inst.name} d={delta}: {v}" for v in run.violations
                     if "long edge" in v]
    return ClaimResult(
        "11", f"long-edge properties ({runs} runs, {checks} audit checks)",
        f"{len(problems)} violations" + (f": {problems[:2]}" if problems else ""),
        "0 violations", not problems and checks > 0,
    )


@_timed
def claim_completeness() -> ClaimResult:
    runs, problems = 0, []
    for inst in acceptance_corpus():
        g = inst.graph
        opt = opt_exact(g).length if g.n <= 14 else opt_cactus(g).length
        candidates = [("nn", run_nn(g)), ("dfs", run_dfs(g))]
        for delta in POSITIVE_DELTAS + NONPOSITIVE_DELTAS:
            candidates.append((f"blocking({delta})", run_blocking(g, BlockingParams(delta, inst.tie_break))))
        for label, run in candidates:
            runs += 1
            t = run.tour
            if not (run.state.is_complete and t.closed and t.is_valid()
                    and set(t.vertex_sequence()) == set(g.vertices)):
                problems.append(f"{inst.name} {label} incomplete")
            if run.cost < opt:
                problems.append(f"{inst.name} {label} cost {run.cost} < opt {opt}")
    return ClaimResult(
        "12", f"every tour complete, closed and >= opt ({runs} runs)",
        f"{len(problems)} problems" + (f": {problems[:3]}" if problems else ""),
        "0 problems", not problems,
    )


CLAIMS = (
    claim_nn_formula,
    claim_nn_log_ratio,
    claim_shortest_path,
    claim_unicyclic_bound,
    claim_cactus_bound,
    claim_convergence,
    claim_planar_blocking,
    claim_planar_opt,
    claim_dfs_equivalence,
    claim_oracle_agreement,
    claim_charge_bound,
    claim_long_edge,
    claim_completeness,
)


def reproduce(claims=CLAIMS) -> list[ClaimResult]:
    return [c() for c in claims]


def render_claims(results: list[ClaimResult]) -> str:
    header = ["id", "claim", "measured", "bound", "verdict"]
    body = [[r.id, r.claim, r.measured, r.bound, r.verdict] for r in results]
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in body]
    npass = sum(r.passed for r in results)
    lines.append(f"{npass}/{len(results)} claims pass")
    return "\n".join(lines) + "\n"
