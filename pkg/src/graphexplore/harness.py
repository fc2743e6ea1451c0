"""Batch experiments: instances x strategies -> exact ratio rows.

Config files are line-oriented::

    # comment
    instance gk k=1..6
    instance random family=cactus n=5..12 seed=0..9
    instance double_sp m=40 delta=-1/2
    instance file path=graphs/foo.graph
    strategy nn
    strategy dfs
    strategy blocking delta=1/sqrt2-1 tie=weight
    audit yes
    exact_limit 14
    jobs 4

``a..b`` expands to an inclusive integer range; several ranges in one line
expand to their product.  Rows come out in config order: instances first, then
strategies.
"""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .generators import InstanceDescriptor, generate, read_instance
from .graph import GraphClass, classify
from .opt import DEFAULT_EXACT_LIMIT, InstanceTooLarge, opt_cactus, opt_exact
from .strategies import TIE_BREAKS, BlockingParams, format_delta, parse_delta, run_blocking, run_dfs, run_nn
from .surd import exact_sign

__all__ = [
    "CSV_COLUMNS",
    "ConfigError",
    "ExperimentConfig",
    "ReportRow",
    "StrategySpec",
    "blocking_bound",
    "compute_opt",
    "format_decimal",
    "load_config",
    "parse_config",
    "render_table",
    "rows_to_csv",
    "run_experiment",
]

CSV_COLUMNS = ["instance", "family", "params", "strategy", "delta", "cost", "opt", "ratio", "bounds_ok"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class StrategySpec:
    name: str
    delta: object = None
    tie_break: str | None = None

    @property
    def label(self) -> str:
        if self.name != "blocking":
            return self.name
        tie = f",tie={self.tie_break}" if self.tie_break else ""
        return f"blocking(delta={format_delta(self.delta)}{tie})"


@dataclass
class ExperimentConfig:
    instances: list[tuple[str, dict]] = field(default_factory=list)
    strategies: list[StrategySpec] = field(default_factory=list)
    audit: bool = True
    exact_limit: int = DEFAULT_EXACT_LIMIT
    jobs: int = 1


@dataclass
class ReportRow:
    instance: str
    family: str
    params: str
    strategy: str
    delta: str
    cost: Fraction
    opt: Fraction
    opt_method: str
    bound_checked: tuple[str, bool] | None = None
    violations: list[str] = field(default_factory=list)

    @property
    def ratio(self) -> Fraction:
        return self.cost / self.opt

    @property
    def bounds_ok(self) -> bool | None:
        if self.bound_checked is None and not self.violations:
            return None
        return (self.bound_checked is None or self.bound_checked[1]) and not self.violations


# --- config parsing ---------------------------------------------------------------------


def _expand(value: str) -> list[str]:
    if ".." in value:
        lo, hi = value.split("..", 1)
        try:
            return [str(i) for i in range(int(lo), int(hi) + 1)]
        except ValueError:
            raise ConfigError(f"bad range {value!r}") from None
    return [value]


def _kv(tokens: list[str], lineno: int) -> dict[str, str]:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise ConfigError(f"line {lineno}: expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def parse_config(text: str, base: Path | None = None) -> ExperimentConfig:
    cfg = ExperimentConfig()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "instance":
            if not rest:
                raise ConfigError(f"line {lineno}: instance needs a family")
            family, params = rest[0], _kv(rest[1:], lineno)
            if family == "file" and base is not None and "path" in params:
                params["path"] = str((base / params["path"]).resolve())
            keys = list(params)
            for combo in itertools.product(*(_expand(params[k]) for k in keys)):
                cfg.instances.append((family, dict(zip(keys, combo))))
        elif head == "strategy":
            if not rest:
                raise ConfigError(f"line {lineno}: strategy needs a name")
            name, params = rest[0], _kv(rest[1:], lineno)
            if name in ("nn", "dfs"):
                if params:
                    raise ConfigError(f"line {lineno}: {name} takes no parameters")
                cfg.strategies.append(StrategySpec(name))
            elif name == "blocking":
                tie = params.get("tie")
                if tie is not None and tie not in TIE_BREAKS:
                    raise ConfigError(f"line {lineno}: tie must be one of {TIE_BREAKS}")
                try:
                    delta = parse_delta(params.get("delta", "0"))
                except ValueError as exc:
                    raise ConfigError(f"line {lineno}: {exc}") from None
                cfg.strategies.append(StrategySpec("blocking", delta, tie))
            else:
                raise ConfigError(f"line {lineno}: unknown strategy {name!r}")
        elif head in ("audit", "exact_limit", "jobs"):
            if len(rest) != 1:
                raise ConfigError(f"line {lineno}: {head} takes one value")
            if head == "audit":
                cfg.audit = rest[0].lower() in ("yes", "true", "on", "1")
            else:
                try:
                    setattr(cfg, head, int(rest[0]))
                except ValueError:
                    raise ConfigError(f"line {lineno}: {head} needs an integer") from None
        else:
            raise ConfigError(f"line {lineno}: unknown directive {head!r}")
    return cfg


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    return parse_config(path.read_text(), base=path.parent)


def _build_instance(family: str, params: dict) -> InstanceDescriptor:
    if family == "file":
        return read_instance(params["path"])
    params = dict(params)
    if family == "random":
        if "family" not in params:
            raise ConfigError("random instances need family=tree|unicyclic|cactus")
        family = params.pop("family")
    conv = {}
    for k, v in params.items():
        conv[k] = parse_delta(v) if k == "delta" else v
    try:
        return generate(family, **conv)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"cannot build {family} {params}: {exc}") from None


# --- bounds and optimum -----------------------------------------------------------------


def compute_opt(inst: InstanceDescriptor, exact_limit: int = DEFAULT_EXACT_LIMIT) -> tuple[Fraction, str]:
    """Optimum for the ratio denominator and how it was obtained.

    Cacti use the closed form, small general graphs Held-Karp.  Larger general
    graphs fall back to a generator-supplied witness tour; that value is only an
    upper bound, so the resulting ratio is a lower bound.
    """
    g = inst.graph
    if classify(g) is not GraphClass.GENERAL:
        return opt_cactus(g).length, "cactus-closed-form"
    if g.n <= exact_limit:
        return opt_exact(g, exact_limit).length, "exact-dp"
    if "opt_witness" in inst.predictions:
        return inst.predictions["opt_witness"], "witness-upper-bound"
    raise InstanceTooLarge(
        f"{inst.name}: general graph with {g.n} vertices exceeds exact_limit={exact_limit}"
    )


def blocking_bound(graph_class: GraphClass, delta):
    """Competitive ratio guaranteed for Blocking(delta) on the given class, or None."""
    if exact_sign(delta + 1) <= 0 or graph_class is GraphClass.GENERAL:
        return None
    if exact_sign(delta) > 0:
        return 4 + 2 * delta
    extra = (delta * delta + delta / 2) / (1 + delta)
    if graph_class is GraphClass.UNICYCLIC:
        return max(4 + 2 * delta, 3 + extra)
    return 4 + extra


def _run_one(task) -> ReportRow:
    family, params, spec, audit, exact_limit = task
    inst = _build_instance(family, params)
    g = inst.graph
    opt, method = compute_opt(inst, exact_limit)
    if spec.name == "nn":
        run = run_nn(g)
    elif spec.name == "dfs":
        run = run_dfs(g)
    else:
        tie = spec.tie_break or inst.tie_break
        run = run_blocking(g, BlockingParams(spec.delta, tie), audit=audit)
    violations = list(run.violations)
    if not (run.state.is_complete and run.tour.closed):
        violations.append("tour incomplete or not closed")
    if spec.name == "blocking" and run.state.ledger_total() != run.cost:
        violations.append("ledger total differs from tour cost")

    bound = None
    ratio = run.cost / opt if opt else Fraction(0)
    gclass = classify(g)
    if spec.name == "nn" and "nn_cost" in inst.predictions:
        bound = ("nn_formula", run.cost == inst.predictions["nn_cost"])
    elif spec.name == "blocking":
        if inst.family == "planar" and exact_sign(spec.delta) <= 0:
            m = int(inst.params["m"])
            bound = ("planar_lb", run.cost >= 2 * m * m and ratio >= Fraction(m, 3))
        else:
            limit = blocking_bound(gclass, spec.delta)
            if limit is not None and method != "witness-upper-bound":
                bound = ("competitive", exact_sign(ratio - limit) <= 0)
    return ReportRow(
        inst.name,
        inst.family,
        ";".join(f"{k}={v}" for k, v in inst.params.items()),
        spec.label,
        format_delta(spec.delta) if spec.name == "blocking" else "",
        run.cost,
        opt,
        method,
        bound,
        violations,
    )


def run_experiment(cfg: ExperimentConfig) -> list[ReportRow]:
    tasks = [
        (family, params, spec, cfg.audit, cfg.exact_limit)
        for family, params in cfg.instances
        for spec in cfg.strategies
    ]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(_run_one, tasks))
    return [_run_one(t) for t in tasks]


# --- rendering --------------------------------------------------------------------------


def format_decimal(x, digits: int = 6) -> str:
    """Render a Fraction or surd for humans; comparisons never go through this."""
    return f"{float(x):.{digits}g}"


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _ok(row: ReportRow) -> str:
    ok = row.bounds_ok
    return "" if ok is None else ("yes" if ok else "no")


def rows_to_csv(rows: list[ReportRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([r.instance, r.family, r.params, r.strategy, r.delta,
                    _frac(r.cost), _frac(r.opt), _frac(r.ratio), _ok(r)])
    return buf.getvalue()


def render_table(rows: list[ReportRow]) -> str:
    header = ["instance", "strategy", "cost", "opt", "ratio", "bounds_ok"]
    body = [
        [r.instance, r.strategy, format_decimal(r.cost), format_decimal(r.opt)
         + ("*" if r.opt_method == "witness-upper-bound" else ""), format_decimal(r.ratio), _ok(r)]
        for r in rows
    ]
    widths = [max(len(x) for x in col) for col in zip(header, *body)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(lines) + "\n"
