"""Command line: ``explore run | gen | opt | reproduce``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .claims import render_claims, reproduce
from .generators import dump_meta, generate, write_instance
from .graph import GraphClass, GraphError, classify, dumps, read_graph
from .harness import ConfigError, load_config, render_table, rows_to_csv, run_experiment
from .opt import DEFAULT_EXACT_LIMIT, InstanceTooLarge, opt_cactus, opt_exact
from .strategies import parse_delta


def _parse_params(items: list[str]) -> dict:
    out = {}
    for item in items:
        if "=" not in item:
            raise SystemExit(f"bad --params entry {item!r}, expected key=value")
        k, v = item.split("=", 1)
        out[k] = parse_delta(v) if k == "delta" else v
    return out


def cmd_run(args) -> int:
    cfg = load_config(args.config)
    if args.jobs is not None:
        cfg.jobs = args.jobs
    rows = run_experiment(cfg)
    if args.csv:
        Path(args.csv).write_text(rows_to_csv(rows))
    sys.stdout.write(rows_to_csv(rows) if args.format == "csv" else render_table(rows))
    failed = [r for r in rows if r.bounds_ok is False]
    for r in failed:
        for v in r.violations:
            print(f"audit: {r.instance} {r.strategy}: {v}", file=sys.stderr)
        if r.bound_checked and not r.bound_checked[1]:
            print(f"bound: {r.instance} {r.strategy}: {r.bound_checked[0]} not satisfied", file=sys.stderr)
    return 1 if failed else 0


def cmd_gen(args) -> int:
    inst = generate(args.family, **_parse_params(args.params))
    if args.out:
        graph_path, meta_path = write_instance(inst, args.out)
        print(f"wrote {graph_path} and {meta_path} ({inst.graph.n} vertices, {inst.graph.m} edges)")
    else:
        sys.stdout.write(dumps(inst.graph))
        sys.stdout.write(dump_meta(inst))
    return 0


def cmd_opt(args) -> int:
    g = read_graph(args.graph)
    if args.exact or classify(g) is GraphClass.GENERAL:
        res = opt_exact(g, args.limit)
    else:
        res = opt_cactus(g)
    print(f"opt {res.length} ({float(res.length):.6g}) method={res.method}")
    return 0


def cmd_reproduce(args) -> int:
    results = reproduce()
    sys.stdout.write(render_claims(results))
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="explore", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run an experiment config")
    r.add_argument("--config", required=True)
    r.add_argument("--format", choices=("table", "csv"), default="table")
    r.add_argument("--csv", help="also write the CSV report here")
    r.add_argument("--jobs", type=int)
    r.set_defaults(func=cmd_run)

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("--family", required=True)
    g.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
    g.add_argument("--out", help="graph file; the sidecar goes to <out>.meta")
    g.set_defaults(func=cmd_gen)

    o = sub.add_parser("opt", help="optimal tour length of a graph file")
    o.add_argument("--graph", required=True)
    o.add_argument("--exact", action="store_true", help="force Held-Karp")
    o.add_argument("--limit", type=int, default=DEFAULT_EXACT_LIMIT)
    o.set_defaults(func=cmd_opt)

    rp = sub.add_parser("reproduce", help="run every acceptance claim")
    rp.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, GraphError, InstanceTooLarge, ValueError, OSError) as exc:
        print(f"explore: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
