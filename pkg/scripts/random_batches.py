"""Worst Blocking ratios over seeded random trees, unicyclic graphs and cacti for a delta sweep."""

import argparse

from graphexplore.generators import FAMILIES, gen_random
from graphexplore.harness import blocking_bound
from graphexplore.graph import classify
from graphexplore.opt import opt_cactus
from graphexplore.strategies import BlockingParams, parse_delta, run_blocking


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--n", type=int, default=40)
    ap.add_argument("--deltas", nargs="+", default=["-3/4", "-1/2", "1/sqrt2-1", "0", "1/2", "1"])
    args = ap.parse_args()

    for fam in FAMILIES:
        for text in args.deltas:
            delta = parse_delta(text)
            worst = 0
            bound = None
            for seed in range(args.count):
                g = gen_random(fam, args.n, seed).graph
                bound = blocking_bound(classify(g), delta)
                ratio = run_blocking(g, BlockingParams(delta)).cost / opt_cactus(g).length
                worst = max(worst, ratio)
            shown = "-" if bound is None else f"{float(bound):.4f}"
            print(f"{fam:>10} delta={text:>10} worst={float(worst):.4f} bound={shown}")


if __name__ == "__main__":
    main()
