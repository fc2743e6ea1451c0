"""Blocking on the two cycle gadgets as m grows; ratios approach their limits from below."""

import argparse
from fractions import Fraction

from graphexplore.generators import gen_double_sp, gen_sp_cycle
from graphexplore.opt import opt_cactus
from graphexplore.strategies import BlockingParams, run_blocking


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--deltas", nargs="+", default=["-1/2", "0", "1", "2"])
    ap.add_argument("--ms", nargs="+", type=int, default=[1, 2, 5, 10, 20, 40])
    args = ap.parse_args()

    for text in args.deltas:
        delta = Fraction(text)
        for gen in (gen_double_sp, gen_sp_cycle):
            print(f"{gen.__name__} delta={delta}")
            for m in args.ms:
                inst = gen(m, delta)
                run = run_blocking(inst.graph, BlockingParams(delta, inst.tie_break))
                ratio = run.cost / opt_cactus(inst.graph).length
                line = f"  m={m:>3} n={inst.graph.n:>5} ratio={float(ratio):.6f}"
                limit = inst.predictions.get("ratio_limit")
                if limit is not None:
                    line += f" limit={float(limit):.6f} gap={float(limit - ratio):.2e}"
                print(line)


if __name__ == "__main__":
    main()
