"""Nearest Neighbor on G_k: measured cost against the closed forms."""

import argparse
from fractions import Fraction

from graphexplore.generators import gen_gk
from graphexplore.opt import opt_cactus
from graphexplore.strategies import run_nn


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=10)
    args = ap.parse_args()

    print(f"{'k':>3} {'n':>6} {'NN':>8} {'formula':>8} {'OPT':>7} {'ratio':>8} {'(log2(n+1)+1)/6':>16}")
    for k in range(1, args.kmax + 1):
        inst = gen_gk(k)
        g = inst.graph
        nn = run_nn(g).cost
        opt = opt_cactus(g).length
        lower = Fraction(k + 2, 6)  # log2(n+1) = k+1 exactly
        print(f"{k:>3} {g.n:>6} {str(nn):>8} {str(inst.predictions['nn_cost']):>8} "
              f"{str(opt):>7} {float(nn / opt):>8.4f} {float(lower):>16.4f}")


if __name__ == "__main__":
    main()
