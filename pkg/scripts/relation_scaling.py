"""Measure relation length against log2 p for constrained-mode lifts.

Usage: python scripts/relation_scaling.py [--runs 100] [--bits 8 16 32 64 128 256]
Prints one row per prime size and a least-squares fit of mean length on bits.
"""

import argparse
import statistics
import time

from cayleyhash.algebra import next_prime_at_least
from cayleyhash.lifting import build_group_relation, length_budget


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--runs", type=int, default=100)
    ap.add_argument("--bits", type=int, nargs="+", default=[8, 16, 32, 64, 128, 256])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    xs, ys = [], []
    print(f"{'bits':>5} {'budget':>7} {'mean':>8} {'max':>6} {'mean/bits':>9} {'tries':>6} {'sec':>7}")
    for b in args.bits:
        p = next_prime_at_least(2**b)
        t = time.perf_counter()
        rels = [build_group_relation(p, args.seed + i) for i in range(args.runs)]
        dt = time.perf_counter() - t
        lengths = [r.length for r in rels]
        mean = statistics.fmean(lengths)
        xs.append(p.bit_length())
        ys.append(mean)
        print(
            f"{p.bit_length():>5} {length_budget(p):>7} {mean:>8.1f} {max(lengths):>6} "
            f"{mean / p.bit_length():>9.2f} {max(r.tries for r in rels):>6} {dt:>7.2f}"
        )
    if len(xs) > 1:
        fit = statistics.linear_regression(xs, ys)
        print(f"fit: mean length = {fit.slope:.3f} * bits {fit.intercept:+.2f}")


if __name__ == "__main__":
    main()
