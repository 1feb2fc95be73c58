"""Tabulate the guaranteed collision-free length against exact BFS girth.

Usage: python scripts/girth_table.py [--k 2] [--count 25] [--big-bits 64 128 256]
"""

import argparse

from cayleyhash.algebra import next_prime_at_least
from cayleyhash.girth import bfs_collision, closed_form_estimate, girth_lower_bound
from cayleyhash.words import format_word


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--count", type=int, default=25, help="number of small odd primes > k")
    ap.add_argument("--big-bits", type=int, nargs="*", default=[64, 128, 256])
    args = ap.parse_args()

    print(f"{'p':>6} {'bound':>6} {'estimate':>9} {'bfs':>4}  witness")
    p, done = args.k + 1, 0
    while done < args.count:
        p = next_prime_at_least(p)
        if p == 2:
            p += 1
            continue
        bound = girth_lower_bound(p, args.k)
        depth, u, v, _ = bfs_collision(p, args.k, length_cap=64)
        witness = f"{format_word(u) or 'I'} = {format_word(v)}" if u is not None else "-"
        print(f"{p:>6} {bound:>6} {closed_form_estimate(p, args.k):>9.2f} {depth!s:>4}  {witness}")
        p += 1
        done += 1

    print()
    print(f"{'bits':>5} {'bound':>6} {'estimate':>9}")
    for b in args.big_bits:
        q = next_prime_at_least(2**b)
        print(f"{q.bit_length():>5} {girth_lower_bound(q, args.k):>6} {closed_form_estimate(q, args.k):>9.2f}")


if __name__ == "__main__":
    main()
