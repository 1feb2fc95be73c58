"""Compare run-length and per-bit hashing speed on random and constant inputs.

Usage: python scripts/throughput.py [--size 1000000] [--p near:2^256]
"""

import argparse
import random
import time

from cayleyhash.cli import parse_prime
from cayleyhash.hasher import HashParams, hash_bits, hash_bits_naive


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=10**6)
    ap.add_argument("--p", default="near:2^256")
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    params = HashParams(parse_prime(args.p), args.k)
    inputs = {
        "random": format(random.Random(args.seed).getrandbits(args.size), f"0{args.size}b"),
        "constant": "0" * args.size,
    }
    for name, bits in inputs.items():
        rates = {}
        for label, fn in (("run-length", hash_bits), ("naive", hash_bits_naive)):
            t = time.perf_counter()
            d = fn(params, bits)
            rates[label] = (args.size / (time.perf_counter() - t), d.value)
        agree = rates["run-length"][1] == rates["naive"][1]
        print(
            f"{name:>8}: run-length {rates['run-length'][0]:.3e} bits/s, "
            f"naive {rates['naive'][0]:.3e} bits/s, agree={agree}"
        )


if __name__ == "__main__":
    main()
