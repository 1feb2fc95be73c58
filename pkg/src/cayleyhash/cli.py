"""Command-line front end: ``cayleyhash {hash,girth,attack,verify,bench}``.

Exit codes: 0 success, 1 verification negative, 2 usage or bad parameters,
3 I/O failure, 4 resource guard or retry budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import secrets
import sys
import time
from typing import Optional, Sequence

from cayleyhash.algebra import is_probable_prime, next_prime_at_least
from cayleyhash.girth import (
    DEFAULT_BFS_PRIME_GUARD,
    ResourceGuardError,
    bfs_exact_girth,
    girth_report,
)
from cayleyhash.hasher import HashParams, HashState, hash_bits_naive, hash_bits
from cayleyhash.lifting import (
    LiftBudgetExceeded,
    build_group_relation,
    paper_pipeline,
    verify_relation,
)
from cayleyhash.words import WordSyntaxError, evaluate_word, format_word, parse_word

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_IO, EXIT_GUARD = 0, 1, 2, 3, 4

_POWER = re.compile(r"^(\d+)\s*\^\s*(\d+)$")


class UsageError(Exception):
    pass


def parse_prime(text: str) -> int:
    """Decimal, 0x-hex, ``b^e``, or ``near:<n>`` (smallest prime >= n)."""
    text = text.strip().replace("_", "")
    near = text.startswith("near:")
    if near:
        text = text[len("near:"):]
    m = _POWER.match(text)
    try:
        if m:
            n = int(m.group(1)) ** int(m.group(2))
        else:
            n = int(text, 0)
    except ValueError:
        raise UsageError(f"cannot parse prime specification {text!r}") from None
    if near:
        return next_prime_at_least(n)
    if not is_probable_prime(n):
        raise UsageError(f"p = {n} is not prime")
    return n


def _emit(args, doc: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(doc, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _hash_params(args) -> HashParams:
    try:
        return HashParams(args.p, args.k, args.bit_order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _seed(args) -> int:
    return args.seed if args.seed is not None else secrets.randbits(32)


def cmd_hash(args) -> int:
    params = _hash_params(args)
    try:
        if args.infile and args.infile != "-":
            with open(args.infile, "rb") as fh:
                data = fh.read()
        else:
            data = sys.stdin.buffer.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    state = HashState(params)
    if args.bits:
        try:
            state.update(data.decode("ascii"))
        except (UnicodeDecodeError, ValueError) as exc:
            raise UsageError(f"bad bit string: {exc}") from None
    else:
        state.update_bytes(data)
    digest = state.finalize()
    _emit(args, digest.to_dict(), [digest.hex()])
    return EXIT_OK


def cmd_girth(args) -> int:
    if args.k < 2 and not args.exact_bfs:
        raise UsageError("the guaranteed bound needs k >= 2; use --exact-bfs for k = 1")
    if args.exact_bfs:
        try:
            report = bfs_exact_girth(args.p, args.k, args.length_cap, args.bfs_guard)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        except ResourceGuardError as exc:
            print(
                f"refusing exact BFS: {exc}. The search stores up to ~p^3 matrices; "
                f"raise --bfs-guard only if that fits in memory.",
                file=sys.stderr,
            )
            return EXIT_GUARD
    else:
        report = girth_report(args.p, args.k)
    lines = [
        f"p = {args.p}",
        f"k = {args.k}",
        f"guaranteed_length = {report.guaranteed_length}",
        f"closed_form_estimate = {report.closed_form_estimate}",
    ]
    if args.exact_bfs:
        if report.exact_girth is None:
            lines.append(f"exact_girth: no collision up to length {args.length_cap}")
        else:
            u, v = report.witness
            lines += [
                f"exact_girth = {report.exact_girth}",
                f"witness_u = {format_word(u)}",
                f"witness_v = {format_word(v)}",
            ]
    _emit(args, report.to_dict(), lines)
    return EXIT_OK


def cmd_attack(args) -> int:
    if args.p == 2:
        raise UsageError("p must be an odd prime")
    seed = _seed(args)
    try:
        if args.mode == "paper":
            res = paper_pipeline(args.p, seed)
            doc = res.to_dict()
            doc["note"] = "u(A(2),B(2)) = S mod p; a relation only when S is the identity"
            ok = doc["u_equals_S_mod_p"]
            lines = [
                f"seed = {seed}",
                f"S = {res.S}",
                f"u = {doc['word']}",
                f"length = {doc['length']}",
                f"u = S mod p: {ok}",
            ]
        else:
            rel = build_group_relation(args.p, seed, max_length=args.max_length)
            doc = rel.to_dict()
            ok = rel.verified
            lines = [
                f"seed = {seed}",
                f"word = {doc['word']}",
                f"length = {rel.length}",
                f"verified = {rel.verified}",
            ]
    except LiftBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    _emit(args, doc, lines)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    params = _hash_params(args)
    try:
        word = parse_word(args.word)
    except WordSyntaxError as exc:
        raise UsageError(str(exc)) from None
    value = evaluate_word(word, params.k, params.p)
    ok = verify_relation(word, params.p, params.k)
    doc = {
        "p": str(params.p),
        "k": params.k,
        "word": format_word(word),
        "length": len(word),
        "entries": [str(x) for x in value.entries()],
        "identity": ok,
    }
    _emit(args, doc, [f"{'identity' if ok else 'not identity'}: {value}"])
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_bench(args) -> int:
    params = _hash_params(args)
    seed = _seed(args)
    size = args.size
    if size < 0:
        raise UsageError("size must be >= 0")
    if args.pattern == "constant":
        bits = "0" * size
    else:
        bits = format(random.Random(seed).getrandbits(size), f"0{size}b") if size else ""

    def timed(fn):
        t = time.perf_counter()
        d = fn(params, bits)
        return d, time.perf_counter() - t

    d_run, t_run = timed(hash_bits)
    d_naive, t_naive = timed(hash_bits_naive)

    def rate(t):
        return size / t if t > 0 and size else 0.0

    doc = {
        "p": str(params.p),
        "k": params.k,
        "size_bits": size,
        "seed": seed,
        "pattern": args.pattern,
        "digest": d_run.hex(),
        "paths_agree": d_run.value == d_naive.value,
        "run_length_bits_per_s": rate(t_run),
        "naive_bits_per_s": rate(t_naive),
    }
    lines = [
        f"seed = {seed}",
        f"digest = {doc['digest']}",
        f"run-length: {doc['run_length_bits_per_s']:.3e} bits/s",
        f"naive:      {doc['naive_bits_per_s']:.3e} bits/s",
        f"paths agree: {doc['paths_agree']}",
    ]
    _emit(args, doc, lines)
    return EXIT_OK if doc["paths_agree"] else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=str, required=True, help="prime: decimal, 0x-hex, b^e, or near:<n>")
    common.add_argument("--k", type=int, default=2, help="generator parameter (default 2)")
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--seed", type=int, default=None)

    parser = argparse.ArgumentParser(prog="cayleyhash", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hash", parents=[common], help="hash stdin or a file")
    h.add_argument("--in", dest="infile", default=None)
    h.add_argument("--bits", action="store_true", help="input is an ASCII 0/1 string")
    h.add_argument("--bit-order", choices=["msb_first", "lsb_first"], default="msb_first")
    h.set_defaults(func=cmd_hash)

    g = sub.add_parser("girth", parents=[common], help="collision-free length bounds")
    g.add_argument("--exact-bfs", action="store_true")
    g.add_argument("--length-cap", type=int, default=64)
    g.add_argument("--bfs-guard", type=int, default=DEFAULT_BFS_PRIME_GUARD)
    g.set_defaults(func=cmd_girth)

    a = sub.add_parser("attack", parents=[common], help="relation in the group of A(2), B(2)")
    a.add_argument("--mode", choices=["relation", "paper"], default="relation")
    a.add_argument("--max-length", type=int, default=None)
    a.set_defaults(func=cmd_attack)

    v = sub.add_parser("verify", parents=[common], help="check that a word is the identity mod p")
    v.add_argument("word", help='word in caret grammar, e.g. "A^2 B^-1"')
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", parents=[common], help="run-length vs naive throughput")
    b.add_argument("--size", type=int, default=10**6, help="message size in bits")
    b.add_argument("--pattern", choices=["random", "constant"], default="random")
    b.set_defaults(func=cmd_bench, bit_order="msb_first")

    for p in (g, a, v):
        p.set_defaults(bit_order="msb_first")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.p = parse_prime(args.p)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
