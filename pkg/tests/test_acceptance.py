"""One test per acceptance criterion; each records a PASS/FAIL line for the summary."""

import random
import statistics
import time

import pytest

from cayleyhash.algebra import Mat2, mat_mul, next_prime_at_least, sanov_form_check
from cayleyhash.girth import (
    alternation_extremality_check,
    bfs_collision,
    girth_lower_bound,
    growth_sequence,
    odd_length_extremality_check,
)
from cayleyhash.hasher import HashParams, hash_bits
from cayleyhash.lifting import (
    build_group_relation,
    euclidean_factor,
    length_budget,
    tabulated_correction_cases,
    residue_mod4,
    sanov_correction,
    sanov_reduce,
    small_sl2_matrices,
    verify_relation,
)
from cayleyhash.words import evaluate_word, parse_word
from conftest import brute_eval, first_odd_primes, random_positive_word, random_reduced_word

P256 = next_prime_at_least(2**256)
P64 = next_prime_at_least(2**64)


def _line(n, ok, what, elapsed, limit):
    status = "PASS" if ok and elapsed < limit else "FAIL"
    return f"criterion {n}: {status} {what} [{elapsed:.3f}s, limit {limit}s]"


def test_c1_hash_anchor(record):
    t = time.perf_counter()
    digest = hash_bits(HashParams(101, 2), "1000110")
    elapsed = time.perf_counter() - t
    word = parse_word("B A^3 B^2 A")
    oracle = tuple(x % 101 for x in brute_eval("BAAABBA", 2))
    ok = digest.value.entries() == (25, 56, 54, 20) == oracle and evaluate_word(word, 2, 101) == digest.value
    record(_line(1, ok, "hash(1000110) = (25,56;54,20) at p=101, k=2", elapsed, 0.001))
    assert ok and elapsed < 0.001


def _check_recurrence(k, n):
    t = k * k + 2
    terms = [m.entries() for m in growth_sequence(k, n).terms]
    return all(
        terms[j][i] == t * terms[j - 1][i] - (terms[j - 2][i] if j >= 2 else (1, 0, 0, 1)[i])
        for j in range(1, n) for i in range(4)
    ), terms


def test_c2_recurrences(record):
    t = time.perf_counter()
    ok2, _ = _check_recurrence(2, 40)
    ok3, terms3 = _check_recurrence(3, 40)
    seeds = terms3[0][0] == 10 and terms3[1][0] == 109 and terms3[0][1] == 3 and terms3[1][1] == 33
    elapsed = time.perf_counter() - t
    ok = ok2 and ok3 and seeds
    record(_line(2, ok, "C(2)^n obeys x_n = 6x_{n-1} - x_{n-2}, C(3)^n obeys 11; n <= 40", elapsed, 1))
    assert ok and elapsed < 1


def test_c3_256_bit_girth(record):
    t = time.perf_counter()
    g2, g3 = girth_lower_bound(P256, 2), girth_lower_bound(P256, 3)
    elapsed = time.perf_counter() - t
    ok = 200 <= g2 <= 203 and 147 <= g3 <= 149
    record(_line(3, ok, f"p = 2^256+297: bound {g2} for k=2 (want [200,203]), {g3} for k=3 (want [147,149])", elapsed, 1))
    assert ok and elapsed < 1


def test_c4_extremality(record):
    t = time.perf_counter()
    failures = []
    for k in (2, 3):
        for n in range(1, 15):
            ok = alternation_extremality_check(k, n) if n % 2 == 0 else odd_length_extremality_check(k, n)
            if not ok:
                failures.append((k, n))
    elapsed = time.perf_counter() - t
    ok = not failures
    record(_line(4, ok, f"alternating words dominate all 2^n positive words, n <= 14, k in {{2,3}}; counterexamples {failures}", elapsed, 120))
    assert ok and elapsed < 120


def test_c5_bfs_consistency(record):
    t = time.perf_counter()
    primes = first_odd_primes(25)
    bad, witnessed = [], 0
    for p in primes:
        bound = girth_lower_bound(p, 2)
        depth, u, v, _ = bfs_collision(p, 2, length_cap=64)
        if depth is not None and depth <= bound:
            bad.append(p)
        if depth is not None:
            if evaluate_word(u, 2, p) != evaluate_word(v, 2, p) or u == v:
                bad.append(p)
            witnessed += 1
    elapsed = time.perf_counter() - t
    ok = not bad and witnessed == len(primes)
    record(_line(5, ok, f"BFS over first 25 odd primes: no collision within the bound, {witnessed} verified witnesses above it", elapsed, 300))
    assert ok and elapsed < 300


def test_c6_attack_validity(record):
    t = time.perf_counter()
    rows, ok = [], True
    for p in (5, 101, 1009, P64, P256):
        lengths = []
        for seed in range(100):
            rel = build_group_relation(p, seed)
            ok &= verify_relation(rel.word, p, 2) and rel.word.has_negative and rel.length <= length_budget(p)
            lengths.append(rel.length)
        rows.append((p.bit_length(), max(lengths), sum(lengths) / len(lengths)))
    elapsed = time.perf_counter() - t
    # O(log p): mean length is linear in the bit size with slope within the budget constant
    fit = statistics.linear_regression([b for b, _, _ in rows], [mu for _, _, mu in rows])
    ok &= fit.slope <= 4
    sweep = ", ".join(f"{b}-bit max {m} mean {mu:.1f}" for b, m, mu in rows)
    record(_line(
        6, ok,
        f"500 relations verified with negative exponents, length <= 4 log2 p + 16; "
        f"mean length ~ {fit.slope:.2f} log2 p {fit.intercept:+.1f} ({sweep})",
        elapsed, 120,
    ))
    assert ok and elapsed < 120


def test_c7_round_trips(record):
    t = time.perf_counter()
    rng = random.Random(2024)
    ok = True
    for _ in range(1000):
        w = random_positive_word(rng, rng.randint(0, 1000))
        ok &= euclidean_factor(evaluate_word(w, 1)) == w
    for _ in range(1000):
        u = random_reduced_word(rng, rng.randint(0, 24))
        ok &= sanov_reduce(evaluate_word(u, 2)) == u
    elapsed = time.perf_counter() - t
    record(_line(7, ok, "euclidean_factor and sanov_reduce invert evaluation on 1000 words each", elapsed, 60))
    assert ok and elapsed < 60


def _random_member(residue, rng):
    """Random det-1 integer matrix in the given class mod 4.

    A small representative times a random element of the level-4 congruence
    kernel, generated by A(4) and B(4).
    """
    reps = [s for s in small_sl2_matrices() if tuple(x % 4 for x in s) == tuple(residue)]
    if not reps:
        raise LookupError(f"no determinant-1 integer matrix is congruent to {residue} mod 4")
    m = Mat2(*rng.choice(reps))
    for _ in range(rng.randint(1, 6)):
        e = rng.choice([-3, -2, -1, 1, 2, 3])
        g = Mat2(1, 4 * e, 0, 1) if rng.random() < 0.5 else Mat2(1, 0, 4 * e, 1)
        m = mat_mul(m, g)
    assert m.det() == 1 and residue_mod4(m) == tuple(residue)
    return m


def _correction_class_ok(case, rng):
    for _ in range(10):
        m = _random_member(case["residue"], rng)
        s = sanov_correction(m).S
        if not (s.det() == 1 and s.max_abs_entry() <= 5 and sanov_form_check(m @ s)):
            return False
    return True


_CASES = tabulated_correction_cases()
_UNATTAINABLE = {c["case"] for c in _CASES if c["residue_det_mod4"] != 1}


@pytest.mark.parametrize(
    "case",
    [
        pytest.param(
            c,
            id=f"class{c['case']}",
            marks=[pytest.mark.xfail(raises=LookupError, strict=True, reason="class has det 3 mod 4; no det-1 member exists")]
            if c["case"] in _UNATTAINABLE else [],
        )
        for c in _CASES
    ],
)
def test_c8_correction_table(case, record):
    rng = random.Random(case["case"])
    t = time.perf_counter()
    try:
        ok = _correction_class_ok(case, rng)
    except LookupError as exc:
        record(f"criterion 8: FAIL(unattainable) class {case['case']} residue {case['residue']}: {exc}")
        raise
    elapsed = time.perf_counter() - t
    record(_line(8, ok, f"class {case['case']} residue {case['residue']}: 10 random members corrected", elapsed, 10))
    assert ok and elapsed < 10


def test_c9_cross_generator_identity(record):
    t = time.perf_counter()
    lhs = evaluate_word(parse_word("A B A B A B"), 1)
    rhs = evaluate_word(parse_word("A B^-1 A^-1 B"), 2)
    printed = evaluate_word(parse_word("A^2 B^-2 A^-2 B^2"), 2)
    elapsed = time.perf_counter() - t
    ok = lhs == rhs == Mat2(13, 8, 8, 5) and printed == Mat2(241, 64, 64, 17) and printed != lhs
    record(_line(9, ok, "(A(1)B(1))^3 = A(2)B(2)^-1A(2)^-1B(2) = (13,8;8,5); printed length-8 word gives (241,64;64,17)", elapsed, 0.001))
    assert ok and elapsed < 0.001
