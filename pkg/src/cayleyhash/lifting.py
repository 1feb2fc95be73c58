"""Lifting attack on the group generated by A(2), B(2) over F_p.

Pipeline: build an integer matrix M with det 1 and M = I mod p, make sure it
lies in the subgroup generated by A(2), B(2) (the "Sanov form": diagonal
1 mod 4, even off-diagonal), then read off its unique reduced word u. Since
M = I mod p, u(A(2), B(2)) = 1 in SL_2(F_p).

Two routes are provided:

* :func:`build_group_relation` draws lifts that are already in Sanov form,
  so the word is a genuine relation mod p.
* :func:`paper_pipeline` follows the classical route: an unconstrained lift,
  its positive A(1)/B(1) factorization, a small correcting matrix S, and the
  reduction of M S. There u evaluates to S mod p, not to the identity.

Relations produced this way contain negative exponents, so they do not give
collisions for the hash, which only ever uses positive words.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product
from typing import Literal, Optional, Union

import gmpy2
import sympy
from sympy.ntheory import sqrt_mod

from cayleyhash.algebra import (
    Mat2,
    is_probable_prime,
    mat_mul,
    next_prime_at_least,
    sanov_form_check,
)
from cayleyhash.words import GenWord, evaluate_word, format_word

LiftMode = Literal["sanov_constrained", "plain"]
Seed = Union[int, random.Random, None]

CORRECTION_BOUND = 5
TRIAL_DIVISION_LIMIT = 10**6
# relation length budget: slope * log2(p) + intercept
LENGTH_SLOPE = 4
LENGTH_INTERCEPT = 16


class LiftBudgetExceeded(RuntimeError):
    """No lift found within the retry budget. Retrying with another seed may succeed."""


class NotPositiveWordError(ValueError):
    pass


class NotInSanovSubgroupError(ValueError):
    pass


class NoCorrectionFoundError(AssertionError):
    pass


class _TooLong(Exception):
    pass


def _rng(seed: Seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _check_odd_prime(p: int) -> None:
    if p == 2 or not is_probable_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")


def length_budget(p: int) -> int:
    return math.floor(LENGTH_SLOPE * math.log2(p) + LENGTH_INTERCEPT)


# --------------------------------------------------------------------------
# identity lifts


@dataclass(frozen=True)
class IdentityLift:
    p: int
    k1: int
    k2: int
    k3: int
    k4: int

    def __post_init__(self) -> None:
        if min(self.k1, self.k2, self.k3, self.k4) <= 0:
            raise ValueError("all k_i must be positive")
        if self.matrix.det() != 1:
            raise ValueError("lift does not have determinant 1")

    @property
    def matrix(self) -> Mat2:
        p = self.p
        return Mat2(1 + self.k1 * p, self.k2 * p, self.k3 * p, 1 + self.k4 * p)


def skewed_sanov_lift(p: int, s: int) -> IdentityLift:
    """Closed-form Sanov-form lift with k3 = 2.

    det = 1 is an algebraic identity. The second row is (2p, 1 + 4(p-s)p), so
    the reduced A(2)/B(2) word contains a run of length about p: fine as a
    fixture, useless for short relations.
    """
    _check_odd_prime(p)
    if not 1 <= s <= p - 1:
        raise ValueError(f"s must lie in [1, p-1], got {s}")
    return IdentityLift(p, 4 * s, 2 * (4 * s * (p - s) + 1), 2, 4 * (p - s))


def _balanced_sanov_lift(p: int, rng: random.Random, max_tries: int) -> IdentityLift:
    # k1 = 4x, k4 = 4y, k2 = 2u, k3 = 2v. det = 1 reduces to
    #   x + y = mu*p  and  u*v = mu + 4*x*y.
    # Fix a prime u near mu*p and solve (2x - mu*p)^2 = mu^2 p^2 + mu (mod u);
    # the factorization of mu + 4xy is then known and all k_i are of size ~p.
    for _ in range(max_tries):
        mu = rng.randint(1, 4)
        span = mu * p
        lo = max(3, span // 2)
        u = next_prime_at_least(rng.randint(lo, max(lo, span)))
        disc = (mu * mu * p * p + mu) % u
        if disc and gmpy2.legendre(disc, u) != 1:
            continue
        half = pow(2, -1, u)
        xs = []
        for r in sqrt_mod(disc, u, all_roots=True):
            x = (span + r) * half % u or u
            xs.extend(range(x, span, u))
        if not xs:
            continue
        x = rng.choice(xs)
        y = span - x
        n = mu + 4 * x * y
        v, rem = divmod(n, u)
        assert rem == 0
        return IdentityLift(p, 4 * x, 2 * u, 2 * v, 4 * y)
    raise LiftBudgetExceeded(f"no Sanov-form lift for p = {p} in {max_tries} tries")


def _balanced_split(n: int) -> Optional[tuple[int, int]]:
    """Nontrivial n = f * (n // f) with f close to sqrt(n), using cheap factoring only."""
    factors = sympy.factorint(n, limit=TRIAL_DIVISION_LIMIT, use_ecm=False)
    divisors = {1}
    for q, e in factors.items():
        divisors |= {d * q**i for d in divisors for i in range(1, e + 1)}
        if len(divisors) > 4096:
            break
    root = math.isqrt(n)
    best = None
    for f in divisors:
        if 1 < f < n and n % f == 0:
            if best is None or abs(f - root) < abs(best - root):
                best = f
    return None if best is None else (best, n // best)


def _plain_lift(p: int, rng: random.Random, max_tries: int) -> IdentityLift:
    # k1 + k4 = lam*p and k2*k3 = lam + k1*k4; the last product must be split.
    for _ in range(max_tries):
        lam = rng.randint(1, p)
        k1 = rng.randint(1, lam * p - 1)
        k4 = lam * p - k1
        split = _balanced_split(lam + k1 * k4)
        if split is None:
            continue
        return IdentityLift(p, k1, split[0], split[1], k4)
    raise LiftBudgetExceeded(f"plain lift for p = {p}: factoring budget exhausted after {max_tries} tries")


def find_identity_lift(p: int, mode: LiftMode = "sanov_constrained", seed: Seed = None, max_tries: int = 1000) -> IdentityLift:
    """Integer matrix (1+k1 p, k2 p; k3 p, 1+k4 p) of determinant 1, all k_i > 0.

    ``sanov_constrained`` lifts are in Sanov form and never need factoring.
    ``plain`` lifts need a balanced split of a number of size ~p^4 and are
    only practical for small p.
    """
    _check_odd_prime(p)
    rng = _rng(seed)
    if mode == "sanov_constrained":
        return _balanced_sanov_lift(p, rng, max_tries)
    if mode == "plain":
        return _plain_lift(p, rng, max_tries)
    raise ValueError(f"unknown lift mode {mode!r}")


# --------------------------------------------------------------------------
# factorizations


def euclidean_factor(m: Mat2) -> GenWord:
    """The unique positive word w with w(A(1), B(1)) = m.

    Peels maximal runs off the right end: a trailing A^q subtracts q times
    column 1 from column 2, a trailing B^q the other way round.
    """
    if m.modulus is not None:
        raise ValueError("euclidean_factor works over the integers")
    if m.det() != 1:
        raise ValueError(f"determinant of {m} is not 1")
    a, b, c, d = m.entries()
    if min(a, b, c, d) < 0:
        raise NotPositiveWordError(f"{m} has a negative entry")
    runs = []
    while (a, b, c, d) != (1, 0, 0, 1):
        if b == 0:  # (1, 0; c, 1)
            runs.append(("B", c))
            break
        if c == 0:  # (1, b; 0, 1)
            runs.append(("A", b))
            break
        if a >= b and c >= d:
            q = min(a // b, c // d)
            a, c = a - q * b, c - q * d
            runs.append(("B", q))
        elif a <= b and c <= d:
            q = min(b // a, d // c)
            b, d = b - q * a, d - q * c
            runs.append(("A", q))
        else:
            raise NotPositiveWordError(f"{m} is not a product of positive powers of A(1), B(1)")
    return GenWord(tuple(reversed(runs)))


def _nearest(num: int, den: int) -> int:
    """Nearest integer to num/den (ties cannot occur for the parities used here)."""
    if den < 0:
        num, den = -num, -den
    return (2 * num + den) // (2 * den)


def _peel_sanov(m: Mat2, max_length: Optional[int]) -> GenWord:
    a, b, c, d = m.entries()
    runs = []
    total = 0
    # Euclid on the first row with even steps: a stays odd, b stays even, so
    # |a| != |b| and every step strictly shrinks the larger of the two.
    while b != 0:
        if abs(b) > abs(a):
            q = _nearest(b, 2 * a)
            b, d = b - 2 * q * a, d - 2 * q * c
            runs.append(("A", q))
        else:
            q = _nearest(a, 2 * b)
            a, c = a - 2 * q * b, c - 2 * q * d
            runs.append(("B", q))
        total += abs(q)
        if max_length is not None and total > max_length:
            raise _TooLong
    # what is left is (1, 0; c, 1) = B(2)^(c/2)
    assert a == 1 and d == 1 and c % 2 == 0, (a, b, c, d)
    if c:
        runs.append(("B", c // 2))
        total += abs(c // 2)
        if max_length is not None and total > max_length:
            raise _TooLong
    return GenWord(tuple(reversed(runs)))


def sanov_reduce(m: Mat2) -> GenWord:
    """The unique reduced signed word u with u(A(2), B(2)) = m."""
    if m.modulus is not None or not sanov_form_check(m):
        raise NotInSanovSubgroupError(f"{m} is not in Sanov form")
    return _peel_sanov(m, None)


def rewrite_a1b1_to_a2b2(w: GenWord) -> GenWord:
    """Re-express w(A(1), B(1)) as a word in A(2), B(2), when that is possible."""
    m = evaluate_word(w, 1)
    if not sanov_form_check(m):
        raise NotInSanovSubgroupError(f"{format_word(w) or '<empty>'} evaluates to {m}, outside the Sanov subgroup")
    return sanov_reduce(m)


# --------------------------------------------------------------------------
# mod-4 correction


@dataclass(frozen=True)
class CorrectionEntry:
    residue_class: Mat2  # entries mod 4
    S: Mat2


def residue_mod4(m: Mat2) -> tuple[int, int, int, int]:
    return tuple(x % 4 for x in m.entries())


def _is_sanov_residue(r) -> bool:
    return r[0] == 1 and r[3] == 1 and r[1] % 2 == 0 and r[2] % 2 == 0


def _mul4(r, s):
    a, b, c, d = r
    e, f, g, h = s
    return ((a * e + b * g) % 4, (a * f + b * h) % 4, (c * e + d * g) % 4, (c * f + d * h) % 4)


def _size_key(s) -> tuple:
    return (max(abs(x) for x in s), sum(abs(x) for x in s), s)


@lru_cache(maxsize=1)
def small_sl2_matrices(bound: int = CORRECTION_BOUND) -> tuple[tuple[int, int, int, int], ...]:
    """All det-1 integer matrices with entries in [-bound, bound], smallest first."""
    rng = range(-bound, bound + 1)
    found = [(a, b, c, d) for a, b, c, d in product(rng, repeat=4) if a * d - b * c == 1]
    return tuple(sorted(found, key=_size_key))


@lru_cache(maxsize=1)
def tabulated_correction_cases() -> tuple[dict, ...]:
    """The fourteen residue classes with their printed and det-1 lifted S."""
    text = resources.files("cayleyhash.data").joinpath("correction_cases.json").read_text()
    return tuple(json.loads(text)["cases"])


@lru_cache(maxsize=1)
def _pinned() -> dict:
    return {
        tuple(case["residue"]): tuple(case["lifted_S"])
        for case in tabulated_correction_cases()
        if case["lifted_S"] is not None
    }


@lru_cache(maxsize=None)
def correction_for_residue(r: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    if _is_sanov_residue(r):
        return (1, 0, 0, 1)
    pinned = _pinned().get(r)
    if pinned is not None:
        return pinned
    for s in small_sl2_matrices():
        if _is_sanov_residue(_mul4(r, s)):
            return s
    raise NoCorrectionFoundError(f"no correction with entries <= {CORRECTION_BOUND} for residue {r}")


def sanov_correction(m: Mat2) -> CorrectionEntry:
    """Small S in SL_2(Z) with m @ S in Sanov form (S = I when m already is)."""
    if m.modulus is not None or m.det() != 1:
        raise ValueError(f"{m} is not an integer matrix of determinant 1")
    r = residue_mod4(m)
    s = Mat2(*correction_for_residue(r))
    if not sanov_form_check(mat_mul(m, s)):
        raise NoCorrectionFoundError(f"correction {s} failed for {m}")
    return CorrectionEntry(Mat2(*r, 4), s)


# --------------------------------------------------------------------------
# relations


def verify_relation(word: GenWord, p: int, k: int) -> bool:
    return evaluate_word(word, k, p).is_identity()


@dataclass
class Relation:
    word: GenWord
    p: int
    k: int
    verified: bool
    seed: Optional[int] = None
    lift: Optional[IdentityLift] = None
    tries: int = 1
    timings: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return len(self.word)

    def to_dict(self) -> dict:
        return {
            "p": str(self.p),
            "k": self.k,
            "word": format_word(self.word),
            "length": self.length,
            "verified": self.verified,
            "seed": self.seed,
            "tries": self.tries,
            "timings": self.timings,
        }


def build_group_relation(
    p: int,
    seed: Seed = None,
    max_length: Optional[int] = None,
    max_tries: int = 10_000,
) -> Relation:
    """A verified relation w(A(2), B(2)) = 1 over F_p.

    Lifts are redrawn until the reduced word fits ``max_length`` (default
    ``length_budget(p)``); word lengths of random lifts have a heavy tail.
    """
    _check_odd_prime(p)
    rng = _rng(seed)
    budget = length_budget(p) if max_length is None else max_length
    t0 = time.perf_counter()
    for attempt in range(1, max_tries + 1):
        lift = _balanced_sanov_lift(p, rng, max_tries)
        try:
            word = _peel_sanov(lift.matrix, budget)
        except _TooLong:
            continue
        t1 = time.perf_counter()
        verified = verify_relation(word, p, 2)
        t2 = time.perf_counter()
        if not verified or len(word) == 0:
            raise AssertionError(f"relation for p = {p} failed verification")
        return Relation(
            word=word,
            p=p,
            k=2,
            verified=verified,
            seed=seed if isinstance(seed, int) else None,
            lift=lift,
            tries=attempt,
            timings={"search_s": round(t1 - t0, 6), "verify_s": round(t2 - t1, 6)},
        )
    raise LiftBudgetExceeded(f"no relation of length <= {budget} for p = {p} in {max_tries} lifts")


@dataclass
class CorrectionPipelineResult:
    lift: IdentityLift
    a1b1_word: GenWord
    correction: CorrectionEntry
    word: GenWord
    diagnostics: dict

    @property
    def S(self) -> Mat2:
        return self.correction.S

    def to_dict(self) -> dict:
        s = self.correction.S
        return {
            "p": str(self.lift.p),
            "k": 2,
            "word": format_word(self.word),
            "length": len(self.word),
            "S": [s.a, s.b, s.c, s.d],
            "a1b1_runs": len(self.a1b1_word.runs),
            "a1b1_length": len(self.a1b1_word),
            **self.diagnostics,
        }


def paper_pipeline(p: int, seed: Seed = None, max_tries: int = 1000) -> CorrectionPipelineResult:
    """Plain lift M, its A(1)/B(1) factorization, correction S, and u = reduce(M S).

    u(A(2), B(2)) equals S mod p. It is a relation only when S = I.
    """
    _check_odd_prime(p)
    rng = _rng(seed)
    t0 = time.perf_counter()
    lift = _plain_lift(p, rng, max_tries)
    m = lift.matrix
    w1 = euclidean_factor(m)
    corr = sanov_correction(m)
    u = sanov_reduce(mat_mul(m, corr.S))
    elapsed = time.perf_counter() - t0
    u_mod_p = evaluate_word(u, 2, p)
    diagnostics = {
        "seed": seed if isinstance(seed, int) else None,
        "u_equals_S_mod_p": u_mod_p == corr.S.reduce(p),
        "is_relation": u_mod_p.is_identity(),
        "length_over_log2p": round(len(u) / math.log2(p), 4),
        "elapsed_s": round(elapsed, 6),
    }
    return CorrectionPipelineResult(lift, w1, corr, u, diagnostics)
