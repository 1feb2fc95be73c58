"""Collision-free length guarantees for the A(k), B(k) hash.

Over the integers the monoid generated by A(k), B(k) is free. If every entry
of every product of length <= m is below p, two such products that agree
mod p already agree over Z, hence are the same word. Among positive words of
a given length the alternating word ABAB... has the largest entries, so the
guarantee reduces to following the powers of C(k) = A(k) B(k).

Everything normative here is exact integer arithmetic. The logarithmic
closed form is exposed only as an estimate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import mpmath

from cayleyhash.algebra import Mat2, generator, is_probable_prime, mat_mul
from cayleyhash.words import GenWord, evaluate_word, format_word

DEFAULT_BFS_PRIME_GUARD = 2**10
DEFAULT_EXTREMALITY_CAP = 16


class ResourceGuardError(RuntimeError):
    pass


def cn_matrix(k: int) -> Mat2:
    """C(k) = A(k) B(k) = (k^2+1, k; k, 1)."""
    return mat_mul(generator("A", k), generator("B", k))


@dataclass
class GrowthSequence:
    k: int
    terms: list[Mat2] = field(default_factory=list)

    @property
    def max_entries(self) -> list[int]:
        return [t.max_abs_entry() for t in self.terms]


def growth_sequence(k: int, n: int) -> GrowthSequence:
    """Powers C(k)^1 .. C(k)^n by repeated multiplication."""
    c = cn_matrix(k)
    terms, m = [], Mat2.identity()
    for _ in range(n):
        m = mat_mul(m, c)
        terms.append(m)
    return GrowthSequence(k, terms)


def recurrence_terms(k: int, n: int) -> list[tuple[int, int, int, int]]:
    """Entries of C(k)^1 .. C(k)^n from x_j = (k^2+2) x_{j-1} - x_{j-2}.

    Every entry obeys the same recurrence; seeds are C^0 = I and C^1.
    """
    t = k * k + 2
    prev, cur = (1, 0, 0, 1), (k * k + 1, k, k, 1)
    out = []
    for _ in range(n):
        out.append(cur)
        prev, cur = cur, tuple(t * x - y for x, y in zip(cur, prev))
    return out


def growth_rate(k: int) -> float:
    t = k * k + 2
    return (t + math.sqrt(t * t - 4)) / 2


def closed_form_entries(k: int, n: int, dps: int = 60) -> tuple[mpmath.mpf, mpmath.mpf]:
    """High-precision (a_n, b_n) of C(k)^n from the solved recurrence."""
    with mpmath.workdps(dps):
        t = k * k + 2
        root = mpmath.sqrt(t * t - 4)
        lam, lam_ = (t + root) / 2, (t - root) / 2
        alpha = (k * k + 1 - lam_) / root
        a_n = alpha * lam**n + (1 - alpha) * lam_**n
        b_n = k * (lam**n - lam_**n) / root
        return +a_n, +b_n


def closed_form_estimate(p: int, k: int) -> float:
    """2 log_lambda(p), the real-valued version of the girth bound."""
    if k < 2:
        raise ValueError("closed-form estimate requires k >= 2")
    return 2 * math.log(p) / math.log(growth_rate(k))


def _alternating_max_entry(k: int, m: int, cpow: Mat2) -> int:
    # cpow = C(k)^(m // 2); odd lengths append one more letter.
    if m % 2 == 0:
        return cpow.max_abs_entry()
    ends_a = mat_mul(cpow, generator("A", k))
    starts_b = mat_mul(generator("B", k), cpow)
    return max(ends_a.max_abs_entry(), starts_b.max_abs_entry())


def max_entry_at_length(k: int, m: int) -> int:
    """Largest entry over all positive words of length m (k >= 2)."""
    if k < 2:
        raise ValueError("extremality of alternating words needs k >= 2")
    if m < 1:
        raise ValueError("word length must be >= 1")
    cpow = Mat2.identity()
    c = cn_matrix(k)
    for _ in range(m // 2):
        cpow = mat_mul(cpow, c)
    return _alternating_max_entry(k, m, cpow)


def girth_lower_bound(p: int, k: int) -> int:
    """Largest m such that every positive word of length <= m has entries < p."""
    if k < 2:
        raise ValueError("girth bound requires k >= 2")
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    c = cn_matrix(k)
    cpow = Mat2.identity()
    m = 0
    while True:
        nxt = m + 1
        if nxt % 2 == 0:
            cpow = mat_mul(cpow, c)
        if _alternating_max_entry(k, nxt, cpow) >= p:
            return m
        m = nxt


def _word_maxima(k: int, n: int) -> tuple[int, int]:
    """(max row sum, max entry) over all 2^n positive words of length n."""
    best_row = best_entry = 0
    stack = [((1, 0, 0, 1), 0)]
    while stack:
        (a, b, c, d), depth = stack.pop()
        if depth == n:
            best_row = max(best_row, a + b, c + d)
            best_entry = max(best_entry, a, b, c, d)
            continue
        # right multiplication by A adds k*col1 to col2, by B adds k*col2 to col1
        stack.append(((a, b + k * a, c, d + k * c), depth + 1))
        stack.append(((a + k * b, b, c + k * d, d), depth + 1))
    return best_row, best_entry


def alternation_extremality_check(k: int, n: int, cap: int = DEFAULT_EXTREMALITY_CAP) -> bool:
    """Exhaustively confirm that C(k)^(n/2) dominates every positive word of length n.

    Dominance means its largest row sum is >= every row sum of the word and
    its largest entry is >= every entry of the word.
    """
    if k < 2:
        raise ValueError("extremality needs k >= 2")
    if n % 2 or n < 2:
        raise ValueError(f"length must be even and positive, got {n}")
    if n > cap:
        raise ResourceGuardError(f"length {n} exceeds exhaustive cap {cap}")
    cpow = evaluate_word(GenWord((("A", 1), ("B", 1)) * (n // 2)), k)
    row, entry = _word_maxima(k, n)
    return max(cpow.row_sums()) >= row and cpow.max_abs_entry() >= entry


def odd_length_extremality_check(k: int, m: int, cap: int = DEFAULT_EXTREMALITY_CAP) -> bool:
    """For odd m, check max_entry_at_length against all 2^m positive words."""
    if m % 2 == 0:
        raise ValueError(f"length must be odd, got {m}")
    if m > cap:
        raise ResourceGuardError(f"length {m} exceeds exhaustive cap {cap}")
    return _word_maxima(k, m)[1] == max_entry_at_length(k, m)


@dataclass
class GirthReport:
    p: int
    k: int
    guaranteed_length: Optional[int]
    closed_form_estimate: Optional[float]
    exact_girth: Optional[int] = None
    witness: Optional[tuple[GenWord, GenWord]] = None
    bfs_states: Optional[int] = None
    length_cap: Optional[int] = None

    def to_dict(self) -> dict:
        doc: dict = {
            "p": str(self.p),
            "k": self.k,
            "guaranteed_length": self.guaranteed_length,
            "estimate": self.closed_form_estimate,
        }
        if self.length_cap is not None:
            doc["exact_girth"] = self.exact_girth
            doc["length_cap"] = self.length_cap
            doc["bfs_states"] = self.bfs_states
        if self.witness is not None:
            doc["witness_u"] = format_word(self.witness[0])
            doc["witness_v"] = format_word(self.witness[1])
        return doc


def _word_from_tree(parent: dict, state) -> GenWord:
    letters = []
    while parent[state] is not None:
        state, letter = parent[state]
        letters.append(letter)
    return GenWord(tuple((x, 1) for x in reversed(letters)))


def bfs_collision(p: int, k: int, length_cap: int, prime_guard: int = DEFAULT_BFS_PRIME_GUARD):
    """Breadth-first search of the monoid Cayley graph of A(k), B(k) over F_p.

    Returns ``(length, u, v, states)`` for the first revisited element, or
    ``(None, None, None, states)`` if none occurs up to ``length_cap``.
    ``length`` is the BFS depth of the revisit, i.e. the smallest m such that
    two distinct positive words of length <= m are equal mod p. Frontiers
    stay in lexicographic word order (A < B), which fixes the witness.
    """
    if p > prime_guard:
        raise ResourceGuardError(f"p = {p} exceeds the BFS guard {prime_guard}")
    if not is_probable_prime(p) or p <= k:
        raise ValueError(f"need a prime p > k, got p = {p}, k = {k}")
    kp = k % p
    root = (1, 0, 0, 1)
    parent: dict = {root: None}
    frontier = [root]
    for depth in range(1, length_cap + 1):
        nxt = []
        for s in frontier:
            a, b, c, d = s
            for letter, t in (
                ("A", (a, (b + kp * a) % p, c, (d + kp * c) % p)),
                ("B", ((a + kp * b) % p, b, (c + kp * d) % p, d)),
            ):
                if t in parent:
                    u = _word_from_tree(parent, t)
                    v = _word_from_tree(parent, s) * GenWord(((letter, 1),))
                    return depth, u, v, len(parent)
                parent[t] = (s, letter)
                nxt.append(t)
        frontier = nxt
    return None, None, None, len(parent)


def bfs_exact_girth(
    p: int,
    k: int,
    length_cap: int = 64,
    prime_guard: int = DEFAULT_BFS_PRIME_GUARD,
) -> GirthReport:
    depth, u, v, states = bfs_collision(p, k, length_cap, prime_guard)
    report = GirthReport(
        p=p,
        k=k,
        guaranteed_length=girth_lower_bound(p, k) if k >= 2 else None,
        closed_form_estimate=closed_form_estimate(p, k) if k >= 2 else None,
        exact_girth=depth,
        bfs_states=states,
        length_cap=length_cap,
    )
    if depth is not None:
        hu, hv = evaluate_word(u, k, p), evaluate_word(v, k, p)
        assert hu == hv and u != v, "BFS witness failed verification"
        report.witness = (u, v)
    return report


def girth_report(p: int, k: int) -> GirthReport:
    return GirthReport(p, k, girth_lower_bound(p, k), closed_form_estimate(p, k))


def all_positive_words(n: int):
    """All positive words of length n in lexicographic order (A < B)."""
    for letters in itertools.product("AB", repeat=n):
        yield GenWord(tuple((x, 1) for x in letters))
