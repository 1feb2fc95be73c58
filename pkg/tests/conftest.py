import random

import pytest
from hypothesis import strategies as st

from cayleyhash.words import GenWord


# -- independent oracles: explicit per-letter products on plain lists --------

def brute_mul(x, y, p=None):
    out = [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
    return [v % p for v in out] if p else out


def brute_eval(letters, k, p=None):
    """Evaluate a compact letter string (lowercase = inverse) one letter at a time."""
    table = {
        "A": [1, k, 0, 1],
        "B": [1, 0, k, 1],
        "a": [1, -k, 0, 1],
        "b": [1, 0, -k, 1],
    }
    m = [1, 0, 0, 1]
    for ch in letters:
        m = brute_mul(m, table[ch], p)
    return tuple(m)


def first_odd_primes(n):
    out, q = [], 3
    while len(out) < n:
        if all(q % d for d in range(3, int(q**0.5) + 1, 2)):
            out.append(q)
        q += 2
    return out


def random_reduced_word(rng: random.Random, length: int) -> GenWord:
    """Uniform-ish freely reduced signed word with exactly ``length`` letters."""
    letters = []
    for _ in range(length):
        choices = [c for c in "AaBb" if not letters or c != letters[-1].swapcase()]
        letters.append(rng.choice(choices))
    return GenWord.from_letters("".join(letters))


def random_positive_word(rng: random.Random, exponent_sum: int) -> GenWord:
    runs, left, letter = [], exponent_sum, rng.choice("AB")
    while left > 0:
        e = rng.randint(1, min(left, rng.choice([1, 3, 10, 100])))
        runs.append((letter, e))
        left -= e
        letter = "B" if letter == "A" else "A"
    return GenWord(tuple(runs))


signed_runs = st.lists(
    st.tuples(st.sampled_from("AB"), st.integers(-6, 6).filter(bool)),
    max_size=12,
)
signed_words = signed_runs.map(lambda r: GenWord(tuple(r)))
positive_words = st.lists(
    st.tuples(st.sampled_from("AB"), st.integers(1, 6)), max_size=12
).map(lambda r: GenWord(tuple(r)))


# -- acceptance summary ------------------------------------------------------

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record():
    return _ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
