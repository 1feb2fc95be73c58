"""Words over the letters A, B in run-length form, plus their text grammar.

Text forms accepted by :func:`parse_word`::

    "B A^3 B^2 A"     caret form, whitespace optional between tokens
    "A^-2 B"          signed exponents
    "AbaB"            compact form, lowercase = inverse letter

:func:`format_word` always emits the caret form with single spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from cayleyhash.algebra import Mat2, generator_power, mat_mul

LETTERS = ("A", "B")

Run = tuple[str, int]


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def normalize_runs(runs: Iterable[Run]) -> tuple[Run, ...]:
    """Merge equal neighbours and drop zero runs, cascading through cancellations."""
    out: list[Run] = []
    for letter, e in runs:
        if letter not in LETTERS:
            raise ValueError(f"unknown generator letter {letter!r}")
        if e == 0:
            continue
        if out and out[-1][0] == letter:
            merged = out[-1][1] + e
            out.pop()
            if merged != 0:
                out.append((letter, merged))
        else:
            out.append((letter, e))
    return tuple(out)


@dataclass(frozen=True)
class GenWord:
    """A normalized word: adjacent runs use different letters, no zero exponents."""

    runs: tuple[Run, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "runs", normalize_runs(self.runs))

    @classmethod
    def from_letters(cls, letters: str) -> GenWord:
        """Build from a compact string such as ``"ABBa"``."""
        return parse_word(letters)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.runs)

    def __mul__(self, other: GenWord) -> GenWord:
        return GenWord(self.runs + other.runs)

    def inverse(self) -> GenWord:
        return GenWord(tuple((x, -e) for x, e in reversed(self.runs)))

    @property
    def is_positive(self) -> bool:
        return all(e > 0 for _, e in self.runs)

    @property
    def has_negative(self) -> bool:
        return any(e < 0 for _, e in self.runs)

    def letters(self) -> str:
        """Expanded compact spelling; lowercase marks inverse letters."""
        return "".join((x if e > 0 else x.lower()) * abs(e) for x, e in self.runs)

    def __str__(self) -> str:
        return format_word(self)


def parse_word(text: str) -> GenWord:
    runs: list[Run] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "AB":
            letter, sign = ch, 1
        elif ch in "ab":
            letter, sign = ch.upper(), -1
        else:
            raise WordSyntaxError(f"unexpected character {ch!r}", i)
        i += 1
        e = sign
        if i < n and text[i] == "^":
            if sign < 0:
                raise WordSyntaxError("exponent not allowed on lowercase letter", i)
            i += 1
            start = i
            if i < n and text[i] == "-":
                i += 1
            digits_at = i
            while i < n and text[i].isdigit():
                i += 1
            if i == digits_at:
                raise WordSyntaxError("expected integer exponent", start)
            e = int(text[start:i])
            if e == 0:
                raise WordSyntaxError("zero exponent", start)
        runs.append((letter, e))
    return GenWord(tuple(runs))


def format_word(w: GenWord) -> str:
    return " ".join(x if e == 1 else f"{x}^{e}" for x, e in w.runs)


def evaluate_word(w: GenWord, k: int, modulus: Optional[int] = None) -> Mat2:
    """Left-to-right product of the generator powers; empty word gives the identity."""
    m = Mat2.identity(modulus)
    for letter, e in w.runs:
        m = mat_mul(m, generator_power(letter, e, k, modulus))
    return m
