"""Exact 2x2 matrix arithmetic over the integers and over prime fields.

Integer entries are plain Python ints, so nothing ever overflows. A matrix
carries its ring as ``modulus``: ``None`` for the integers, ``p`` for F_p.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import gmpy2

# 64 Miller-Rabin rounds on top of gmpy2's BPSW pass: error below 4**-64.
PRIMALITY_ROUNDS = 64


class RingMismatchError(ValueError):
    """Raised when combining matrices that live over different rings."""


class NotInvertibleError(ValueError):
    """Raised when inverting a matrix whose determinant is not 1."""


def is_probable_prime(n: int) -> bool:
    return n >= 2 and bool(gmpy2.is_prime(n, PRIMALITY_ROUNDS))


def next_prime_at_least(n: int) -> int:
    """Smallest prime >= n."""
    if is_probable_prime(n):
        return n
    return int(gmpy2.next_prime(n))


@dataclass(frozen=True, slots=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int
    modulus: Optional[int] = None

    def __post_init__(self) -> None:
        p = self.modulus
        if p is not None:
            if p < 2:
                raise ValueError(f"modulus must be >= 2, got {p}")
            for name in ("a", "b", "c", "d"):
                object.__setattr__(self, name, getattr(self, name) % p)

    @classmethod
    def identity(cls, modulus: Optional[int] = None) -> Mat2:
        return cls(1, 0, 0, 1, modulus)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def det(self) -> int:
        dt = self.a * self.d - self.b * self.c
        return dt % self.modulus if self.modulus is not None else dt

    def is_identity(self) -> bool:
        return self.entries() == (1, 0, 0, 1)

    def max_abs_entry(self) -> int:
        return max(abs(x) for x in self.entries())

    def row_sums(self) -> tuple[int, int]:
        return (self.a + self.b, self.c + self.d)

    def reduce(self, p: int) -> Mat2:
        """Image of an integer matrix in F_p."""
        if self.modulus is not None and self.modulus != p:
            raise RingMismatchError(f"cannot reduce mod {p} from F_{self.modulus}")
        return Mat2(self.a, self.b, self.c, self.d, p)

    def lift(self) -> Mat2:
        """Canonical integer representative (entries in [0, p-1])."""
        return Mat2(self.a, self.b, self.c, self.d)

    def __matmul__(self, other: Mat2) -> Mat2:
        return mat_mul(self, other)

    def __str__(self) -> str:
        return f"({self.a},{self.b};{self.c},{self.d})"


def mat_mul(m: Mat2, n: Mat2) -> Mat2:
    if m.modulus != n.modulus:
        raise RingMismatchError(f"ring mismatch: {m.modulus!r} vs {n.modulus!r}")
    return Mat2(
        m.a * n.a + m.b * n.c,
        m.a * n.b + m.b * n.d,
        m.c * n.a + m.d * n.c,
        m.c * n.b + m.d * n.d,
        m.modulus,
    )


def sl2_inverse(m: Mat2) -> Mat2:
    if m.det() != 1:
        raise NotInvertibleError(f"determinant of {m} is {m.det()}, expected 1")
    return Mat2(m.d, -m.b, -m.c, m.a, m.modulus)


def generator(letter: str, k: int, modulus: Optional[int] = None) -> Mat2:
    """A(k) = (1,k;0,1) or B(k) = (1,0;k,1)."""
    if k < 1:
        raise ValueError(f"generator parameter must be >= 1, got {k}")
    if modulus is not None and modulus <= k:
        raise ValueError(f"prime {modulus} must exceed generator parameter {k}")
    return generator_power(letter, 1, k, modulus)


def generator_power(letter: str, e: int, k: int, modulus: Optional[int] = None) -> Mat2:
    """Closed form of A(k)**e or B(k)**e for any signed e."""
    if letter == "A":
        return Mat2(1, k * e, 0, 1, modulus)
    if letter == "B":
        return Mat2(1, 0, k * e, 1, modulus)
    raise ValueError(f"unknown generator letter {letter!r}")


def sanov_form_check(m: Mat2) -> bool:
    """Membership in the subgroup of SL_2(Z) generated by A(2) and B(2).

    That subgroup is exactly the det-1 matrices with both diagonal entries
    congruent to 1 mod 4 and both off-diagonal entries even.
    """
    if m.modulus is not None:
        raise RingMismatchError("Sanov form is defined for integer matrices only")
    return (
        m.det() == 1
        and m.a % 4 == 1
        and m.d % 4 == 1
        and m.b % 2 == 0
        and m.c % 2 == 0
    )
