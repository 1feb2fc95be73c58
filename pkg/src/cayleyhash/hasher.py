"""The Cayley hash: bit 0 -> A(k), bit 1 -> B(k), digest = product in SL_2(F_p).

The leftmost bit is the leftmost factor. There is no padding and no length
strengthening, so the function is length-extendable by design:
``hash(m1 + m2) == hash(m1) @ hash(m2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Literal, Union

from cayleyhash.algebra import Mat2, generator_power, is_probable_prime, mat_mul

BitOrder = Literal["msb_first", "lsb_first"]
Bits = Union[str, bytes, Iterable[int]]

_RUNS = re.compile(r"0+|1+")


class DigestDecodeError(ValueError):
    pass


class StateFinalizedError(RuntimeError):
    pass


@dataclass(frozen=True)
class HashParams:
    p: int
    k: int = 2
    bit_order: BitOrder = "msb_first"

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not is_probable_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.p <= self.k * self.k + 2:
            raise ValueError(f"p must exceed k^2 + 2 = {self.k * self.k + 2}, got {self.p}")
        if self.bit_order not in ("msb_first", "lsb_first"):
            raise ValueError(f"unknown bit order {self.bit_order!r}")

    @property
    def byte_width(self) -> int:
        return (self.p.bit_length() + 7) // 8


@dataclass(frozen=True)
class Digest:
    params: HashParams
    value: Mat2

    @property
    def encoding(self) -> bytes:
        return digest_encode(self)

    def hex(self) -> str:
        return self.encoding.hex()

    def to_dict(self) -> dict:
        a, b, c, d = self.value.entries()
        return {
            "p": str(self.params.p),
            "k": self.params.k,
            "entries": [str(a), str(b), str(c), str(d)],
            "hex": self.hex(),
        }


def bits_to_str(bits: Bits) -> str:
    """Coerce a bit sequence into a string over {'0', '1'}."""
    if isinstance(bits, bytes):
        bits = bits.decode("ascii")
    if isinstance(bits, str):
        s = "".join(bits.split())
    else:
        s = "".join("1" if b else "0" for b in bits)
    if s.strip("01"):
        raise ValueError("bit string may contain only '0' and '1'")
    return s


def expand_bytes(data: bytes, bit_order: BitOrder = "msb_first") -> str:
    if not data:
        return ""
    if bit_order == "msb_first":
        return bin(int.from_bytes(data, "big"))[2:].zfill(8 * len(data))
    return "".join(format(byte, "08b")[::-1] for byte in data)


class HashState:
    """Streaming hasher. Runs of equal bits cost one multiplication each.

    A run that reaches the end of an update stays pending, so splitting the
    input at an arbitrary point does not change how runs are batched.
    """

    def __init__(self, params: HashParams):
        self.params = params
        self._acc = (1, 0, 0, 1)
        self.pending_run: tuple[str, int] = ("0", 0)
        self._finalized = False

    @property
    def accumulator(self) -> Mat2:
        return Mat2(*self._acc, self.params.p)

    def update(self, bits: Bits) -> HashState:
        if self._finalized:
            raise StateFinalizedError("update after finalize")
        s = bits_to_str(bits)
        if not s:
            return self
        p, k = self.params.p, self.params.k
        a, b, c, d = self._acc
        bit, count = self.pending_run
        for m in _RUNS.finditer(s):
            start, end = m.span()
            if s[start] == bit:
                count += end - start
                continue
            # A(k)^n adds k*n*col1 to col2; B(k)^n adds k*n*col2 to col1
            if count:
                step = k * count
                if bit == "0":
                    b, d = (b + step * a) % p, (d + step * c) % p
                else:
                    a, c = (a + step * b) % p, (c + step * d) % p
            bit, count = s[start], end - start
        self._acc = (a, b, c, d)
        self.pending_run = (bit, count)
        return self

    def update_bytes(self, data: bytes) -> HashState:
        return self.update(expand_bytes(data, self.params.bit_order))

    def finalize(self) -> Digest:
        if self._finalized:
            raise StateFinalizedError("state already finalized")
        bit, count = self.pending_run
        acc = self.accumulator
        if count:
            letter = "A" if bit == "0" else "B"
            acc = mat_mul(acc, generator_power(letter, count, self.params.k, self.params.p))
        self.pending_run = ("0", 0)
        self._acc = acc.entries()
        self._finalized = True
        return Digest(self.params, acc)


def hash_bits(params: HashParams, bits: Bits) -> Digest:
    return HashState(params).update(bits).finalize()


def hash_bytes(params: HashParams, data: bytes) -> Digest:
    return hash_bits(params, expand_bytes(data, params.bit_order))


def hash_bits_naive(params: HashParams, bits: Bits) -> Digest:
    """Reference path: one full 2x2 product per bit."""
    p, k = params.p, params.k
    gens = {"0": (1, k, 0, 1), "1": (1, 0, k, 1)}
    a, b, c, d = 1, 0, 0, 1
    for bit in bits_to_str(bits):
        e, f, g, h = gens[bit]
        a, b, c, d = (
            (a * e + b * g) % p,
            (a * f + b * h) % p,
            (c * e + d * g) % p,
            (c * f + d * h) % p,
        )
    return Digest(params, Mat2(a, b, c, d, p))


def digest_encode(d: Digest) -> bytes:
    w = d.params.byte_width
    return b"".join(x.to_bytes(w, "big") for x in d.value.entries())


def digest_decode(params: HashParams, data: bytes) -> Digest:
    w = params.byte_width
    if len(data) != 4 * w:
        raise DigestDecodeError(f"expected {4 * w} bytes, got {len(data)}")
    entries = [int.from_bytes(data[i * w:(i + 1) * w], "big") for i in range(4)]
    for name, x in zip("abcd", entries):
        if x >= params.p:
            raise DigestDecodeError(f"entry {name} = {x} is out of range for p = {params.p}")
    value = Mat2(*entries, params.p)
    if value.det() != 1:
        raise DigestDecodeError("decoded matrix does not have determinant 1")
    return Digest(params, value)
