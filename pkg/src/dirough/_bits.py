"""Bitmask helpers.

Element sets are plain Python ints: bit i set means element-id i is in the
set. Ints are arbitrary precision, hash cheaply, and make subset tests a
single AND, which is what the exhaustive suites lean on.
"""

from __future__ import annotations

from typing import Iterable, Iterator

MASK64 = (1 << 64) - 1


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def lex_key(mask: int) -> tuple[int, ...]:
    """Sorted id tuple; the canonical lexicographic tie-break key."""
    return tuple(bits(mask))


def subsets_of(mask: int) -> Iterator[int]:
    """All submasks of mask, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def splitmix64(x: int) -> int:
    """One splitmix64 step. Pure integer arithmetic, identical everywhere."""
    x = (x + 0x9E3779B97F4B7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def mix(*parts: int) -> int:
    """Fold ints into one 64-bit value via chained splitmix64 steps."""
    acc = 0
    for p in parts:
        acc = splitmix64((acc ^ (p & MASK64)) & MASK64)
    return acc
