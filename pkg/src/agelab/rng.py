"""SplitMix64: a tiny, portable, seedable generator.

The sequence depends only on the 64-bit seed, so random suites reproduce
across platforms and languages.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, TypeVar

T = TypeVar("T")

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.state = seed & MASK

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (MASK + 1) - ((MASK + 1) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def choice(self, seq: Sequence[T]) -> T:
        return seq[self.below(len(seq))]

    def fraction(self, bound: int = 5, nonzero: bool = True) -> Fraction:
        """Small rational ``a/b`` with ``|a| <= bound`` and ``1 <= b <= 3``."""
        while True:
            a = self.randint(-bound, bound)
            if a or not nonzero:
                return Fraction(a, self.randint(1, 3))

    def fork(self, label: str) -> "SplitMix64":
        """Independent stream keyed by ``label``, leaving this one untouched."""
        h = self.state
        for ch in label.encode():
            h = ((h ^ ch) * 0x100000001B3) & MASK
        return SplitMix64(h)
