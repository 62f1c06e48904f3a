"""Deterministic, portable random number generation.

splitmix64 expands a 64-bit seed into the xoshiro256** state; Gaussians come
from Box-Muller. The algorithms are pinned here (rather than using a standard
library generator) so fixtures and Monte Carlo results are reproducible
bit-for-bit regardless of platform defaults.
"""

from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_TWO53 = float(1 << 53)


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Per-trial seed: one splitmix64 step of (seed + index)."""
    return SplitMix64((seed + index) & _MASK64).next_u64()


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256StarStar:
    """xoshiro256** seeded from splitmix64, with uniform and Gaussian draws."""

    def __init__(self, seed: int):
        sm = SplitMix64(seed)
        self._s = [sm.next_u64() for _ in range(4)]
        self._gauss_cache: float | None = None

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def uniform(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) / _TWO53

    def gauss(self) -> float:
        """Standard normal via Box-Muller; pairs are generated, one cached."""
        if self._gauss_cache is not None:
            z = self._gauss_cache
            self._gauss_cache = None
            return z
        # u1 in (0, 1] so the log is finite
        u1 = ((self.next_u64() >> 11) + 1) / _TWO53
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        theta = 2.0 * math.pi * u2
        self._gauss_cache = r * math.sin(theta)
        return r * math.cos(theta)

    def randint(self, upper: int) -> int:
        """Integer in [0, upper) by rejection-free modulo of the top bits.

        Bias is < upper / 2^53, negligible for the small ranges used here.
        """
        return int(self.uniform() * upper)
