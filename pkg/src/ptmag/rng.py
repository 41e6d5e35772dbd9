"""Seedable 64-bit generator with a frozen algorithm.

The output stream is pinned by the algorithm constants alone, so disorder
draws reproduce bit-for-bit across platforms and library versions.
"""
from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    """Deterministic generator: same seed, same stream, anywhere."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        # top 53 bits give the full double-precision mantissa on [0, 1)
        u = (self.next_u64() >> 11) * (1.0 / (1 << 53))
        return low + (high - low) * u
