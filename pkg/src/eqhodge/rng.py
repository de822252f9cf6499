"""Seeded pseudo-randomness for reproducible trials.

The generator is splitmix64: state advances by the 64-bit golden-gamma
constant 0x9E3779B97F4A7C15 and each output is finalized with two
xor-shift-multiply rounds (0xBF58476D1CE4E5B9, 0x94D049BB133111EB).
Matrix entries are drawn uniformly from [-1, 1) as z / 2^63 - 1, so the
same seed yields bit-identical trials on any platform.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1

DEFAULT_SEED = 0x5EED0E9B0D6E2026


class SplitMix64:
    def __init__(self, seed: int):
        self._state = int(seed) & _MASK

    def next_uint64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def next_unit(self) -> float:
        """Uniform in [-1, 1)."""
        return self.next_uint64() / 2.0**63 - 1.0

    def matrix(self, rows: int, cols: int) -> np.ndarray:
        """Next rows*cols uniform [-1, 1) draws, reshaped row-major.

        splitmix64 is counter-based (state after n steps is
        seed + n*gamma), so the block is produced vectorized with the
        same values the scalar generator would emit.
        """
        count = rows * cols
        idx = np.arange(1, count + 1, dtype=np.uint64)
        x = np.uint64(self._state) + idx * np.uint64(0x9E3779B97F4A7C15)
        z = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
        self._state = (self._state + count * 0x9E3779B97F4A7C15) & _MASK
        return (z / 2.0**63 - 1.0).reshape(rows, cols)


def derive_seed(seed: int, *tags: int) -> int:
    """Deterministically split a seed for independent trial streams."""
    g = SplitMix64(seed)
    x = g.next_uint64()
    for t in tags:
        x = (x ^ ((int(t) + 0x9E3779B97F4A7C15) & _MASK)) & _MASK
        x = SplitMix64(x).next_uint64()
    return x
