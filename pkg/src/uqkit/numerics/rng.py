"""Reproducible random streams.

The generator algorithm is fixed so golden values are portable: every
stream is numpy's counter-based Philox-4x32-10 bit generator keyed by a
64-bit seed. Identical seeds produce byte-identical draw sequences across
runs and platforms. Substreams are derived from (seed, index) through the
splitmix64 mixing function, so the stream used by replicate ``b`` or fold
``i`` does not depend on how many draws its siblings consumed.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def _splitmix64(z: int) -> int:
    # Standard splitmix64 finalizer; used only to derive child seeds.
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


class RngStream:
    """Single-owner mutable random stream with a fixed 64-bit seed.

    Parameters
    ----------
    seed : int
        Seed in [0, 2**64). The same seed always reproduces the same
        draw sequence.
    """

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed < (1 << 64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        self.seed = seed
        self._gen = np.random.Generator(np.random.Philox(key=seed))

    def spawn(self, index: int) -> "RngStream":
        """Derive the independent substream identified by (seed, index)."""
        if index < 0:
            raise ValueError("substream index must be non-negative")
        return RngStream(_splitmix64(self.seed ^ _splitmix64(int(index))))

    # Draw methods delegate to the wrapped generator; only the ones the
    # toolkit needs are exposed so the documented surface stays small.

    def normal(self, size=None) -> np.ndarray:
        return self._gen.standard_normal(size)

    def uniform(self, low: float = 0.0, high: float = 1.0, size=None) -> np.ndarray:
        return self._gen.uniform(low, high, size)

    def integers(self, low: int, high: int | None = None, size=None) -> np.ndarray:
        return self._gen.integers(low, high, size)

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)

    def multinomial(self, n: int, pvals) -> np.ndarray:
        return self._gen.multinomial(n, pvals)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed})"
