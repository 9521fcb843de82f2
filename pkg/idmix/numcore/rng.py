"""
Seeded, splittable random streams.

``Rng`` wraps a counter-based Philox generator. Child streams are derived from
the parent's seed and a textual label, never from the parent's draw position,
so ``rng.split("views")`` yields the same stream no matter how much the parent
has been used.
"""

import zlib
from typing import Optional, Tuple, Union

import numpy as np

Size = Optional[Union[int, Tuple[int, ...]]]


class Rng:
    """
    Reproducible random stream with labeled child streams.

    Args:
        seed: 64-bit integer seed
        spawn_key: Path of label hashes identifying this stream below the root
    """

    def __init__(self, seed: int, spawn_key: Tuple[int, ...] = ()):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self.spawn_key = tuple(spawn_key)
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=self.spawn_key)
        self.generator = np.random.Generator(np.random.Philox(sequence))

    def split(self, label: str) -> "Rng":
        """Return the independent child stream named ``label``."""
        return Rng(self.seed, self.spawn_key + (zlib.crc32(label.encode("utf-8")),))

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed}, spawn_key={self.spawn_key})"

    def random(self, size: Size = None):
        """Uniform draws on [0, 1)."""
        return self.generator.random(size)

    def uniform(self, low: float, high: float, size: Size = None):
        """Uniform draws on [low, high)."""
        return self.generator.uniform(low, high, size)

    def normal(self, loc: float = 0.0, scale: float = 1.0, size: Size = None):
        """Gaussian draws."""
        return self.generator.normal(loc, scale, size)

    def bernoulli(self, p: float, size: Size = None):
        """Boolean draws that are True with probability ``p``."""
        return self.generator.random(size) < p

    def beta(self, a: float, b: float, size: Size = None):
        """Beta(a, b) draws."""
        return self.generator.beta(a, b, size)

    def permutation(self, n: int) -> np.ndarray:
        """Uniform random permutation of ``range(n)``."""
        return self.generator.permutation(n)

    def integers(self, low: int, high: int, size: Size = None):
        """Integer draws on [low, high)."""
        return self.generator.integers(low, high, size)
