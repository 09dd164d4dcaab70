"""Deterministic, sub-seedable uniform random streams.

All generators in this package consume uniforms from an :class:`RngStream`.
A stream is fully determined by its seed (and spawn path), so any batch can
be reproduced bit-exactly from the seed recorded in its manifest.  Disjoint
parallel streams come from :meth:`RngStream.substream`, which is stable:
``substream(i)`` depends only on the parent's identity and ``i``, never on
how many uniforms were already drawn.
"""

from __future__ import annotations

import numpy as np

# random() yields k / 2**53; zero is possible and would break log/quantile
# transforms, so draws are floored to the smallest value the generator can
# otherwise produce.
_MIN_UNIFORM = 2.0**-53


class RngStream:
    """Uniform(0,1) stream backed by a seeded PCG64 generator."""

    def __init__(self, seed: int, spawn_key: tuple[int, ...] = ()):
        self.seed = int(seed)
        self.spawn_key = tuple(spawn_key)
        self._gen = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=self.spawn_key))
        )

    def uniform(self) -> float:
        """Next uniform, guaranteed to lie in (0, 1)."""
        return max(self._gen.random(), _MIN_UNIFORM)

    def uniforms(self, shape: int | tuple[int, ...]) -> np.ndarray:
        """Array of uniforms in (0, 1), consumed in C order."""
        u = self._gen.random(shape)
        return np.maximum(u, _MIN_UNIFORM, out=u)

    def substream(self, index: int) -> "RngStream":
        """Disjoint child stream; deterministic in (seed, spawn path, index)."""
        if index < 0:
            raise ValueError("substream index must be non-negative")
        return RngStream(self.seed, self.spawn_key + (index,))

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, spawn_key={self.spawn_key})"
