"""Seeded, portable pseudo-random numbers for reproducible experiment inputs.

The generator is SplitMix64 (Steele, Lea & Flood 2014): the i-th raw word is
``mix(seed + i * 0x9E3779B97F4A7C15)`` with the standard two-round
xor-multiply finalizer, all arithmetic mod 2^64. Because word i depends only
on (seed, i) the whole stream vectorizes, and a given (algorithm, seed) pair
replays the identical sample sequence on any platform. Gaussian samples use
the Box-Muller transform on consecutive uniform pairs.

Run manifests record ``ALGORITHM`` and the seed so artifact files can be
regenerated byte-for-byte.
"""

from __future__ import annotations

import numpy as np

ALGORITHM = "splitmix64-boxmuller"

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


class PortableRng:
    """Counter-based SplitMix64 stream with uniform and Gaussian draws.

    Successive calls continue the stream, so ``normals(2*n)`` equals
    ``normals(n)`` twice for even n.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self._next_index = 1

    def _raw(self, count: int) -> np.ndarray:
        idx = np.arange(self._next_index, self._next_index + count, dtype=np.uint64)
        self._next_index += count
        with np.errstate(over="ignore"):
            z = np.uint64(self.seed) + idx * _GAMMA
            z = (z ^ (z >> np.uint64(30))) * _MIX1
            z = (z ^ (z >> np.uint64(27))) * _MIX2
            z = z ^ (z >> np.uint64(31))
        return z

    def uniforms(self, count: int) -> np.ndarray:
        """i.i.d. U[0,1) doubles (53-bit mantissas)."""
        return (self._raw(count) >> np.uint64(11)).astype(np.float64) * 2.0 ** -53

    def symmetric_uniforms(self, count: int, half_width: float) -> np.ndarray:
        """i.i.d. U[-half_width, half_width]."""
        return (2.0 * self.uniforms(count) - 1.0) * half_width

    def normals(self, count: int, sigma: float = 1.0) -> np.ndarray:
        """i.i.d. N(0, sigma²) via Box-Muller on consecutive uniform pairs."""
        pairs = (count + 1) // 2
        u = self.uniforms(2 * pairs)
        # shift u1 into (0, 1] so log() is finite
        u1 = 1.0 - u[0::2]
        u2 = u[1::2]
        radius = np.sqrt(-2.0 * np.log(u1))
        angle = 2.0 * np.pi * u2
        z = np.empty(2 * pairs)
        z[0::2] = radius * np.cos(angle)
        z[1::2] = radius * np.sin(angle)
        return sigma * z[:count]
