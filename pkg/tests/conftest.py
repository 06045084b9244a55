"""Shared oracles: brute-force implementations of the transform definitions.

These evaluate the defining sums term by term (O(N²)), independently of the
FFT/ordering plumbing under test, so they are only used on small grids.
"""

import numpy as np
import pytest

from fracspec.spectral import GridSpec

TWO_PI = 2.0 * np.pi


def naive_forward(spec: GridSpec, values: np.ndarray) -> np.ndarray:
    """ṽ_k = (2π)^d/(n_1···n_d) Σ_j v_j exp(-i k·x_j), canonical ordering."""
    coeffs = np.zeros(spec.shape, dtype=complex)
    scale = TWO_PI ** spec.d / spec.num_points
    for p in np.ndindex(*spec.shape):
        k = [p[i] - spec.n[i] // 2 for i in range(spec.d)]
        total = 0.0 + 0.0j
        for j in np.ndindex(*spec.shape):
            phase = sum(k[i] * j[i] * TWO_PI / spec.n[i] for i in range(spec.d))
            total += values[j] * np.exp(-1j * phase)
        coeffs[p] = scale * total
    return coeffs


def naive_inverse(spec: GridSpec, coeffs: np.ndarray) -> np.ndarray:
    """v_j = (2π)^{-d} Σ_k ṽ_k exp(i k·x_j)."""
    values = np.zeros(spec.shape, dtype=complex)
    for j in np.ndindex(*spec.shape):
        total = 0.0 + 0.0j
        for p in np.ndindex(*spec.shape):
            k = [p[i] - spec.n[i] // 2 for i in range(spec.d)]
            phase = sum(k[i] * j[i] * TWO_PI / spec.n[i] for i in range(spec.d))
            total += coeffs[p] * np.exp(1j * phase)
        values[j] = total / TWO_PI ** spec.d
    return values


def random_grid_field(spec: GridSpec, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal(spec.shape) + 1j * rng.standard_normal(spec.shape)


def random_mean_free_modes(spec: GridSpec, rng: np.random.Generator) -> np.ndarray:
    coeffs = rng.standard_normal(spec.shape) + 1j * rng.standard_normal(spec.shape)
    coeffs[spec.zero_mode_index] = 0.0
    return coeffs


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260809)
