"""Uniform torus grids, the discrete Fourier transform pair, and Sobolev norms.

Everything else in this package is built on the conventions fixed here, so
they are spelled out once in full.

Domain and grid
---------------
The domain is the d-dimensional torus [0, 2π)^d. A grid is described by
per-axis point counts n = (n_1, ..., n_d), each even and >= 4, with nodes::

    x_j = (j_1 * 2π/n_1, ..., j_d * 2π/n_d),   0 <= j_i <= n_i - 1.

Nodal data (``GridField``) is stored row-major over j, i.e. ``values[j_1,
..., j_d]``.

Transform pair
--------------
With Φ^k the grid sampling of φ^k(x) = exp(i k·x), the discrete Fourier
coefficients of a grid function V are::

    ṽ_k = (V, Φ^k)_n = (2π)^d / (n_1···n_d) * Σ_j v_j exp(-i k·x_j)

for wave indices k in the centered index box -n_i/2 <= k_i <= n_i/2 - 1,
and the inverse reads::

    v_j = (2π)^{-d} Σ_k ṽ_k exp(i k·x_j).

Coefficient data (``ModeField``) is stored in the *canonical ordering*:
row-major over the shifted index p_i = k_i + n_i/2. For even n this is
exactly ``fftshift`` applied to NumPy's FFT output, which is how the
transforms are computed internally. The ordering is part of the public
contract; snapshot files rely on it.

Norms
-----
The discrete scalar product is (V, W)_n = (2π)^d/(n_1···n_d) Σ_j v_j
conj(w_j). The Sobolev seminorm of order μ is::

    |v|_μ = ( (2π)^{-d} Σ_{k≠0} |k|^{2μ} |ṽ_k|² )^{1/2}

with |k| the Euclidean norm of the integer tuple. The (2π)^{-d} weight
makes |v|_s = ‖(−Δ)^{s/2} v‖ hold exactly and turns Parseval into
(V, V)_n = (2π)^{-d} Σ_k |ṽ_k|² (the k = 0 term included; see ``l2_norm``).
For μ < 0 the seminorm is only defined on mean-free fields, i.e. fields
whose k = 0 coefficient vanishes within ``MEAN_FREE_RTOL``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

TWO_PI = 2.0 * np.pi

# |ṽ_0| <= MEAN_FREE_RTOL * max(1, max_k |ṽ_k|) counts as mean-free.
MEAN_FREE_RTOL = 1e-10


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on [0, 2π)^d with per-axis point counts ``n``.

    Mixed resolutions (n_x != n_y) are supported; every n_i must be even
    and at least 4. Dimensions 1-3 are accepted (1 and 2 are exercised).
    """

    n: tuple[int, ...]

    def __post_init__(self):
        n = tuple(int(v) for v in self.n)
        object.__setattr__(self, "n", n)
        if not 1 <= len(n) <= 3:
            raise ValueError(f"dimension must be 1, 2 or 3, got {len(n)}")
        for ni in n:
            if ni < 4 or ni % 2 != 0:
                raise ValueError(f"each n_i must be even and >= 4, got {ni}")

    @property
    def d(self) -> int:
        return len(self.n)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.n

    @property
    def num_points(self) -> int:
        return int(np.prod(self.n))

    def axis_nodes(self, i: int) -> np.ndarray:
        """Nodal coordinates 2π j/n_i along axis i."""
        return np.arange(self.n[i]) * (TWO_PI / self.n[i])

    def meshgrid(self) -> tuple[np.ndarray, ...]:
        """Nodal coordinate arrays, one per axis, each of shape ``self.shape``."""
        return tuple(np.meshgrid(*(self.axis_nodes(i) for i in range(self.d)),
                                 indexing="ij"))

    def wave_axis(self, i: int) -> np.ndarray:
        """Integer wave numbers -n_i/2 .. n_i/2 - 1 in canonical order."""
        return np.arange(-self.n[i] // 2, self.n[i] // 2)

    def wave_meshgrid(self) -> tuple[np.ndarray, ...]:
        return tuple(np.meshgrid(*(self.wave_axis(i) for i in range(self.d)),
                                 indexing="ij"))

    @cached_property
    def wavenumber_squared(self) -> np.ndarray:
        """|k|² on the canonical mode grid (float64, exact for these sizes)."""
        k2 = np.zeros(self.shape)
        for i in range(self.d):
            ki = self.wave_axis(i).astype(float)
            shape = [1] * self.d
            shape[i] = self.n[i]
            k2 = k2 + (ki ** 2).reshape(shape)
        k2.setflags(write=False)
        return k2

    @property
    def zero_mode_index(self) -> tuple[int, ...]:
        """Position of k = 0 in the canonical ordering."""
        return tuple(ni // 2 for ni in self.n)


def _as_complex_array(values, shape: tuple[int, ...], what: str) -> np.ndarray:
    arr = np.array(values, dtype=complex, copy=True, order="C")
    if arr.shape != shape:
        raise ValueError(f"{what} has shape {arr.shape}, expected {shape}")
    if not np.all(np.isfinite(arr.view(float))):
        raise ValueError(f"{what} contains non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GridField:
    """Complex nodal values on a grid, row-major over the node index j."""

    spec: GridSpec
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "values",
            _as_complex_array(self.values, self.spec.shape, "values"))


@dataclass(frozen=True)
class ModeField:
    """Discrete Fourier coefficients ṽ_k in the canonical shifted ordering."""

    spec: GridSpec
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs",
            _as_complex_array(self.coeffs, self.spec.shape, "coeffs"))

    @property
    def zero_mode(self) -> complex:
        return complex(self.coeffs[self.spec.zero_mode_index])

    @property
    def mean_free(self) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.coeffs))))
        return abs(self.zero_mode) <= MEAN_FREE_RTOL * scale


@dataclass(frozen=True)
class CoefficientSource:
    """Closed-form Fourier coefficients k ↦ v̂_k of an analytically known function.

    ``fn`` maps d integer index arrays (broadcastable, one per axis) to the
    complex coefficient array; it must be deterministic. ``decay`` optionally
    records the algebraic decay exponent p of |v̂_k| ~ |k|^{-p} for tail
    estimates.
    """

    d: int
    fn: Callable[..., np.ndarray] = field(repr=False)
    decay: float | None = None

    def at(self, k: Sequence[int]) -> complex:
        """Single coefficient v̂_k."""
        k = tuple(int(v) for v in k)
        if len(k) != self.d:
            raise ValueError(f"index has {len(k)} components, expected {self.d}")
        return complex(np.asarray(self.fn(*(np.asarray(v) for v in k))))

    def on_modes(self, spec: GridSpec) -> np.ndarray:
        """Coefficients on the canonical mode grid of ``spec``."""
        if spec.d != self.d:
            raise ValueError(f"spec is {spec.d}-dimensional, source is {self.d}")
        return np.asarray(self.fn(*spec.wave_meshgrid()), dtype=complex)


def basis_mode(spec: GridSpec, k: Sequence[int],
               amplitude: complex | None = None) -> ModeField:
    """ModeField of amplitude·φ^k; default amplitude makes nodal values exp(i k·x)."""
    if amplitude is None:
        amplitude = TWO_PI ** spec.d
    k = tuple(int(v) for v in k)
    coeffs = np.zeros(spec.shape, dtype=complex)
    idx = tuple(k[i] + spec.n[i] // 2 for i in range(spec.d))
    for i, p in enumerate(idx):
        if not 0 <= p < spec.n[i]:
            raise ValueError(f"wave index {k} outside the index box of {spec.n}")
    coeffs[idx] = amplitude
    return ModeField(spec, coeffs)


def forward_transform(V: GridField) -> ModeField:
    """Discrete Fourier transform ṽ_k = (V, Φ^k)_n."""
    spec = V.spec
    scale = TWO_PI ** spec.d / spec.num_points
    coeffs = np.fft.fftshift(np.fft.fftn(V.values)) * scale
    return ModeField(spec, coeffs)


def inverse_transform(C: ModeField) -> GridField:
    """Nodal values v_j = (2π)^{-d} Σ_k ṽ_k exp(i k·x_j)."""
    spec = C.spec
    scale = spec.num_points / TWO_PI ** spec.d
    values = np.fft.ifftn(np.fft.ifftshift(C.coeffs)) * scale
    return GridField(spec, values)


def discrete_inner(V: GridField, W: GridField) -> complex:
    """Discrete scalar product (V, W)_n = (2π)^d/(n_1···n_d) Σ_j v_j conj(w_j)."""
    if V.spec != W.spec:
        raise ValueError(f"grid specs differ: {V.spec} vs {W.spec}")
    scale = TWO_PI ** V.spec.d / V.spec.num_points
    return complex(scale * np.vdot(W.values, V.values))


def interpolate(v: Callable[..., np.ndarray], spec: GridSpec) -> ModeField:
    """Coefficients of the trigonometric interpolant of a point-evaluable function.

    ``v`` receives one coordinate array per axis (the nodal meshgrid) and must
    broadcast over them. The represented trig polynomial matches v at every
    grid node.
    """
    values = np.asarray(v(*spec.meshgrid()), dtype=complex)
    values = np.broadcast_to(values, spec.shape)
    return forward_transform(GridField(spec, values))


def project(src: CoefficientSource, spec: GridSpec) -> ModeField:
    """Truncation of the continuous Fourier series: ṽ_k = v̂_k for k in the box."""
    return ModeField(spec, src.on_modes(spec))


def _require_mean_free(C: ModeField, op: str) -> None:
    if not C.mean_free:
        raise ValueError(
            f"{op} requires a mean-free field; k=0 coefficient is {C.zero_mode}")


def sobolev_norm(C: ModeField, mu: float) -> float:
    """Seminorm |v|_μ = ((2π)^{-d} Σ_{k≠0} |k|^{2μ} |ṽ_k|²)^{1/2}.

    The k = 0 term is always excluded; for μ < 0 the field must be mean-free.
    """
    if mu < 0:
        _require_mean_free(C, "a negative-order norm")
    spec = C.spec
    k2 = spec.wavenumber_squared
    power = np.abs(C.coeffs) ** 2
    nz = k2 > 0
    if mu == 0:
        weighted = power[nz]
    else:
        weighted = power[nz] * k2[nz] ** mu
    return float(np.sqrt(np.sum(weighted) / TWO_PI ** spec.d))


def l2_norm(C: ModeField) -> float:
    """Full L² norm ((2π)^{-d} Σ_k |ṽ_k|²)^{1/2}, k = 0 included (Parseval)."""
    total = np.sum(np.abs(C.coeffs) ** 2)
    return float(np.sqrt(total / TWO_PI ** C.spec.d))
