"""Fractional Laplacian powers as diagonal Fourier multipliers.

(−Δ)^s scales mode k by |k|^{2s} and annihilates the mean mode; negative s
gives the inverse operator on mean-free fields. The mode-wise multipliers
make (−Δ)^s an isometry H^r → H^{r-2s} in the seminorms of
:mod:`fracspec.spectral`, which ``isometry_check`` exposes for testing.
"""

from __future__ import annotations

import numpy as np

from .spectral import ModeField, _require_mean_free, sobolev_norm


def _power_multiplier(k2: np.ndarray, s: float) -> np.ndarray:
    """|k|^{2s} = (|k|²)^s on the mode grid, 0 at k = 0."""
    with np.errstate(divide="ignore"):
        mult = np.power(k2, s)
    return np.where(k2 > 0, mult, 0.0)


def apply_power(C: ModeField, s: float) -> ModeField:
    """(−Δ)^s C: coefficient |k|^{2s} ṽ_k at k ≠ 0, exactly 0 at k = 0.

    For s < 0 the input must be mean-free (the operator inverts (−Δ)^{|s|}).
    The output is always mean-free by construction.
    """
    s = float(s)
    if not np.isfinite(s):
        raise ValueError(f"power must be finite, got {s}")
    if s < 0:
        _require_mean_free(C, "a negative power of the Laplacian")
    mult = _power_multiplier(C.spec.wavenumber_squared, s)
    return ModeField(C.spec, mult * C.coeffs)


def solve_poisson(F: ModeField, s: float) -> ModeField:
    """Solve (−Δ)^s u = F for mean-free F and s > 0: û_k = |k|^{-2s} f̃_k."""
    s = float(s)
    if not (np.isfinite(s) and s > 0.0):
        raise ValueError(f"the Poisson solver needs s > 0, got {s}")
    _require_mean_free(F, "the fractional Poisson problem")
    return apply_power(F, -s)


def isometry_check(C: ModeField, r: float, s: float) -> tuple[float, float]:
    """Return (|(−Δ)^s C|_{r-2s}, |C|_r); the pair agrees to roundoff."""
    _require_mean_free(C, "the isometry check")
    return sobolev_norm(apply_power(C, s), r - 2.0 * s), sobolev_norm(C, r)
