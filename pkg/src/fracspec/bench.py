"""Manufactured solutions and convergence-rate harness.

The benchmark solution is the d-fold product of the periodic hat function
w(x) = x for x <= π, 2π - x for x >= π, recentered to zero mean. Its Fourier
coefficients are known in closed form (ŵ_k = -4/k² for odd k, 0 for even
k ≠ 0, ŵ_0 = π²), decay like k^{-2}, and produce a kinked, nonsmooth
solution — a deliberately hard target for spectral approximation. Forcings
f = (−Δ)^s u are exact as well, so discretization errors can be measured
against reference truncations instead of against another solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fracops import solve_poisson
from .phasefield import PhaseFieldParams, step
from .spectral import (TWO_PI, CoefficientSource, GridSpec, ModeField,
                       basis_mode, project)


def hat_coeffs() -> CoefficientSource:
    """Fourier coefficients of the 1D hat function w."""
    def fn(k):
        k = np.asarray(k)
        odd = k % 2 != 0
        ksq = np.where(odd, k.astype(float) ** 2, 1.0)
        vals = np.where(odd, -4.0 / ksq, 0.0)
        return np.where(k == 0, np.pi ** 2, vals).astype(complex)
    return CoefficientSource(d=1, fn=fn, decay=2.0)


def product_solution(d: int) -> CoefficientSource:
    """Coefficients of u(x) = ∏_i w(x_i) - π^{2d}/(2π)^d: û_k = ∏ ŵ_{k_i}, û_0 = 0."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    hat = hat_coeffs().fn

    def fn(*ks):
        ks = [np.asarray(k) for k in ks]
        prod = hat(ks[0])
        for k in ks[1:]:
            prod = prod * hat(k)
        origin = ks[0] == 0
        for k in ks[1:]:
            origin = origin & (k == 0)
        return np.where(origin, 0.0, prod)
    return CoefficientSource(d=d, fn=fn, decay=2.0)


def forcing(src: CoefficientSource, s: float) -> CoefficientSource:
    """Coefficients of f = (−Δ)^s u: f̂_k = |k|^{2s} û_k, 0 at k = 0."""
    s = float(s)

    def fn(*ks):
        ks = [np.asarray(k, dtype=float) for k in ks]
        k2 = sum(k ** 2 for k in ks)
        mult = np.where(k2 > 0, np.power(np.where(k2 > 0, k2, 1.0), s), 0.0)
        return mult * np.asarray(src.fn(*ks), dtype=complex)

    decay = None if src.decay is None else src.decay - 2.0 * s
    return CoefficientSource(d=src.d, fn=fn, decay=decay)


def fit_loglog_slope(resolutions, errors, skip_coarsest: int = 1) -> float:
    """Least-squares slope of log(error) against log(resolution)."""
    x = np.log(np.asarray(resolutions, dtype=float)[skip_coarsest:])
    y = np.log(np.asarray(errors, dtype=float)[skip_coarsest:])
    return float(np.polyfit(x, y, 1)[0])


def hat_tail_bound(n_ref: int, s: float) -> float:
    """Analytic bound on the squared |·|_s mass of the 1D hat solution beyond n_ref.

    Uses |û_k| <= 4 k^{-2} on odd modes: Σ_{|k| > n_ref/2} |k|^{2s} |û_k|² / 2π
    <= 16 (n_ref/2 - 1)^{2s-3} / ((3 - 2s) · 2π). Requires s < 3/2.
    """
    if not s < 1.5:
        raise ValueError("tail bound needs s < 3/2")
    k0 = n_ref // 2 - 1
    return 16.0 * k0 ** (2.0 * s - 3.0) / ((3.0 - 2.0 * s) * TWO_PI)


@dataclass(frozen=True)
class ConvergenceReport:
    """Error-vs-resolution study with a fitted log-log rate.

    ``resolutions`` are grid sizes n (spatial studies, n_ref set) or time
    steps τ (temporal studies, n_ref None). ``bounds``/``ratios`` carry the
    per-resolution a-priori bound and error/bound ratio when available;
    ``tail_bound`` is the analytic bound on squared reference-truncation
    leakage.
    """

    resolutions: tuple[float, ...]
    errors: tuple[float, ...]
    slope: float
    norm_order: float
    n_ref: int | None = None
    bounds: tuple[float, ...] | None = None
    ratios: tuple[float, ...] | None = None
    tail_bound: float | None = None

    def __post_init__(self):
        if len(self.resolutions) < 4:
            raise ValueError("need at least 4 resolutions for a rate fit")
        if len(self.errors) != len(self.resolutions):
            raise ValueError("errors and resolutions must pair up")
        if self.n_ref is not None and self.n_ref < 8 * max(self.resolutions):
            raise ValueError("reference truncation must be >= 8x the finest grid")

    def verdict(self, expected_slope: float, window: float = 0.15) -> str:
        return "PASS" if abs(self.slope - expected_slope) <= window else "FAIL"

    def csv_lines(self) -> list[str]:
        lines = ["resolution,error,bound,ratio"]
        for i, (res, err) in enumerate(zip(self.resolutions, self.errors)):
            bound = "" if self.bounds is None else repr(self.bounds[i])
            ratio = "" if self.ratios is None else repr(self.ratios[i])
            lines.append(f"{res!r},{err!r},{bound},{ratio}")
        return lines


def poisson_convergence(s: float, n_list, n_ref: int = 8192,
                        d: int = 1) -> ConvergenceReport:
    """Errors |u - u_n|_s of the spectral Poisson solve with f_n = P_n f.

    For each n the discrete problem is assembled and solved through the
    production path (project + solve_poisson); the error is evaluated against
    the exact coefficients truncated at n_ref. Also records the a-priori
    bound |f - P_n f|_{-s} and the error/bound ratio for each n.
    """
    n_list = sorted(int(n) for n in n_list)
    u_src = product_solution(d)
    f_src = forcing(u_src, s)
    ref_spec = GridSpec((n_ref,) * d)
    u_exact = u_src.on_modes(ref_spec)
    f_exact = f_src.on_modes(ref_spec)
    k2_ref = ref_spec.wavenumber_squared
    nz = k2_ref > 0
    w_plus = np.zeros_like(k2_ref)
    w_minus = np.zeros_like(k2_ref)
    w_plus[nz] = k2_ref[nz] ** s
    w_minus[nz] = k2_ref[nz] ** (-s)

    errors, bounds, ratios = [], [], []
    for n in n_list:
        spec = GridSpec((n,) * d)
        u_n = solve_poisson(project(f_src, spec), s)
        center = tuple(slice((n_ref - n) // 2, (n_ref - n) // 2 + n)
                       for _ in range(d))
        diff = u_exact.copy()
        diff[center] -= u_n.coeffs
        err = math.sqrt(np.sum(w_plus * np.abs(diff) ** 2) / TWO_PI ** d)
        f_tail = f_exact.copy()
        f_tail[center] = 0.0
        bound = math.sqrt(np.sum(w_minus * np.abs(f_tail) ** 2) / TWO_PI ** d)
        errors.append(err)
        bounds.append(bound)
        ratios.append(err / bound)

    slope = fit_loglog_slope(n_list, errors)
    tail = hat_tail_bound(n_ref, s) if d == 1 else None
    return ConvergenceReport(tuple(float(n) for n in n_list), tuple(errors),
                             slope, norm_order=s, n_ref=n_ref,
                             bounds=tuple(bounds), ratios=tuple(ratios),
                             tail_bound=tail)


def heat_convergence(s: float, tau_list, T: float, u0_mode,
                     tilde_eps: float = 0.125,
                     spec: GridSpec | None = None) -> ConvergenceReport:
    """O(τ) error of the semi-implicit stepper on the linear equation.

    With the concave term disabled the scheme is a per-mode backward Euler
    discretization of ∂_t u + ((−Δ)^s + ε^{-2}) u = 0, so a single-mode
    initial condition decays like exp(-T λ_k). Errors are measured at time T
    against that exact factor; first order in τ is expected.
    """
    if spec is None:
        spec = GridSpec((16,) * len(tuple(np.atleast_1d(u0_mode))))
    u0 = basis_mode(spec, np.atleast_1d(u0_mode))
    tau_list = sorted((float(t) for t in tau_list), reverse=True)

    errors = []
    for tau in tau_list:
        steps = round(T / tau)
        if abs(steps * tau - T) > 1e-12 * T:
            raise ValueError(f"T={T} is not an integer multiple of tau={tau}")
        p = PhaseFieldParams(spec=spec, s=s, alpha=0.0, tilde_eps=tilde_eps,
                             tau=tau, steps=steps)
        u = u0
        for _ in range(steps):
            u = step(u, p, f_cv=None)
        k2 = spec.wavenumber_squared
        lam = np.where(k2 > 0, np.power(np.where(k2 > 0, k2, 1.0), s), 0.0) \
            + p.eps_m2
        exact = u0.coeffs * np.exp(-T * lam)
        diff = ModeField(spec, u.coeffs - exact)
        errors.append(math.sqrt(np.sum(np.abs(diff.coeffs) ** 2)
                                / TWO_PI ** spec.d))

    slope = fit_loglog_slope(tau_list, errors)
    return ConvergenceReport(tuple(tau_list), tuple(errors), slope,
                             norm_order=0.0)


def second_difference(values: np.ndarray) -> np.ndarray:
    """Circular second difference v_{j+1} - 2 v_j + v_{j-1} of 1D nodal data."""
    v = np.asarray(values)
    return np.roll(v, -1) - 2.0 * v + np.roll(v, 1)
