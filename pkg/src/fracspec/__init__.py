"""Fourier spectral toolkit for fractional PDEs on the torus.

Subpackages: :mod:`~fracspec.spectral` (grids, transforms, Sobolev norms),
:mod:`~fracspec.fracops` (fractional Laplacian powers, Poisson solver),
:mod:`~fracspec.denoise` (variational image denoising and parameter fitting),
:mod:`~fracspec.phasefield` (Allen-Cahn / Cahn-Hilliard time stepping),
:mod:`~fracspec.bench` (manufactured solutions, convergence studies),
:mod:`~fracspec.cli` (the ``fracspec`` command).
"""

from .fracops import apply_power, isometry_check, solve_poisson
from .spectral import (CoefficientSource, GridField, GridSpec, ModeField,
                       basis_mode, discrete_inner, forward_transform,
                       interpolate, inverse_transform, l2_norm, project,
                       sobolev_norm)

__version__ = "0.1.0"

__all__ = [
    "CoefficientSource", "GridField", "GridSpec", "ModeField", "apply_power",
    "basis_mode", "discrete_inner", "forward_transform", "interpolate",
    "inverse_transform", "isometry_check", "l2_norm", "project",
    "solve_poisson", "sobolev_norm", "__version__",
]
