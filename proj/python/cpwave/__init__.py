# Copyright 2026 The cpwave Authors
# SPDX-License-Identifier: Apache-2.0
"""Compound Poisson paths, exact Haar coefficients and M-term approximation."""

from ._cpwave import (
    CompoundPoissonPath,
    DomainError,
    InvalidParameter,
    InvariantViolation,
    IoError,
    brownian_grid,
    coeff,
    coeff_envelope,
    dct2_forward,
    dct2_inverse,
    discrete_haar_forward,
    discrete_haar_inverse,
    energy_beyond_scale,
    expand_dense,
    expected_two_pow,
    ind,
    jm_bounds,
    linear_mse,
    mse_curve_csv,
    path_from_times,
    phi_tilde,
    psi_tilde,
    run_mse_curve,
    sample_path,
    select,
    select_discrete,
    spacing_survival,
    tail_linear_variance,
    theorem1_envelope,
)

__all__ = [name for name in dir() if not name.startswith("_")]
