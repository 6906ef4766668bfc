"""Adiabatic evolution simulation, stationarity certificates and
fixed-endpoint isospectral path optimization."""

from adiopt._core import (
    HamiltonianPath,
    PropagatorTrace,
    RotatingSpinParams,
    SpinEffectiveParams,
    __version__,
    adiabaticity_series,
    analytic_adiabaticity,
    analytic_propagator,
    effective_params,
    evolve,
    expm_skew,
    final_adiabaticity,
    hermitian_basis,
    isospectral_path,
    lambda_ramp_path,
    optimize_isospectral,
    perturbed_path,
    residual_certificate,
    rotating_spin_path,
    slowness_series,
    spin_initial_state,
    spin_period,
    stationarity_series,
    time_dilate,
)

__all__ = [
    "HamiltonianPath",
    "PropagatorTrace",
    "RotatingSpinParams",
    "SpinEffectiveParams",
    "__version__",
    "adiabaticity_series",
    "analytic_adiabaticity",
    "analytic_propagator",
    "effective_params",
    "evolve",
    "expm_skew",
    "final_adiabaticity",
    "hermitian_basis",
    "isospectral_path",
    "lambda_ramp_path",
    "optimize_isospectral",
    "perturbed_path",
    "residual_certificate",
    "rotating_spin_path",
    "slowness_series",
    "spin_initial_state",
    "spin_period",
    "stationarity_series",
    "time_dilate",
]
