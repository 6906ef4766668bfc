"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import adiopt


SCENARIO = adiopt.RotatingSpinParams(omega0=1.0, omega=0.5, theta=math.pi / 2)


def test_hermitian_basis_is_pauli_at_dim_2():
    basis = adiopt.hermitian_basis(2)
    assert len(basis) == 3
    np.testing.assert_allclose(basis[0], [[0, 1], [1, 0]], atol=1e-15)
    np.testing.assert_allclose(basis[2], [[1, 0], [0, -1]], atol=1e-15)
    assert len(adiopt.hermitian_basis(4)) == 15


def test_expm_skew_of_sigma_z():
    u = adiopt.expm_skew(np.diag([1.0, -1.0]).astype(complex), math.pi)
    np.testing.assert_allclose(u, -np.eye(2), atol=1e-14)


def test_effective_params_and_period():
    eff = adiopt.effective_params(SCENARIO)
    assert eff.omega_bar == pytest.approx(math.sqrt(1.25), rel=1e-14)
    assert adiopt.spin_period(SCENARIO) == pytest.approx(2 * math.pi / eff.omega_bar)


def test_analytic_adiabaticity_values():
    wbar = adiopt.effective_params(SCENARIO).omega_bar
    assert adiopt.analytic_adiabaticity(SCENARIO, 2 * math.pi / wbar) == pytest.approx(1.0)
    assert adiopt.analytic_adiabaticity(SCENARIO, math.pi / wbar) == pytest.approx(0.8)


def test_numeric_pipeline_matches_oracle():
    duration = adiopt.spin_period(SCENARIO)
    path = adiopt.rotating_spin_path(SCENARIO, duration)
    times, values = adiopt.adiabaticity_series(path, level=0, steps=2048)
    exact = [adiopt.analytic_adiabaticity(SCENARIO, t) for t in times]
    assert np.max(np.abs(np.asarray(values) - np.asarray(exact))) < 1e-5
    assert adiopt.final_adiabaticity(path, 0, 2048) == pytest.approx(1.0, abs=1e-6)


def test_propagator_trace_is_unitary():
    path = adiopt.rotating_spin_path(SCENARIO, 2.0)
    trace = adiopt.evolve(path, 256)
    assert trace.max_unitarity_defect < 1e-9
    u = trace.final
    np.testing.assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-9)


def test_residual_certificate_at_special_times():
    duration = adiopt.spin_period(SCENARIO)
    optimal = adiopt.rotating_spin_path(SCENARIO, duration)
    assert adiopt.residual_certificate(optimal, 0, 4096)["pass"]

    off = adiopt.rotating_spin_path(SCENARIO, 0.65 * duration)
    assert not adiopt.residual_certificate(off, 0, 4096)["pass"]


def test_validation_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        adiopt.RotatingSpinParams(omega0=-1.0, omega=0.0, theta=0.0)
    with pytest.raises(ValueError):
        adiopt.hermitian_basis(1)


def test_optimize_runs_and_reports():
    duration = adiopt.spin_period(SCENARIO)
    path = adiopt.rotating_spin_path(SCENARIO, duration)
    h0 = path.at(0.0)
    v_end = adiopt.expm_skew(np.diag([1.0, -1.0]).astype(complex), 0.5 * SCENARIO.omega * duration)
    report = adiopt.optimize_isospectral(h0, v_end, duration, steps=512, control_nodes=8,
                                         max_iters=5)
    assert report["converged"]
    assert report["final_A"] >= 1 - 1e-6
    history = report["A_history"]
    assert all(b >= a for a, b in zip(history, history[1:]))
