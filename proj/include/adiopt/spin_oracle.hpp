#pragma once

#include "adiopt/paths.hpp"

namespace adiopt {

/// Rotating-frame parameters of the spin model: in the frame rotating with
/// the field, the generator is static with precession rate omega_bar about
/// an axis tilted by beta from the 3-axis in the 1-3 plane.
struct SpinEffectiveParams {
  double omega_bar = 0.0;
  double beta = 0.0;
};

/// omega_bar = sqrt(omega0^2 + 2 omega0 omega cos(theta) + omega^2),
/// cos(beta) = (omega0 cos(theta) + omega) / omega_bar,
/// sin(beta) = omega0 sin(theta) / omega_bar.
/// The sign convention (frame co-rotating with the field) is fixed by
/// requiring analytic_propagator to solve the Schroedinger equation; see the
/// oracle test suite.
SpinEffectiveParams effective_params(const RotatingSpinParams& params);

/// U(t) = exp(-i omega t s3 / 2) exp(+i (omega_bar t / 2)(cos(beta) s3 + sin(beta) s1)).
UnitaryOperator analytic_propagator(const RotatingSpinParams& params, double t);

/// A(t) = 1 - (omega sin(theta) / omega_bar)^2 sin^2(omega_bar t / 2), for
/// evolution started in the ground state of H(0).
double analytic_adiabaticity(const RotatingSpinParams& params, double t);

/// exp(-i theta s2 / 2)|+>, the ground state of H(0) (eigenvalue -omega0/2).
StateVector spin_initial_state(const RotatingSpinParams& params);

/// 2 pi / omega_bar, the duration of one full effective precession period.
double spin_period(const RotatingSpinParams& params);

}  // namespace adiopt
