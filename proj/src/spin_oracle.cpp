#include "adiopt/spin_oracle.hpp"

#include <cmath>

namespace adiopt {

SpinEffectiveParams effective_params(const RotatingSpinParams& params) {
  params.validate();
  const double w0 = params.omega0;
  const double w = params.omega;
  const double c3 = w0 * std::cos(params.theta) + w;
  const double c1 = w0 * std::sin(params.theta);
  const double wbar = std::hypot(c3, c1);
  if (wbar < 1e-12 * (w0 + std::abs(w))) {
    throw DegenerateFrameError(
        "effective_params: rotating-frame generator vanishes (exact anti-alignment)");
  }
  return {wbar, std::atan2(c1, c3)};
}

UnitaryOperator analytic_propagator(const RotatingSpinParams& params, double t) {
  if (!std::isfinite(t)) throw ValidationError("analytic_propagator: non-finite time");
  const SpinEffectiveParams eff = effective_params(params);
  const cxd i(0.0, 1.0);

  cmat rot = cmat::Zero(2, 2);  // exp(-i omega t s3 / 2)
  rot(0, 0) = std::polar(1.0, -0.5 * params.omega * t);
  rot(1, 1) = std::polar(1.0, 0.5 * params.omega * t);

  // exp(+i phi (cos(beta) s3 + sin(beta) s1)) = cos(phi) + i sin(phi) (..)
  const double phi = 0.5 * eff.omega_bar * t;
  const double c = std::cos(phi), s = std::sin(phi);
  const double cb = std::cos(eff.beta), sb = std::sin(eff.beta);
  cmat prec(2, 2);
  prec(0, 0) = c + i * s * cb;
  prec(0, 1) = i * s * sb;
  prec(1, 0) = i * s * sb;
  prec(1, 1) = c - i * s * cb;

  return UnitaryOperator(rot * prec);
}

double analytic_adiabaticity(const RotatingSpinParams& params, double t) {
  if (!std::isfinite(t)) throw ValidationError("analytic_adiabaticity: non-finite time");
  const SpinEffectiveParams eff = effective_params(params);
  const double amp = params.omega * std::sin(params.theta) / eff.omega_bar;
  const double s = std::sin(0.5 * eff.omega_bar * t);
  return 1.0 - amp * amp * s * s;
}

StateVector spin_initial_state(const RotatingSpinParams& params) {
  params.validate();
  cvec v(2);
  v[0] = std::cos(0.5 * params.theta);
  v[1] = std::sin(0.5 * params.theta);
  return StateVector::normalized(std::move(v));
}

double spin_period(const RotatingSpinParams& params) {
  return 2.0 * kPi / effective_params(params).omega_bar;
}

}  // namespace adiopt
