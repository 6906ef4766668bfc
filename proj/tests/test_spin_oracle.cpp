#include <doctest.h>

#include "adiopt/adiabaticity.hpp"
#include "adiopt/spin_oracle.hpp"
#include "test_support.hpp"

using namespace adiopt;
using namespace adiopt::testing;

TEST_SUITE_BEGIN("spin_oracle");

TEST_CASE("effective parameters in closed-form limits") {
  const SpinEffectiveParams aligned = effective_params({1.0, 0.5, 0.0});
  CHECK(aligned.omega_bar == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(aligned.beta == doctest::Approx(0.0));

  const SpinEffectiveParams still = effective_params({1.3, 0.0, 0.7});
  CHECK(still.omega_bar == doctest::Approx(1.3).epsilon(1e-14));
  CHECK(still.beta == doctest::Approx(0.7).epsilon(1e-14));

  const SpinEffectiveParams scenario = effective_params({1.0, 0.5, kPi / 2.0});
  CHECK(scenario.omega_bar == doctest::Approx(std::sqrt(1.25)).epsilon(1e-14));

  CHECK_THROWS_AS(effective_params({1.0, 1.0, kPi}), DegenerateFrameError);
}

TEST_CASE("analytic propagator basics") {
  const RotatingSpinParams p{1.0, 0.5, kPi / 2.0};
  CHECK(max_abs(analytic_propagator(p, 0.0).matrix() - cmat::Identity(2, 2)) < 1e-15);

  for (double t : {0.1, 1.7, 9.3}) {
    CHECK(analytic_propagator(p, t).unitarity_defect() < 1e-12);
  }

  // omega = 0: plain exp(-i H(0) t)
  const RotatingSpinParams still{1.0, 0.0, 0.9};
  const auto path = rotating_spin_path(still, 4.0);
  for (double t : {0.5, 2.0, 4.0}) {
    CHECK(max_abs(analytic_propagator(still, t).matrix() -
                  expm_skew(path.at(0.0), t).matrix()) < 1e-13);
  }
}

TEST_CASE("analytic propagator solves the Schroedinger equation") {
  const RotatingSpinParams p{1.0, 0.7, 1.1};
  const auto path = rotating_spin_path(p, 10.0);
  double previous = 0.0;
  for (const double delta : {1e-3, 5e-4}) {
    double dev = 0.0;
    for (double t : {0.5, 2.7, 6.4, 9.0}) {
      const cmat du =
          (analytic_propagator(p, t + delta).matrix() - analytic_propagator(p, t - delta).matrix()) /
          (2.0 * delta);
      dev = std::max(dev, max_abs(cxd(0.0, 1.0) * du -
                                  path.at(t).matrix() * analytic_propagator(p, t).matrix()));
    }
    CHECK(dev < 1.0 * delta * delta);  // second-order difference residual
    if (previous > 0.0) CHECK(dev < previous);
    previous = dev;
  }
}

TEST_CASE("analytic adiabaticity values") {
  const RotatingSpinParams p{1.0, 0.5, kPi / 2.0};
  const double wbar = effective_params(p).omega_bar;

  for (int m : {1, 2, 3}) {
    CHECK(analytic_adiabaticity(p, 2.0 * kPi * m / wbar) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(analytic_adiabaticity(p, kPi / wbar) == doctest::Approx(0.8).epsilon(1e-12));

  const RotatingSpinParams aligned{1.0, 0.5, 0.0};
  for (double t : {0.3, 2.0, 11.0}) {
    CHECK(analytic_adiabaticity(aligned, t) == doctest::Approx(1.0));
  }

  // envelope bound
  const double floor = 1.0 - std::pow(p.omega * std::sin(p.theta) / wbar, 2);
  for (int k = 0; k <= 100; ++k) {
    const double a = analytic_adiabaticity(p, 0.2 * k);
    CHECK(a <= 1.0 + 1e-12);
    CHECK(a >= floor - 1e-12);
  }
}

TEST_CASE("initial state is the ground state of H(0)") {
  const RotatingSpinParams p{1.0, 0.5, 0.8};
  const StateVector n0 = spin_initial_state(p);
  const auto path = rotating_spin_path(p, 1.0);
  const cvec residual = path.at(0.0).matrix() * n0.vector() + 0.5 * p.omega0 * n0.vector();
  CHECK(residual.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("full numeric pipeline reproduces the analytic adiabaticity") {
  std::mt19937_64 gen(53);
  for (int trial = 0; trial < 5; ++trial) {
    RotatingSpinParams p{1.0, uniform(gen, 0.1, 2.0), uniform(gen, 0.1, kPi - 0.1)};
    const double duration = spin_period(p);
    const auto path = rotating_spin_path(p, duration);
    const auto trace = evolve(path, 4096);
    const auto eigen = track_eigenstates(path, trace.grid, 0);
    const auto adiabaticity = adiabaticity_trace(state_trace(trace, eigen.states.front()), eigen);

    double dev = 0.0;
    for (size_t k = 0; k < adiabaticity.values.size(); ++k) {
      dev = std::max(dev, std::abs(adiabaticity.values[k] -
                                   analytic_adiabaticity(p, trace.grid.nodes()[k])));
    }
    CHECK(dev <= 1e-5);
  }
}

TEST_CASE("omega_bar matches the period of the numeric adiabaticity") {
  const RotatingSpinParams p{1.0, 0.5, kPi / 2.0};
  const double duration = spin_period(p);
  const auto path = rotating_spin_path(p, duration);
  const auto trace = evolve(path, 4096);
  const auto eigen = track_eigenstates(path, trace.grid, 0);
  const auto a = adiabaticity_trace(state_trace(trace, eigen.states.front()), eigen);

  // the single minimum of A over one period sits at t = pi / omega_bar
  size_t argmin = 0;
  for (size_t k = 0; k < a.values.size(); ++k) {
    if (a.values[k] < a.values[argmin]) argmin = k;
  }
  const double wbar = effective_params(p).omega_bar;
  CHECK(std::abs(trace.grid.nodes()[argmin] - kPi / wbar) < 2.0 * duration / 4096.0);
  CHECK(a.values[argmin] == doctest::Approx(0.8).epsilon(1e-5));
  CHECK(a.values.back() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_SUITE_END();
