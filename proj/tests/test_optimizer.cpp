#include <doctest.h>

#include "adiopt/optimizer.hpp"
#include "adiopt/spin_oracle.hpp"
#include "test_support.hpp"

using namespace adiopt;
using namespace adiopt::testing;

namespace {

const RotatingSpinParams kScenario{1.0, 0.5, kPi / 2.0};

OptimizationScenario spin_scenario(int steps, int /*control*/ = 16) {
  const double duration = spin_period(kScenario);
  const auto path = rotating_spin_path(kScenario, duration);
  return OptimizationScenario{path.at(0.0), path.frame(duration), duration, 0, steps,
                              kDefaultGapFloor};
}

PathParameters random_params(std::mt19937_64& gen, int dim, int interior, double duration,
                             double amplitude) {
  PathParameters p = PathParameters::zeros(dim, interior, duration);
  for (int i = 0; i < p.coefficients.rows(); ++i) {
    for (int k = 0; k < p.coefficients.cols(); ++k) {
      p.coefficients(i, k) = uniform(gen, -amplitude, amplitude);
    }
  }
  return p;
}

}  // namespace

TEST_SUITE_BEGIN("optimizer");

TEST_CASE("the geodesic reference of the spin scenario is the rotating frame") {
  // sanity for everything below: at zero coefficients the scenario path is
  // exactly the rotating-spin path, whose optimality the oracle guarantees
  const auto scenario = spin_scenario(256);
  const auto params = PathParameters::zeros(2, 16, scenario.duration);
  const auto path = scenario_path(scenario, params);
  const auto spin = rotating_spin_path(kScenario, scenario.duration);
  for (int k = 0; k <= 16; ++k) {
    const double t = scenario.duration * (k / 16.0);
    CHECK(max_abs(path.at(t).matrix() - spin.at(t).matrix()) < 1e-12);
  }
}

TEST_CASE("gradient vanishes at the spin-optimal path") {
  const auto scenario = spin_scenario(2048);
  const auto params = PathParameters::zeros(2, 16, scenario.duration);
  const auto g = gradient(params, scenario);
  CHECK(g.coefficients.cwiseAbs().maxCoeff() <= 1e-5);
}

TEST_CASE("gradient matches central finite differences of the final adiabaticity") {
  std::mt19937_64 gen(101);
  const auto scenario = spin_scenario(1024);
  PathParameters params = random_params(gen, 2, 12, scenario.duration, 0.2);
  const auto g = gradient(params, scenario);

  const double eps = 1e-4;
  int checked = 0;
  while (checked < 5) {
    const int i = static_cast<int>(gen() % static_cast<unsigned>(g.coefficients.rows()));
    const int k = static_cast<int>(gen() % static_cast<unsigned>(g.coefficients.cols()));
    PathParameters up = params, down = params;
    up.coefficients(i, k) += eps;
    down.coefficients(i, k) -= eps;
    const double fd = (final_adiabaticity(scenario_path(scenario, up), 0, scenario.steps) -
                       final_adiabaticity(scenario_path(scenario, down), 0, scenario.steps)) /
                      (2.0 * eps);
    if (std::abs(fd) < 1e-6) continue;  // avoid meaningless relative comparisons
    CHECK(std::abs(g.coefficients(i, k) - fd) <= 0.05 * std::abs(fd));
    ++checked;
  }
}

TEST_CASE("constant scenario with identity endpoint is already optimal") {
  std::mt19937_64 gen(103);
  const HermitianOperator h = random_hermitian(gen, 2);
  const OptimizationScenario scenario{h, UnitaryOperator::identity(2), 2.0, 0, 256,
                                      kDefaultGapFloor};
  const auto params = PathParameters::zeros(2, 8, 2.0);

  const auto g = gradient(params, scenario);
  CHECK(g.coefficients.cwiseAbs().maxCoeff() <= 1e-10);

  const auto report = ascend(params, scenario, {});
  CHECK(report.converged);
  CHECK(report.iterations == 0);
  CHECK(report.final_a == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ascent from the optimum converges immediately") {
  const auto scenario = spin_scenario(2048);
  const auto params = PathParameters::zeros(2, 16, scenario.duration);
  const auto report = ascend(params, scenario, {});
  CHECK(report.converged);
  CHECK(report.iterations <= 2);
  CHECK(report.final_a >= 1.0 - 1e-6);
}

TEST_CASE("ascent from a perturbed start improves monotonically") {
  std::mt19937_64 gen(107);
  const auto scenario = spin_scenario(1024);
  const PathParameters start = random_params(gen, 2, 16, scenario.duration, 0.2);

  AscentConfig config;
  config.max_iters = 400;
  config.tol = 5e-5;
  const auto report = ascend(start, scenario, config);

  REQUIRE(!report.a_history.empty());
  for (size_t k = 1; k < report.a_history.size(); ++k) {
    CHECK(report.a_history[k] >= report.a_history[k - 1]);
  }
  CHECK(report.final_a >= report.initial_a);
  CHECK(report.final_a ==
        doctest::Approx(final_adiabaticity(scenario_path(scenario, report.final_params), 0,
                                           scenario.steps))
            .epsilon(1e-12));

  // endpoint preservation along the optimized path
  const auto path = scenario_path(scenario, report.final_params);
  CHECK(max_abs(path.at(0.0).matrix() - scenario.h0.matrix()) <= 1e-10);
  const cmat expected_end =
      scenario.v_end.matrix() * scenario.h0.matrix() * scenario.v_end.matrix().adjoint();
  CHECK(max_abs(path.at(scenario.duration).matrix() - expected_end) <= 1e-10);

  if (report.converged) {
    const auto cert = residual_certificate(path, 0, scenario.steps, config.tol);
    CHECK(cert.pass);
  }
}

TEST_SUITE_END();
