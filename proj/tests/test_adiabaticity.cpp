#include <doctest.h>

#include "adiopt/adiabaticity.hpp"
#include "adiopt/spin_oracle.hpp"
#include "test_support.hpp"

using namespace adiopt;
using namespace adiopt::testing;

namespace {

const RotatingSpinParams kScenario{1.0, 0.5, kPi / 2.0};

HamiltonianPath constant_path(const HermitianOperator& h, double duration) {
  return isospectral_path({h, UnitaryOperator::identity(h.dim()), {}}, duration);
}

}  // namespace

TEST_SUITE_BEGIN("adiabaticity");

TEST_CASE("tracking a constant Hamiltonian") {
  std::mt19937_64 gen(59);
  const HermitianOperator h = random_hermitian(gen, 3);
  const auto path = constant_path(h, 2.0);
  const auto grid = simulation_grid(path, 40);
  const auto trace = track_eigenstates(path, grid, 1);

  for (size_t k = 0; k < trace.states.size(); ++k) {
    CHECK(max_abs(cmat(trace.states[k].vector() - trace.states.front().vector())) < 1e-12);
    CHECK(trace.energies[k] == doctest::Approx(trace.energies.front()).epsilon(1e-12));
  }
  // eigenstate residual
  for (size_t k = 0; k < trace.states.size(); ++k) {
    const cvec r = h.matrix() * trace.states[k].vector() - trace.energies[k] * trace.states[k].vector();
    CHECK(r.norm() <= 1e-8);
  }
}

TEST_CASE("tracking the rotating spin keeps the gap at omega0") {
  const double duration = spin_period(kScenario);
  const auto path = rotating_spin_path(kScenario, duration);
  const auto grid = simulation_grid(path, 256);
  const auto trace = track_eigenstates(path, grid, 0);
  CHECK(trace.min_gap_over_time == doctest::Approx(kScenario.omega0).epsilon(1e-10));

  // consecutive overlaps real and positive
  for (size_t k = 1; k < trace.states.size(); ++k) {
    const cxd overlap = trace.states[k - 1].overlap(trace.states[k]);
    CHECK(overlap.real() > 0.0);
    CHECK(std::abs(overlap.imag()) < 1e-12);
  }
}

TEST_CASE("degenerate spectra collapse the gap") {
  const auto path = constant_path(HermitianOperator(cmat::Identity(2, 2)), 1.0);
  const auto grid = simulation_grid(path, 8);
  CHECK_THROWS_AS(track_eigenstates(path, grid, 0), GapCollapseError);
  CHECK_THROWS_AS(track_eigenstates(path, grid, 5), ValidationError);
}

TEST_CASE("adiabaticity is one for the eigenstate trace itself") {
  const auto path = rotating_spin_path(kScenario, 3.0);
  const auto grid = simulation_grid(path, 64);
  const auto eigen = track_eigenstates(path, grid, 0);
  const auto a = adiabaticity_trace(eigen.states, eigen);
  for (double v : a.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("adiabaticity against the paper scenario values") {
  const double wbar = effective_params(kScenario).omega_bar;
  const double duration = 2.0 * kPi / wbar;
  const auto path = rotating_spin_path(kScenario, duration);
  const auto trace = evolve(path, 4096);
  const auto eigen = track_eigenstates(path, trace.grid, 0);
  const auto a = adiabaticity_trace(state_trace(trace, eigen.states.front()), eigen);

  CHECK(a.values.front() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.values.back() == doctest::Approx(1.0).epsilon(1e-6));  // omega_bar T = 2 pi

  // omega_bar t = pi lands exactly on a node: A = 1 - 0.25 / 1.25 = 0.8
  const auto& nodes = trace.grid.nodes();
  size_t half = 0;
  for (size_t k = 0; k < nodes.size(); ++k) {
    if (std::abs(nodes[k] - kPi / wbar) < std::abs(nodes[half] - kPi / wbar)) half = k;
  }
  CHECK(a.values[half] == doctest::Approx(0.8).epsilon(1e-6));

  for (double v : a.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-9);
  }
}

TEST_CASE("adiabaticity is phase-gauge independent") {
  std::mt19937_64 gen(61);
  const auto path = rotating_spin_path(kScenario, 2.0);
  const auto trace = evolve(path, 128);
  const auto eigen = track_eigenstates(path, trace.grid, 0);
  const auto psi = state_trace(trace, eigen.states.front());
  const auto reference = adiabaticity_trace(psi, eigen);

  std::vector<StateVector> rephased;
  for (const auto& s : psi) {
    rephased.push_back(StateVector::normalized(s.vector() * std::polar(1.0, uniform(gen, -kPi, kPi))));
  }
  const auto rotated = adiabaticity_trace(rephased, eigen);
  for (size_t k = 0; k < reference.values.size(); ++k) {
    CHECK(rotated.values[k] == doctest::Approx(reference.values[k]).epsilon(1e-12));
  }
}

TEST_CASE("adiabaticity trace validates its inputs") {
  const auto path = rotating_spin_path(kScenario, 2.0);
  const auto trace = evolve(path, 32);
  const auto eigen = track_eigenstates(path, trace.grid, 0);
  auto psi = state_trace(trace, eigen.states.front());

  psi.pop_back();
  CHECK_THROWS_AS(adiabaticity_trace(psi, eigen), ValidationError);

  // psi(0) not the tracked eigenstate
  const auto wrong = state_trace(trace, eigen.states.back());
  const bool distinct = std::norm(eigen.states.front().overlap(eigen.states.back())) < 1.0 - 1e-6;
  if (distinct) CHECK_THROWS_AS(adiabaticity_trace(wrong, eigen), ValidationError);
}

TEST_CASE("final adiabaticity of trivial and near-adiabatic paths") {
  const RotatingSpinParams aligned{1.0, 0.5, 0.0};
  for (double duration : {0.7, 3.0, 12.0}) {
    CHECK(final_adiabaticity(rotating_spin_path(aligned, duration), 0, 256) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }

  // slow dilation pushes A(T) toward 1 within the analytic envelope
  const double duration = spin_period(kScenario);
  const auto base = rotating_spin_path(kScenario, duration);
  const double lambda = 0.25;
  const auto slow = time_dilate(base, lambda);
  const RotatingSpinParams dilated{kScenario.omega0, lambda * kScenario.omega, kScenario.theta};
  const double envelope = std::pow(
      lambda * kScenario.omega * std::sin(kScenario.theta) / effective_params(dilated).omega_bar,
      2);

  const auto trace = evolve(slow, 4096);
  const auto eigen = track_eigenstates(slow, trace.grid, 0);
  const auto a = adiabaticity_trace(state_trace(trace, eigen.states.front()), eigen);
  double worst = 0.0;
  for (double v : a.values) worst = std::max(worst, 1.0 - v);
  CHECK(worst <= envelope + 1e-5);
}

TEST_CASE("lambda ramp approaches perfect adiabaticity at large Lambda") {
  const auto endpoint_path = rotating_spin_path(kScenario, 2.0);
  const HermitianOperator h0 = endpoint_path.at(0.0);
  const HermitianOperator h1 = endpoint_path.at(2.0);
  const auto ramp = lambda_ramp_path(h0, h1, 1000.0, 3.0);
  CHECK(final_adiabaticity(ramp, 0, 1 << 18) >= 0.999);
}

TEST_CASE("slowness diagnostic") {
  std::mt19937_64 gen(67);
  const auto flat = constant_path(random_hermitian(gen, 3), 1.5);
  const auto flat_grid = simulation_grid(flat, 24);
  for (double v : slowness_diagnostic(flat, flat_grid, 2, 0)) CHECK(v < 1e-12);

  const double duration = spin_period(kScenario);
  const auto path = rotating_spin_path(kScenario, duration);
  const auto grid = simulation_grid(path, 4096);
  const auto diag = slowness_diagnostic(path, grid, 1, 0);
  const double expected =
      kScenario.omega * std::sin(kScenario.theta) / (2.0 * kScenario.omega0);
  for (double v : diag) CHECK(v == doctest::Approx(expected).epsilon(1e-6));

  // dilation scales the diagnostic by lambda
  const auto slow = time_dilate(path, 0.5);
  const auto slow_grid = simulation_grid(slow, 4096);
  const auto slow_diag = slowness_diagnostic(slow, slow_grid, 1, 0);
  for (size_t k = 0; k < slow_diag.size(); ++k) {
    CHECK(slow_diag[k] == doctest::Approx(0.5 * diag[k]).epsilon(1e-9));
  }

  CHECK_THROWS_AS(slowness_diagnostic(path, grid, 0, 0), ValidationError);
  const auto degenerate = constant_path(HermitianOperator(cmat::Identity(2, 2)), 1.0);
  CHECK_THROWS_AS(slowness_diagnostic(degenerate, simulation_grid(degenerate, 8), 1, 0),
                  GapCollapseError);
}

TEST_SUITE_END();
