#include "adiopt/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace adiopt {

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {}

TimeGrid TimeGrid::uniform(double duration, int steps, std::span<const double> forced_interior) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw ValidationError("TimeGrid: duration must be positive and finite");
  }
  if (steps < 1) throw ValidationError("TimeGrid: steps must be >= 1");

  std::vector<double> nodes(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    nodes[k] = duration * (static_cast<double>(k) / static_cast<double>(steps));
  }
  const double tol = 1e-12 * duration;
  for (double f : forced_interior) {
    if (f <= tol || f >= duration - tol) continue;
    auto it = std::lower_bound(nodes.begin(), nodes.end(), f);
    if (it != nodes.end() && std::abs(*it - f) <= tol) continue;
    if (it != nodes.begin() && std::abs(*(it - 1) - f) <= tol) continue;
    nodes.insert(it, f);
  }
  return TimeGrid(std::move(nodes));
}

double TimeGrid::weight(int k) const {
  const int n = segments();
  if (k < 0 || k > n) throw ValidationError("TimeGrid::weight: node index out of range");
  if (k == 0) return 0.5 * (nodes_[1] - nodes_[0]);
  if (k == n) return 0.5 * (nodes_[n] - nodes_[n - 1]);
  return 0.5 * (nodes_[k + 1] - nodes_[k - 1]);
}

bool TimeGrid::matches(const TimeGrid& other, double tol) const {
  if (nodes_.size() != other.nodes_.size()) return false;
  const double scale = std::max(1.0, duration());
  for (size_t k = 0; k < nodes_.size(); ++k) {
    if (std::abs(nodes_[k] - other.nodes_[k]) > tol * scale) return false;
  }
  return true;
}

TimeGrid simulation_grid(const HamiltonianPath& path, int steps) {
  return TimeGrid::uniform(path.duration(), steps, path.kinks());
}

PropagatorTrace evolve(const HamiltonianPath& path, const TimeGrid& grid) {
  if (std::abs(grid.duration() - path.duration()) > 1e-12 * path.duration()) {
    throw ValidationError("evolve: grid duration does not match path duration");
  }
  const auto& nodes = grid.nodes();
  const int d = path.dim();

  PropagatorTrace trace{grid, {}, 0.0};
  trace.unitaries.reserve(nodes.size());
  trace.unitaries.push_back(UnitaryOperator::identity(d));

  cmat u = cmat::Identity(d, d);
  for (size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double dt = nodes[k + 1] - nodes[k];
    const HermitianOperator h = path.at(nodes[k] + 0.5 * dt);
    if (!all_finite(h.matrix())) throw NumericalError("evolve: non-finite Hamiltonian sample");
    u = expm_skew(h, dt).matrix() * u;
    trace.unitaries.emplace_back(u);
    trace.max_unitarity_defect = std::max(trace.max_unitarity_defect,
                                          trace.unitaries.back().unitarity_defect());
  }
  if (trace.max_unitarity_defect > 1e-9) {
    throw NumericalError("evolve: accumulated unitarity defect exceeds 1e-9");
  }
  return trace;
}

PropagatorTrace evolve(const HamiltonianPath& path, int steps) {
  return evolve(path, simulation_grid(path, steps));
}

UnitaryOperator evolve_segment(const HamiltonianPath& path, double t0, double t1, int steps) {
  if (steps < 1) throw ValidationError("evolve_segment: steps must be >= 1");
  const double slack = 1e-9 * path.duration();
  if (!(t1 > t0) || t0 < -slack || t1 > path.duration() + slack) {
    throw ValidationError("evolve_segment: need 0 <= t0 < t1 <= duration");
  }
  // uniform nodes on [t0, t1] with the path's kinks forced in
  std::vector<double> nodes(steps + 1);
  for (int k = 0; k <= steps; ++k) {
    nodes[k] = t0 + (t1 - t0) * (static_cast<double>(k) / static_cast<double>(steps));
  }
  const double tol = 1e-12 * path.duration();
  for (double f : path.kinks()) {
    if (f <= t0 + tol || f >= t1 - tol) continue;
    auto it = std::lower_bound(nodes.begin(), nodes.end(), f);
    if (it != nodes.end() && std::abs(*it - f) <= tol) continue;
    if (it != nodes.begin() && std::abs(*(it - 1) - f) <= tol) continue;
    nodes.insert(it, f);
  }

  cmat u = cmat::Identity(path.dim(), path.dim());
  for (size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double dt = nodes[k + 1] - nodes[k];
    u = expm_skew(path.at(nodes[k] + 0.5 * dt), dt).matrix() * u;
  }
  return UnitaryOperator(std::move(u));
}

std::vector<StateVector> state_trace(const PropagatorTrace& trace, const StateVector& initial) {
  if (initial.dim() != trace.unitaries.front().dim()) {
    throw ValidationError("state_trace: state dimension does not match trace");
  }
  std::vector<StateVector> states;
  states.reserve(trace.unitaries.size());
  for (const auto& u : trace.unitaries) {
    cvec psi = u.matrix() * initial.vector();
    if (std::abs(psi.norm() - 1.0) > 1e-9) {
      throw NumericalError("state_trace: norm drifted beyond 1e-9");
    }
    states.emplace_back(StateVector::normalized(std::move(psi)));
  }
  return states;
}

ConvergenceReport richardson_check(const HamiltonianPath& path, int steps) {
  if (steps < 2 || steps % 2 != 0) throw ValidationError("richardson_check: steps must be even");

  const cmat u1 = evolve(path, steps).final().matrix();
  const cmat u2 = evolve(path, 2 * steps).final().matrix();
  const cmat u4 = evolve(path, 4 * steps).final().matrix();

  const double d1 = max_abs(u1 - u2);
  const double d2 = max_abs(u2 - u4);

  ConvergenceReport report;
  // For an order-p method, ||U_4N - exact|| ~ d2 / (2^p + ... ) ~ d2 / 3 at p = 2.
  report.error_estimate = d2 / 3.0;
  constexpr double kNoiseFloor = 1e-13;
  if (d1 <= kNoiseFloor || d2 <= kNoiseFloor) {
    report.effectively_exact = true;
    report.observed_order = std::numeric_limits<double>::quiet_NaN();
  } else {
    report.observed_order = std::log2(d1 / d2);
  }
  return report;
}

}  // namespace adiopt
