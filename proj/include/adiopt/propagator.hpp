#pragma once

#include <span>
#include <vector>

#include "adiopt/paths.hpp"

namespace adiopt {

/// Strictly increasing time nodes from 0 to the duration, inclusive.
class TimeGrid {
 public:
  /// steps uniform segments on [0, duration], plus any forced interior nodes
  /// (deduplicated against existing nodes).
  static TimeGrid uniform(double duration, int steps, std::span<const double> forced_interior = {});

  const std::vector<double>& nodes() const { return nodes_; }
  int segments() const { return static_cast<int>(nodes_.size()) - 1; }
  double duration() const { return nodes_.back(); }

  /// Trapezoid quadrature weight of node k.
  double weight(int k) const;

  bool matches(const TimeGrid& other, double tol = 1e-12) const;

 private:
  explicit TimeGrid(std::vector<double> nodes);
  std::vector<double> nodes_;
};

/// Grid used by evolve(): uniform with the path's kinks inserted as nodes.
TimeGrid simulation_grid(const HamiltonianPath& path, int steps);

/// The ordered sequence (t_k, U(t_k)) solving i dU/dt = H(t) U, U(0) = I.
struct PropagatorTrace {
  TimeGrid grid;
  std::vector<UnitaryOperator> unitaries;  // unitaries[0] = I
  double max_unitarity_defect = 0.0;

  const UnitaryOperator& final() const { return unitaries.back(); }
};

/// Exponential-midpoint integration: U_{k+1} = exp(-i dt H(t_k + dt/2)) U_k.
/// Unitary by construction, global error O(dt^2).
PropagatorTrace evolve(const HamiltonianPath& path, int steps);
PropagatorTrace evolve(const HamiltonianPath& path, const TimeGrid& grid);

/// One-segment propagator U(t1 <- t0) over [t0, t1] within the path's domain,
/// with the same stepping rule. Composition: evolving [0,T] equals evolving
/// [T/2,T] after [0,T/2].
UnitaryOperator evolve_segment(const HamiltonianPath& path, double t0, double t1, int steps);

/// psi(t_k) = U(t_k) |initial>.
std::vector<StateVector> state_trace(const PropagatorTrace& trace, const StateVector& initial);

struct ConvergenceReport {
  double error_estimate = 0.0;   // estimated error of the finest (4*steps) propagator at T
  double observed_order = 0.0;   // log2 ratio of successive step-halving differences
  bool effectively_exact = false;  // differences at the rounding floor; order meaningless
};

/// Step-halving accuracy audit: compares U(T) at steps, 2*steps and 4*steps.
ConvergenceReport richardson_check(const HamiltonianPath& path, int steps);

}  // namespace adiopt
