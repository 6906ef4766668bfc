#pragma once

#include "adiopt/optimality.hpp"

namespace adiopt {

/// Control coefficients c(i, k) for basis index i and interior control node
/// k on a uniform grid over [0, duration]; defines f_i as piecewise-linear
/// with f_i(0) = f_i(T) = 0.
struct PathParameters {
  double duration = 0.0;
  rmat coefficients;  // (dim^2 - 1) x interior_nodes

  static PathParameters zeros(int dim, int interior_nodes, double duration);

  int basis_size() const { return static_cast<int>(coefficients.rows()); }
  int interior_nodes() const { return static_cast<int>(coefficients.cols()); }
  std::vector<PiecewiseLinear> functions() const;
  double control_time(int k) const;  // node k = 1..interior in [0, duration]
  void validate() const;
};

/// Fixed data of one optimization problem: endpoints H(0) and V(T), the
/// duration, the tracked level and the integrator resolution.
struct OptimizationScenario {
  HermitianOperator h0;
  UnitaryOperator v_end;
  double duration = 0.0;
  int level = 0;
  int steps = 4096;
  double gap_floor = kDefaultGapFloor;
};

struct AscentConfig {
  int max_iters = 200;
  double tol = 1e-5;         // convergence: residual sup-norm <= tol * spectral_radius(H(0))
  double initial_step = 1.0;
  double min_step = 1e-12;
};

struct OptimizationReport {
  int iterations = 0;               // gradient iterations performed
  std::vector<double> a_history;    // A at the start plus every accepted iterate
  double initial_a = 0.0;
  double final_a = 0.0;
  double final_residual_sup = 0.0;
  bool converged = false;
  std::vector<double> step_sizes;   // step size used by each accepted iterate
  int gap_rejections = 0;           // trials rejected because a gap collapsed
  PathParameters final_params;
};

/// The isospectral path encoded by the parameters within a scenario.
HamiltonianPath scenario_path(const OptimizationScenario& scenario, const PathParameters& params);

/// Exact gradient dA/dc(i, k) of the final adiabaticity with respect to the
/// control coefficients, assembled from the stationarity residual matrices
/// pulled back through the frame parametrization V(t) = V_ref(t) exp(i F(t)).
PathParameters gradient(const PathParameters& params, const OptimizationScenario& scenario);

/// Backtracking gradient ascent on A[V]: step halved on non-improvement,
/// doubled after two consecutive accepts, stopping when the full residual
/// sup-norm falls below tol * spectral_radius(H(0)) or max_iters is reached.
/// Every A in the history is recomputed by a fresh forward simulation.
OptimizationReport ascend(const PathParameters& initial, const OptimizationScenario& scenario,
                          const AscentConfig& config);

}  // namespace adiopt
