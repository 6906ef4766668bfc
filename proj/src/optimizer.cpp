#include "adiopt/optimizer.hpp"

#include <cmath>

namespace adiopt {

PathParameters PathParameters::zeros(int dim, int interior_nodes, double duration) {
  if (dim < 2) throw ValidationError("PathParameters: dim >= 2 required");
  if (interior_nodes < 1) throw ValidationError("PathParameters: need at least one interior node");
  PathParameters p;
  p.duration = duration;
  p.coefficients = rmat::Zero(dim * dim - 1, interior_nodes);
  p.validate();
  return p;
}

void PathParameters::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw ValidationError("PathParameters: duration must be positive and finite");
  }
  if (coefficients.rows() < 3 || coefficients.cols() < 1) {
    throw ValidationError("PathParameters: empty coefficient matrix");
  }
  if (!coefficients.allFinite()) throw ValidationError("PathParameters: non-finite coefficients");
}

std::vector<PiecewiseLinear> PathParameters::functions() const {
  validate();
  std::vector<PiecewiseLinear> fs;
  fs.reserve(static_cast<size_t>(coefficients.rows()));
  for (int i = 0; i < coefficients.rows(); ++i) {
    fs.push_back(PiecewiseLinear::interior(duration, coefficients.row(i).transpose()));
  }
  return fs;
}

double PathParameters::control_time(int k) const {
  const int m = interior_nodes() + 1;
  if (k < 1 || k > interior_nodes()) throw ValidationError("PathParameters: node index out of range");
  return duration * (static_cast<double>(k) / static_cast<double>(m));
}

HamiltonianPath scenario_path(const OptimizationScenario& scenario, const PathParameters& params) {
  params.validate();
  const int d = scenario.h0.dim();
  if (params.basis_size() != d * d - 1) {
    throw ValidationError("scenario_path: coefficient rows must equal dim^2 - 1");
  }
  if (std::abs(params.duration - scenario.duration) > 1e-12 * scenario.duration) {
    throw ValidationError("scenario_path: parameter duration does not match scenario");
  }
  return isospectral_path({scenario.h0, scenario.v_end, params.functions()}, scenario.duration);
}

namespace {

// (e^z - 1) / z
cxd phi1(cxd z) {
  if (std::abs(z) < 1e-4) return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
  return (std::exp(z) - 1.0) / z;
}

struct IterateEval {
  double a = 0.0;
  double residual_sup = 0.0;
  rmat grad;
};

// One forward simulation shared by the residual, the adiabaticity and the
// gradient. The chain rule through V(t) = V_ref(t) exp(i F(t)) turns a
// coefficient variation dF into the left perturbation
//   h_eff = V_ref [ Int_0^1 e^{isF} dF e^{-isF} ds ] V_ref^dag,
// so the gradient traces the residual matrices against the basis after
// pulling them back through the adjoint of that map.
IterateEval evaluate_iterate(const PathParameters& params, const OptimizationScenario& scenario) {
  const HamiltonianPath path = scenario_path(scenario, params);
  const PropagatorTrace trace = evolve(path, scenario.steps);
  const EigenstateTrace eigen =
      track_eigenstates(path, trace.grid, scenario.level, scenario.gap_floor);

  IterateEval eval;
  eval.a = adiabaticity_trace(state_trace(trace, eigen.states.front()), eigen).values.back();

  const auto gs = residual_matrices(trace, path, eigen);
  const auto basis = hermitian_basis(path.dim());
  const auto fs = params.functions();
  const int nb = static_cast<int>(basis.size());
  const auto& nodes = trace.grid.nodes();
  const int d = path.dim();

  // pulled-back residual r(i, j) = Tr(l_i K_j), K_j the residual matrix
  // conjugated into the pre-exponential frame and run through the adjoint
  // of the exponential's derivative at F(t_j)
  rmat pulled(nb, static_cast<int>(nodes.size()));
  for (size_t j = 0; j < nodes.size(); ++j) {
    for (int i = 0; i < nb; ++i) {
      eval.residual_sup =
          std::max(eval.residual_sup,
                   std::abs((basis[i].matrix().cwiseProduct(gs[j].transpose())).sum().real()));
    }

    cmat f = cmat::Zero(d, d);
    for (int i = 0; i < nb; ++i) {
      const double fi = fs[i](nodes[j]);
      if (fi != 0.0) f += fi * basis[i].matrix();
    }
    Eigen::SelfAdjointEigenSolver<cmat> es(f);
    if (es.info() != Eigen::Success) throw NumericalError("gradient: eigendecomposition failed");
    const cmat& w = es.eigenvectors();
    const rvec& phi = es.eigenvalues();

    cvec diag(d);
    for (int u = 0; u < d; ++u) diag[u] = std::polar(1.0, -phi[u]);
    const cmat exp_minus_if = w * diag.asDiagonal() * w.adjoint();
    const cmat v_ref = path.frame(nodes[j]).matrix() * exp_minus_if;  // V exp(-iF) = V_ref

    const cmat y = v_ref.adjoint() * gs[j] * v_ref;
    cmat yt = w.adjoint() * y * w;
    for (int u = 0; u < d; ++u) {
      for (int v = 0; v < d; ++v) {
        yt(u, v) *= phi1(cxd(0.0, -(phi[u] - phi[v])));
      }
    }
    const cmat kj = w * yt * w.adjoint();
    for (int i = 0; i < nb; ++i) {
      pulled(i, static_cast<int>(j)) =
          (basis[i].matrix().cwiseProduct(kj.transpose())).sum().real();
    }
  }

  // project onto the interior hat functions with trapezoid weights
  const int interior = params.interior_nodes();
  const double ds = params.duration / (interior + 1);
  eval.grad = rmat::Zero(nb, interior);
  for (size_t j = 0; j < nodes.size(); ++j) {
    const double w_j = trace.grid.weight(static_cast<int>(j));
    const double pos = nodes[j] / ds;
    const int m = static_cast<int>(std::floor(pos));
    for (int node : {m, m + 1}) {
      if (node < 1 || node > interior) continue;
      const double hat = 1.0 - std::abs(pos - node);
      if (hat <= 0.0) continue;
      for (int i = 0; i < nb; ++i) {
        eval.grad(i, node - 1) += -2.0 * w_j * hat * pulled(i, static_cast<int>(j));
      }
    }
  }
  return eval;
}

}  // namespace

PathParameters gradient(const PathParameters& params, const OptimizationScenario& scenario) {
  PathParameters g;
  g.duration = params.duration;
  g.coefficients = evaluate_iterate(params, scenario).grad;
  return g;
}

OptimizationReport ascend(const PathParameters& initial, const OptimizationScenario& scenario,
                          const AscentConfig& config) {
  if (config.max_iters < 0) throw ValidationError("ascend: max_iters must be >= 0");
  if (config.tol <= 0.0 || config.initial_step <= 0.0) {
    throw ValidationError("ascend: tol and initial_step must be positive");
  }

  const double scale = scenario.h0.spectral_radius();
  PathParameters params = initial;

  IterateEval eval = evaluate_iterate(params, scenario);
  OptimizationReport report;
  report.initial_a = eval.a;
  report.a_history.push_back(eval.a);
  report.final_params = params;

  double step = config.initial_step;
  int consecutive_accepts = 0;

  for (;;) {
    if (eval.residual_sup <= config.tol * scale) {
      report.converged = true;
      break;
    }
    if (report.iterations >= config.max_iters) break;
    ++report.iterations;

    bool accepted = false;
    while (step >= config.min_step) {
      PathParameters trial = params;
      trial.coefficients = params.coefficients + step * eval.grad;
      double a_trial = 0.0;
      try {
        a_trial = final_adiabaticity(scenario_path(scenario, trial), scenario.level,
                                     scenario.steps, scenario.gap_floor);
      } catch (const NumericalError&) {
        ++report.gap_rejections;
        step *= 0.5;
        consecutive_accepts = 0;
        continue;
      }
      if (a_trial > eval.a) {
        params = std::move(trial);
        report.a_history.push_back(a_trial);
        report.step_sizes.push_back(step);
        ++consecutive_accepts;
        if (consecutive_accepts >= 2) {
          step *= 2.0;
          consecutive_accepts = 0;
        }
        accepted = true;
        break;
      }
      step *= 0.5;
      consecutive_accepts = 0;
    }
    if (!accepted) break;  // step underflow: no further improvement possible

    eval = evaluate_iterate(params, scenario);
  }

  report.final_a = eval.a;
  report.final_residual_sup = eval.residual_sup;
  report.final_params = params;
  return report;
}

}  // namespace adiopt
