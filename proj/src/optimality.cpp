#include "adiopt/optimality.hpp"

#include <cmath>

namespace adiopt {

namespace {

void require_matching(const PropagatorTrace& trace, const HamiltonianPath& path) {
  if (trace.unitaries.front().dim() != path.dim()) {
    throw ValidationError("optimality: trace/path dimension mismatch");
  }
  if (std::abs(trace.grid.duration() - path.duration()) > 1e-12 * path.duration()) {
    throw ValidationError("optimality: trace grid does not span the path duration");
  }
}

void require_matching(const PropagatorTrace& trace, const EigenstateTrace& eigen) {
  if (!trace.grid.matches(eigen.grid)) {
    throw ValidationError("optimality: propagator and eigenstate grids differ");
  }
}

void require_coefficients(const std::vector<PiecewiseLinear>& coeffs, int dim, double duration) {
  const size_t expected = static_cast<size_t>(dim) * dim - 1;
  if (coeffs.size() != expected) {
    throw ValidationError("optimality: expected " + std::to_string(expected) +
                          " coefficient functions, got " + std::to_string(coeffs.size()));
  }
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (std::abs(coeffs[i](0.0)) > 1e-12 || std::abs(coeffs[i](duration)) > 1e-12) {
      throw ValidationError("optimality: perturbation coefficients must vanish at the endpoints");
    }
  }
}

}  // namespace

HermitianOperator response_kT(const PropagatorTrace& trace0, const HamiltonianPath& path0,
                              const std::vector<PiecewiseLinear>& h_coeffs) {
  require_matching(trace0, path0);
  const int d = path0.dim();
  require_coefficients(h_coeffs, d, path0.duration());
  const auto basis = hermitian_basis(d);

  const auto& nodes = trace0.grid.nodes();
  cmat integral = cmat::Zero(d, d);
  for (size_t k = 0; k < nodes.size(); ++k) {
    cmat h = cmat::Zero(d, d);
    for (size_t i = 0; i < h_coeffs.size(); ++i) {
      const double f = h_coeffs[i](nodes[k]);
      if (f != 0.0) h += f * basis[i].matrix();
    }
    const cmat h0 = path0.at(nodes[k]).matrix();
    const cmat& u = trace0.unitaries[k].matrix();
    integral += trace0.grid.weight(static_cast<int>(k)) * (u.adjoint() * (h0 * h - h * h0) * u);
  }

  const cmat& uf = trace0.final().matrix();
  const cmat k_raw = uf * (cxd(0.0, 1.0) * integral) * uf.adjoint();
  if (max_abs(k_raw - k_raw.adjoint().eval()) > 1e-8) {
    throw NumericalError("response_kT: result not Hermitian within 1e-8");
  }
  return HermitianOperator(0.5 * (k_raw + k_raw.adjoint().eval()), 1e-8);
}

double directional_derivative(const PropagatorTrace& trace0, const HamiltonianPath& path0,
                              const EigenstateTrace& eigen,
                              const std::vector<PiecewiseLinear>& h_coeffs) {
  require_matching(trace0, path0);
  require_matching(trace0, eigen);
  const HermitianOperator kT = response_kT(trace0, path0, h_coeffs);

  const cvec& n0 = eigen.states.front().vector();
  const cvec& nT = eigen.states.back().vector();
  const cmat& uf = trace0.final().matrix();
  const cxd a = (uf * n0).dot(nT);                       // <n(0)|U0^dag(T)|n(T)>
  const cxd b = nT.dot(kT.matrix() * (uf * n0));          // <n(T)|k(T) U0(T)|n(0)>
  return -2.0 * std::imag(b * a);
}

std::vector<cmat> residual_matrices(const PropagatorTrace& trace0, const HamiltonianPath& path0,
                                    const EigenstateTrace& eigen) {
  require_matching(trace0, path0);
  require_matching(trace0, eigen);

  const cvec& n0 = eigen.states.front().vector();
  const cvec& nT = eigen.states.back().vector();
  const cmat& uf = trace0.final().matrix();
  const cxd a = (uf * n0).dot(nT);  // <n(0)|U0^dag(T)|n(T)>

  const auto& nodes = trace0.grid.nodes();
  std::vector<cmat> gs;
  gs.reserve(nodes.size());
  for (size_t k = 0; k < nodes.size(); ++k) {
    const cmat& u = trace0.unitaries[k].matrix();
    const cvec phi = u * n0;                  // U0(t)|n(0)>
    const cvec chi = u * (uf.adjoint() * nT);  // conj-transpose of <n(T)|U0(T)U0^dag(t)
    // R_i(t) = Re Tr([H0(t), l_i] P) = Tr(l_i G) with P = a |phi><chi|
    const cmat p = a * (phi * chi.adjoint());
    const cmat h0 = path0.at(nodes[k]).matrix();
    const cmat q = p * h0 - h0 * p;
    gs.emplace_back(0.5 * (q + q.adjoint().eval()));
  }
  return gs;
}

StationarityResidual stationarity_residual(const PropagatorTrace& trace0,
                                           const HamiltonianPath& path0,
                                           const EigenstateTrace& eigen) {
  const auto gs = residual_matrices(trace0, path0, eigen);
  const auto basis = hermitian_basis(path0.dim());
  const int nb = static_cast<int>(basis.size());
  const int nn = static_cast<int>(gs.size());

  StationarityResidual res{trace0.grid, rmat(nb, nn), 0.0, 0.0};
  double l2 = 0.0;
  for (int k = 0; k < nn; ++k) {
    double sq = 0.0;
    for (int i = 0; i < nb; ++i) {
      const double r = (basis[i].matrix().cwiseProduct(gs[k].transpose())).sum().real();
      res.values(i, k) = r;
      res.sup_norm = std::max(res.sup_norm, std::abs(r));
      sq += r * r;
    }
    l2 += trace0.grid.weight(k) * sq;
  }
  res.l2_norm = std::sqrt(l2);
  if (!res.values.allFinite()) throw NumericalError("stationarity_residual: non-finite values");
  return res;
}

ResidualCertificate residual_certificate(const HamiltonianPath& path, int level, int steps,
                                         double tol, double gap_floor) {
  if (tol <= 0.0) throw ValidationError("residual_certificate: tolerance must be positive");
  const PropagatorTrace trace = evolve(path, steps);
  const EigenstateTrace eigen = track_eigenstates(path, trace.grid, level, gap_floor);

  StationarityResidual residual = stationarity_residual(trace, path, eigen);
  const double scale = path.initial().spectral_radius();
  const bool pass = residual.sup_norm <= tol * scale;
  return ResidualCertificate{std::move(residual), scale, tol, pass};
}

}  // namespace adiopt
