#include "adiopt/adiabaticity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace adiopt {

EigenstateTrace track_eigenstates(const HamiltonianPath& path, const TimeGrid& grid, int level,
                                  double gap_floor) {
  const int d = path.dim();
  if (level < 0 || level >= d) throw ValidationError("track_eigenstates: level out of range");
  if (std::abs(grid.duration() - path.duration()) > 1e-12 * path.duration()) {
    throw ValidationError("track_eigenstates: grid duration does not match path duration");
  }

  EigenstateTrace trace{grid, level, {}, {}, {}, 0.0};
  const auto& nodes = grid.nodes();
  trace.states.reserve(nodes.size());
  trace.energies.reserve(nodes.size());
  trace.gaps.reserve(nodes.size());

  for (size_t k = 0; k < nodes.size(); ++k) {
    const Spectrum spec = eigh(path.at(nodes[k]));

    int idx = level;
    if (k > 0) {
      // follow by continuity, not by instantaneous sort order
      const cvec& prev = trace.states.back().vector();
      double best = -1.0;
      for (int j = 0; j < d; ++j) {
        const double overlap = std::abs(prev.dot(spec.eigenvectors.col(j)));
        if (overlap > best) {
          best = overlap;
          idx = j;
        }
      }
    }

    double gap = std::numeric_limits<double>::infinity();
    for (int j = 0; j < d; ++j) {
      if (j != idx) gap = std::min(gap, std::abs(spec.eigenvalues[j] - spec.eigenvalues[idx]));
    }
    if (gap < gap_floor) {
      throw GapCollapseError("track_eigenstates: gap " + std::to_string(gap) + " at t = " +
                             std::to_string(nodes[k]) + " below floor");
    }

    StateVector state = spec.eigenvector(idx);
    if (k > 0) state = align_gauge({trace.states.back()}, {state}).front();

    trace.states.push_back(std::move(state));
    trace.energies.push_back(spec.eigenvalues[idx]);
    trace.gaps.push_back(gap);
  }

  trace.min_gap_over_time = *std::min_element(trace.gaps.begin(), trace.gaps.end());
  return trace;
}

AdiabaticityTrace adiabaticity_trace(const std::vector<StateVector>& psi,
                                     const EigenstateTrace& eigen) {
  if (psi.size() != eigen.states.size()) {
    throw ValidationError("adiabaticity_trace: state count does not match eigenstate grid");
  }
  if (psi.empty() || psi.front().dim() != eigen.states.front().dim()) {
    throw ValidationError("adiabaticity_trace: dimension mismatch");
  }
  const double a0 = std::norm(eigen.states.front().overlap(psi.front()));
  if (a0 < 1.0 - 1e-8) {
    throw ValidationError("adiabaticity_trace: psi(0) must equal n(0) up to phase");
  }

  AdiabaticityTrace trace{eigen.grid, {}};
  trace.values.reserve(psi.size());
  for (size_t k = 0; k < psi.size(); ++k) {
    const double a = std::norm(eigen.states[k].overlap(psi[k]));
    if (a > 1.0 + 1e-9) throw NumericalError("adiabaticity_trace: A exceeds unity beyond slack");
    trace.values.push_back(a);
  }
  return trace;
}

double final_adiabaticity(const HamiltonianPath& path, int level, int steps, double gap_floor) {
  const PropagatorTrace prop = evolve(path, steps);
  const EigenstateTrace eigen = track_eigenstates(path, prop.grid, level, gap_floor);
  const auto psi = state_trace(prop, eigen.states.front());
  return adiabaticity_trace(psi, eigen).values.back();
}

namespace {

cmat hamiltonian_rate(const HamiltonianPath& path, const std::vector<double>& nodes, size_t k) {
  const double duration = path.duration();
  if (k == 0) {
    const double dt = nodes[1] - nodes[0];
    if (2.0 * dt <= duration) {
      return (-3.0 * path.at(0.0).matrix() + 4.0 * path.at(dt).matrix() -
              path.at(2.0 * dt).matrix()) /
             (2.0 * dt);
    }
    return (path.at(dt).matrix() - path.at(0.0).matrix()) / dt;
  }
  if (k + 1 == nodes.size()) {
    const double dt = nodes[k] - nodes[k - 1];
    if (2.0 * dt <= duration) {
      return (3.0 * path.at(duration).matrix() - 4.0 * path.at(duration - dt).matrix() +
              path.at(duration - 2.0 * dt).matrix()) /
             (2.0 * dt);
    }
    return (path.at(duration).matrix() - path.at(duration - dt).matrix()) / dt;
  }
  const double dt = std::min(nodes[k] - nodes[k - 1], nodes[k + 1] - nodes[k]);
  return (path.at(nodes[k] + dt).matrix() - path.at(nodes[k] - dt).matrix()) / (2.0 * dt);
}

}  // namespace

std::vector<double> slowness_diagnostic(const HamiltonianPath& path, const TimeGrid& grid, int m,
                                        int n, double gap_floor) {
  const int d = path.dim();
  if (m == n) throw ValidationError("slowness_diagnostic: levels must differ");
  if (m < 0 || m >= d || n < 0 || n >= d) {
    throw ValidationError("slowness_diagnostic: level out of range");
  }

  const EigenstateTrace trace_m = track_eigenstates(path, grid, m, gap_floor);
  const EigenstateTrace trace_n = track_eigenstates(path, grid, n, gap_floor);

  const auto& nodes = grid.nodes();
  std::vector<double> diag;
  diag.reserve(nodes.size());
  for (size_t k = 0; k < nodes.size(); ++k) {
    const double de = trace_m.energies[k] - trace_n.energies[k];
    if (std::abs(de) < gap_floor) {
      throw GapCollapseError("slowness_diagnostic: tracked pair degenerate at t = " +
                             std::to_string(nodes[k]));
    }
    const cmat hdot = hamiltonian_rate(path, nodes, k);
    const cxd elem = trace_m.states[k].vector().dot(hdot * trace_n.states[k].vector());
    diag.push_back(std::abs(elem) / (de * de));
  }
  return diag;
}

}  // namespace adiopt
