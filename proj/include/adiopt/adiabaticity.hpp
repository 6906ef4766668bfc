#pragma once

#include "adiopt/propagator.hpp"

namespace adiopt {

inline constexpr double kDefaultGapFloor = 1e-6;

/// Instantaneous eigenstates of one level along a path, tracked by
/// continuity from the t = 0 ascending-eigenvalue ordering and phase-aligned
/// so consecutive overlaps are real and positive.
struct EigenstateTrace {
  TimeGrid grid;
  int level = 0;
  std::vector<StateVector> states;
  std::vector<double> energies;
  std::vector<double> gaps;  // per-node distance from the tracked eigenvalue to the rest
  double min_gap_over_time = 0.0;
};

/// A(t_k) = |<n(t_k)|psi(t_k)>|^2.
struct AdiabaticityTrace {
  TimeGrid grid;
  std::vector<double> values;
};

EigenstateTrace track_eigenstates(const HamiltonianPath& path, const TimeGrid& grid, int level,
                                  double gap_floor = kDefaultGapFloor);

/// Requires psi to start in the tracked eigenstate (up to phase); phase-gauge
/// independent by construction.
AdiabaticityTrace adiabaticity_trace(const std::vector<StateVector>& psi,
                                     const EigenstateTrace& eigen);

/// A(T) for evolution started in eigenstate `level` of H(0): runs
/// evolve + track_eigenstates + adiabaticity_trace.
double final_adiabaticity(const HamiltonianPath& path, int level, int steps,
                          double gap_floor = kDefaultGapFloor);

/// |<m(t)|dn/dt(t)> / (E_m - E_n)| per node, via the matrix-element identity
/// <m|dn/dt> = <m|dH/dt|n> / (E_n - E_m) with dH/dt by finite differences at
/// the grid spacing.
std::vector<double> slowness_diagnostic(const HamiltonianPath& path, const TimeGrid& grid, int m,
                                        int n, double gap_floor = kDefaultGapFloor);

}  // namespace adiopt
