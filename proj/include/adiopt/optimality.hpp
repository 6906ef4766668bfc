#pragma once

#include "adiopt/adiabaticity.hpp"

namespace adiopt {

/// The stationarity condition evaluated per time node and per Hermitian
/// basis direction:
///   R_i(t_k) = Re{ <n(T)| U0(T) U0^dag(t_k) [H0(t_k), l_i] U0(t_k) |n(0)>
///                  * <n(0)| U0^dag(T) |n(T)> }.
/// A path is first-order stationary for the final adiabaticity iff all
/// R_i(t) vanish. Gauge independent: the two bra-ket factors carry conjugate
/// eigenstate phases.
struct StationarityResidual {
  TimeGrid grid;
  rmat values;          // (dim^2 - 1) x (N + 1); values(i, k) = R_i(t_k)
  double sup_norm = 0.0;
  double l2_norm = 0.0;  // sqrt(sum_k w_k sum_i R_i(t_k)^2), trapezoid weights
};

/// First-order response of the propagator to the frame perturbation
/// V0 -> exp(i eps h) V0 with h(t) = sum_i f_i(t) l_i:
///   k(T) = U0(T) [ i Int_0^T U0^dag(t) [H0(t), h(t)] U0(t) dt ] U0^dag(T),
/// so that U_eps(T) = (1 + i eps k(T)) U0(T) + O(eps^2). Trapezoid quadrature
/// on the trace grid; result symmetrized, Hermitian within 1e-8 beforehand.
HermitianOperator response_kT(const PropagatorTrace& trace0, const HamiltonianPath& path0,
                              const std::vector<PiecewiseLinear>& h_coeffs);

/// dA/d(eps) at eps = 0 for the same perturbation:
///   -2 Im{ <n(T)|k(T) U0(T)|n(0)> <n(0)|U0^dag(T)|n(T)> }.
double directional_derivative(const PropagatorTrace& trace0, const HamiltonianPath& path0,
                              const EigenstateTrace& eigen,
                              const std::vector<PiecewiseLinear>& h_coeffs);

StationarityResidual stationarity_residual(const PropagatorTrace& trace0,
                                           const HamiltonianPath& path0,
                                           const EigenstateTrace& eigen);

/// Per-node Hermitian matrices G(t_k) with R_i(t_k) = Tr(l_i G(t_k)); the
/// basis-free form of the residual, shared with the optimizer's gradient.
std::vector<cmat> residual_matrices(const PropagatorTrace& trace0, const HamiltonianPath& path0,
                                    const EigenstateTrace& eigen);

struct ResidualCertificate {
  StationarityResidual residual;
  double omega_scale = 0.0;  // spectral radius of H(0); makes the tolerance scale-free
  double tolerance = 0.0;
  bool pass = false;
};

/// Packages the stationarity condition as a checkable certificate:
/// pass iff sup_i,k |R_i(t_k)| <= tol * spectral_radius(H(0)). A passing
/// certificate reports a stationary path, not necessarily an optimal one.
ResidualCertificate residual_certificate(const HamiltonianPath& path, int level, int steps,
                                         double tol = 1e-5, double gap_floor = kDefaultGapFloor);

}  // namespace adiopt
