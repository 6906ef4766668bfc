#pragma once

#include <vector>

#include "adiopt/types.hpp"

namespace adiopt {

// Construction tolerances. Double precision leaves ample headroom at the
// matrix sizes this library targets (dim <= ~16).
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kStateNormTol = 1e-12;

/// Dense complex Hermitian matrix, dim >= 2. Validated at construction and
/// stored as its exact Hermitian part, so downstream code never sees a
/// matrix with H != H^dagger.
class HermitianOperator {
 public:
  explicit HermitianOperator(cmat m, double tol = kHermitianTol);

  static HermitianOperator zero(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const cmat& matrix() const { return m_; }

  /// max |eigenvalue|; the natural energy scale of the operator.
  double spectral_radius() const;

 private:
  cmat m_;
};

/// Dense complex unitary matrix. ||U^dagger U - I||_max <= tol enforced at
/// construction; re-checkable on demand via unitarity_defect().
class UnitaryOperator {
 public:
  explicit UnitaryOperator(cmat m, double tol = kUnitaryTol);

  static UnitaryOperator identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const cmat& matrix() const { return m_; }
  double unitarity_defect() const { return max_abs(m_.adjoint() * m_ - cmat::Identity(dim(), dim())); }
  UnitaryOperator adjoint() const;

 private:
  cmat m_;
};

/// Unit-norm complex vector.
class StateVector {
 public:
  explicit StateVector(cvec v, double tol = kStateNormTol);

  /// Rescales v to unit norm; rejects near-zero vectors.
  static StateVector normalized(cvec v);

  int dim() const { return static_cast<int>(v_.rows()); }
  const cvec& vector() const { return v_; }

  /// <this|other>
  cxd overlap(const StateVector& other) const;

 private:
  cvec v_;
};

/// Full eigendecomposition of a Hermitian operator.
struct Spectrum {
  rvec eigenvalues;   // ascending
  cmat eigenvectors;  // orthonormal columns; col(n) pairs with eigenvalues[n]
  double min_gap;     // smallest adjacent eigenvalue spacing (0 if degenerate)

  StateVector eigenvector(int n) const;
};

/// exp(-i s H). Unitary by construction; returns the identity exactly for s = 0.
UnitaryOperator expm_skew(const HermitianOperator& h, double s);

/// Eigendecomposition with ascending eigenvalues. min_gap = 0 is reported,
/// not an error; callers that need a gap must check.
Spectrum eigh(const HermitianOperator& h);

/// Generalized Gell-Mann basis of su(dim): dim^2 - 1 traceless Hermitian
/// matrices with Tr(l_i l_j) = 2 delta_ij. For dim = 2 this is {s1, s2, s3}.
std::vector<HermitianOperator> hermitian_basis(int dim);

/// AB - BA. Anti-Hermitian for Hermitian inputs.
cmat commutator(const HermitianOperator& a, const HermitianOperator& b);

/// Multiplies each candidate_j by the unit phase that makes
/// <reference_j|candidate_j> real and positive. Overlap magnitudes at or
/// below min_overlap signal a meaningless alignment and raise
/// GaugeTrackingError.
std::vector<StateVector> align_gauge(const std::vector<StateVector>& reference,
                                     const std::vector<StateVector>& candidate,
                                     double min_overlap = 0.1);

/// Expansion coefficients c_i = Tr(l_i M) / 2 of a traceless Hermitian M in
/// hermitian_basis(dim). Exact round trip: M = sum_i c_i l_i.
rvec basis_coefficients(const HermitianOperator& m,
                        const std::vector<HermitianOperator>& basis);

// Pauli matrices.
cmat sigma_x();
cmat sigma_y();
cmat sigma_z();

}  // namespace adiopt
