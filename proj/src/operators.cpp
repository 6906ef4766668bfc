#include "adiopt/operators.hpp"

#include <cmath>

namespace adiopt {

namespace {

void require_square(const cmat& m, const char* what) {
  if (m.rows() < 2 || m.rows() != m.cols()) {
    throw ValidationError(std::string(what) + ": expected a square matrix with dim >= 2, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!all_finite(m)) {
    throw ValidationError(std::string(what) + ": non-finite entries");
  }
}

}  // namespace

HermitianOperator::HermitianOperator(cmat m, double tol) {
  require_square(m, "HermitianOperator");
  const double defect = max_abs(m - m.adjoint().eval());
  if (defect > tol) {
    throw ValidationError("HermitianOperator: hermiticity defect " + std::to_string(defect) +
                          " exceeds tolerance");
  }
  m_ = 0.5 * (m + m.adjoint().eval());
}

HermitianOperator HermitianOperator::zero(int dim) {
  return HermitianOperator(cmat::Zero(dim, dim));
}

double HermitianOperator::spectral_radius() const {
  Eigen::SelfAdjointEigenSolver<cmat> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

UnitaryOperator::UnitaryOperator(cmat m, double tol) {
  require_square(m, "UnitaryOperator");
  m_ = std::move(m);
  const double defect = unitarity_defect();
  if (defect > tol) {
    throw ValidationError("UnitaryOperator: unitarity defect " + std::to_string(defect) +
                          " exceeds tolerance");
  }
}

UnitaryOperator UnitaryOperator::identity(int dim) {
  return UnitaryOperator(cmat::Identity(dim, dim));
}

UnitaryOperator UnitaryOperator::adjoint() const { return UnitaryOperator(m_.adjoint()); }

StateVector::StateVector(cvec v, double tol) {
  if (v.rows() < 2) throw ValidationError("StateVector: dim >= 2 required");
  if (!all_finite(v)) throw ValidationError("StateVector: non-finite entries");
  const double norm = v.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw ValidationError("StateVector: norm " + std::to_string(norm) + " is not 1");
  }
  v_ = std::move(v);
}

StateVector StateVector::normalized(cvec v) {
  if (v.rows() < 2) throw ValidationError("StateVector: dim >= 2 required");
  if (!all_finite(v)) throw ValidationError("StateVector: non-finite entries");
  const double norm = v.norm();
  if (norm < 1e-12) throw ValidationError("StateVector: cannot normalize a near-zero vector");
  return StateVector(v / norm);
}

cxd StateVector::overlap(const StateVector& other) const {
  if (other.dim() != dim()) throw ValidationError("StateVector::overlap: dimension mismatch");
  return v_.dot(other.v_);
}

StateVector Spectrum::eigenvector(int n) const {
  if (n < 0 || n >= eigenvectors.cols()) {
    throw ValidationError("Spectrum::eigenvector: level out of range");
  }
  return StateVector::normalized(eigenvectors.col(n));
}

UnitaryOperator expm_skew(const HermitianOperator& h, double s) {
  if (!std::isfinite(s)) throw ValidationError("expm_skew: non-finite scale");
  const int d = h.dim();
  if (s == 0.0) return UnitaryOperator::identity(d);

  if (d == 2) {
    // H = a I + v.sigma; exp(-isH) = e^{-isa} (cos(s|v|) I - i sin(s|v|) vhat.sigma)
    const cmat& m = h.matrix();
    const double a = 0.5 * (m(0, 0).real() + m(1, 1).real());
    const double v1 = m(0, 1).real();
    const double v2 = -m(0, 1).imag();
    const double v3 = 0.5 * (m(0, 0).real() - m(1, 1).real());
    const double b = std::sqrt(v1 * v1 + v2 * v2 + v3 * v3);
    const cxd phase = std::polar(1.0, -s * a);
    cmat u(2, 2);
    if (b == 0.0) {
      u = phase * cmat::Identity(2, 2);
    } else {
      const double c = std::cos(s * b);
      const double sn = std::sin(s * b) / b;
      const cxd i(0.0, 1.0);
      u(0, 0) = phase * (c - i * sn * v3);
      u(0, 1) = phase * (-i * sn * cxd(v1, -v2));
      u(1, 0) = phase * (-i * sn * cxd(v1, v2));
      u(1, 1) = phase * (c + i * sn * v3);
    }
    return UnitaryOperator(u);
  }

  Eigen::SelfAdjointEigenSolver<cmat> es(h.matrix());
  if (es.info() != Eigen::Success) throw NumericalError("expm_skew: eigendecomposition failed");
  cvec phases(d);
  for (int k = 0; k < d; ++k) phases[k] = std::polar(1.0, -s * es.eigenvalues()[k]);
  cmat u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return UnitaryOperator(std::move(u));
}

Spectrum eigh(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<cmat> es(h.matrix());
  if (es.info() != Eigen::Success) throw NumericalError("eigh: eigendecomposition failed");
  Spectrum spec;
  spec.eigenvalues = es.eigenvalues();
  spec.eigenvectors = es.eigenvectors();

  const int d = h.dim();
  spec.min_gap = spec.eigenvalues[1] - spec.eigenvalues[0];
  for (int k = 2; k < d; ++k) {
    spec.min_gap = std::min(spec.min_gap, spec.eigenvalues[k] - spec.eigenvalues[k - 1]);
  }

  const double ortho = max_abs(spec.eigenvectors.adjoint() * spec.eigenvectors - cmat::Identity(d, d));
  const double recon = max_abs(spec.eigenvectors * spec.eigenvalues.asDiagonal().toDenseMatrix().cast<cxd>() *
                                   spec.eigenvectors.adjoint() -
                               h.matrix());
  if (ortho > 1e-10 || recon > 1e-10) {
    throw NumericalError("eigh: decomposition quality check failed");
  }
  return spec;
}

std::vector<HermitianOperator> hermitian_basis(int dim) {
  if (dim < 2) throw ValidationError("hermitian_basis: dim >= 2 required");
  std::vector<HermitianOperator> basis;
  basis.reserve(static_cast<size_t>(dim) * dim - 1);
  const cxd i(0.0, 1.0);
  for (int k = 1; k < dim; ++k) {
    for (int j = 0; j < k; ++j) {
      cmat sym = cmat::Zero(dim, dim);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.emplace_back(std::move(sym));
      cmat asym = cmat::Zero(dim, dim);
      asym(j, k) = -i;
      asym(k, j) = i;
      basis.emplace_back(std::move(asym));
    }
    // diagonal generator: diag(1, ..., 1, -k, 0, ..., 0) scaled to Tr(l^2) = 2
    cmat diag = cmat::Zero(dim, dim);
    const double scale = std::sqrt(2.0 / (static_cast<double>(k) * (k + 1)));
    for (int j = 0; j < k; ++j) diag(j, j) = scale;
    diag(k, k) = -scale * static_cast<double>(k);
    basis.emplace_back(std::move(diag));
  }
  return basis;
}

cmat commutator(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw ValidationError("commutator: dimension mismatch");
  return a.matrix() * b.matrix() - b.matrix() * a.matrix();
}

std::vector<StateVector> align_gauge(const std::vector<StateVector>& reference,
                                     const std::vector<StateVector>& candidate,
                                     double min_overlap) {
  if (reference.size() != candidate.size()) {
    throw ValidationError("align_gauge: reference/candidate count mismatch");
  }
  std::vector<StateVector> aligned;
  aligned.reserve(candidate.size());
  for (size_t j = 0; j < candidate.size(); ++j) {
    if (reference[j].dim() != candidate[j].dim()) {
      throw ValidationError("align_gauge: dimension mismatch at index " + std::to_string(j));
    }
    const cxd z = reference[j].vector().dot(candidate[j].vector());
    const double mag = std::abs(z);
    if (mag <= min_overlap) {
      throw GaugeTrackingError("align_gauge: overlap " + std::to_string(mag) + " at index " +
                               std::to_string(j) + " too small (grid too coarse or level crossing)");
    }
    aligned.emplace_back(StateVector::normalized(candidate[j].vector() * (std::conj(z) / mag)));
  }
  return aligned;
}

rvec basis_coefficients(const HermitianOperator& m, const std::vector<HermitianOperator>& basis) {
  rvec c(basis.size());
  for (size_t k = 0; k < basis.size(); ++k) {
    if (basis[k].dim() != m.dim()) throw ValidationError("basis_coefficients: dimension mismatch");
    c[static_cast<Eigen::Index>(k)] = 0.5 * (basis[k].matrix().cwiseProduct(m.matrix().transpose())).sum().real();
  }
  return c;
}

cmat sigma_x() {
  cmat s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

cmat sigma_y() {
  cmat s(2, 2);
  s << 0, cxd(0, -1), cxd(0, 1), 0;
  return s;
}

cmat sigma_z() {
  cmat s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

}  // namespace adiopt
