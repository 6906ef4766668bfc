#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace adiopt {

using cxd = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rmat = Eigen::MatrixXd;
using rvec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Malformed input: bad dimensions, non-Hermitian data, out-of-range parameters,
/// invalid configuration. Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed input that hits a mathematical degeneracy or an accuracy failure
/// at run time. Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spectral gap at the tracked level fell below the configured floor.
class GapCollapseError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Node-to-node eigenvector overlap too small for phase alignment
/// (time grid too coarse, or a level crossing).
class GaugeTrackingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Unitary has an eigenphase at the branch cut of the principal logarithm.
class AmbiguousLogarithmError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Rotating-frame reduction degenerates (effective precession rate vanishes).
class DegenerateFrameError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

inline double max_abs(const cmat& m) { return m.cwiseAbs().maxCoeff(); }

inline bool all_finite(const cmat& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

inline bool all_finite(const cvec& v) {
  return v.real().allFinite() && v.imag().allFinite();
}

}  // namespace adiopt
