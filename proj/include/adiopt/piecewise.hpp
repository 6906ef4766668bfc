#pragma once

#include <vector>

#include "adiopt/types.hpp"

namespace adiopt {

/// Continuous piecewise-linear real function on [times.front(), times.back()].
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> times, std::vector<double> values);

  static PiecewiseLinear zero(double duration);

  /// Uniform node grid on [0, duration] with the given interior values and
  /// both endpoint values pinned to zero.
  static PiecewiseLinear interior(double duration, const rvec& interior_values);

  double operator()(double t) const;

  double start_time() const { return times_.front(); }
  double end_time() const { return times_.back(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values() const { return values_; }

  bool zero_endpoints(double tol = 1e-12) const;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

/// max_i |f_i(t)| at the endpoints; validation helper for perturbation
/// coefficients that must vanish initially and finally.
void require_zero_endpoints(const std::vector<PiecewiseLinear>& coeffs, const char* what);

}  // namespace adiopt
