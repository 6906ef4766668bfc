#include "adiopt/piecewise.hpp"

#include <algorithm>
#include <cmath>

namespace adiopt {

PiecewiseLinear::PiecewiseLinear(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() < 2 || times_.size() != values_.size()) {
    throw ValidationError("PiecewiseLinear: need >= 2 nodes and matching value count");
  }
  for (size_t k = 0; k < times_.size(); ++k) {
    if (!std::isfinite(times_[k]) || !std::isfinite(values_[k])) {
      throw ValidationError("PiecewiseLinear: non-finite node");
    }
    if (k > 0 && times_[k] <= times_[k - 1]) {
      throw ValidationError("PiecewiseLinear: node times must be strictly increasing");
    }
  }
}

PiecewiseLinear PiecewiseLinear::zero(double duration) {
  return PiecewiseLinear({0.0, duration}, {0.0, 0.0});
}

PiecewiseLinear PiecewiseLinear::interior(double duration, const rvec& interior_values) {
  if (duration <= 0.0) throw ValidationError("PiecewiseLinear::interior: duration must be positive");
  const int m = static_cast<int>(interior_values.size());
  std::vector<double> times(m + 2), values(m + 2, 0.0);
  for (int k = 0; k <= m + 1; ++k) times[k] = duration * (static_cast<double>(k) / (m + 1));
  for (int k = 0; k < m; ++k) values[k + 1] = interior_values[k];
  return PiecewiseLinear(std::move(times), std::move(values));
}

double PiecewiseLinear::operator()(double t) const {
  if (t <= times_.front()) return values_.front();
  if (t >= times_.back()) return values_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const size_t k = static_cast<size_t>(it - times_.begin());
  const double w = (t - times_[k - 1]) / (times_[k] - times_[k - 1]);
  return values_[k - 1] + w * (values_[k] - values_[k - 1]);
}

bool PiecewiseLinear::zero_endpoints(double tol) const {
  return std::abs(values_.front()) <= tol && std::abs(values_.back()) <= tol;
}

void require_zero_endpoints(const std::vector<PiecewiseLinear>& coeffs, const char* what) {
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (!coeffs[i].zero_endpoints()) {
      throw ValidationError(std::string(what) + ": coefficient " + std::to_string(i) +
                            " must vanish at both endpoints");
    }
  }
}

}  // namespace adiopt
