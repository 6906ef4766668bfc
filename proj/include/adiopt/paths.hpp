#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "adiopt/operators.hpp"
#include "adiopt/piecewise.hpp"

namespace adiopt {

enum class PathKind { Isospectral, LambdaRamp, RotatingSpin, Perturbed, Dilated };

const char* to_string(PathKind kind);

/// Spin-1/2 in a magnetic field of Larmor frequency omega0, rotating about
/// the 3-axis at rate omega, tilted from it by theta.
struct RotatingSpinParams {
  double omega0 = 1.0;
  double omega = 0.0;
  double theta = 0.0;

  void validate() const;
};

/// Fixed-endpoint isospectral family H(t) = V(t) H0 V(t)^dagger with
/// V(t) = V_ref(t) exp(i sum_i f_i(t) l_i). V_ref is the geodesic from I to
/// V_end, the f_i vanish at both endpoints, so H(0) = H0 and
/// H(T) = V_end H0 V_end^dagger for every choice of coefficients.
struct IsospectralParams {
  HermitianOperator h0;
  UnitaryOperator v_end;
  std::vector<PiecewiseLinear> coefficients;  // one per basis index, or empty for all-zero
};

/// Time-parametrized Hermitian-valued map on [0, duration]. Immutable after
/// construction; evaluation is pure. Paths built from a conjugating frame
/// V0(t) expose it for perturbation and optimization machinery.
class HamiltonianPath {
 public:
  using Evaluator = std::function<cmat(double)>;

  int dim() const { return dim_; }
  double duration() const { return duration_; }
  PathKind kind() const { return kind_; }

  /// H(t); t must lie in [0, duration] (tiny rounding slack is clamped).
  HermitianOperator at(double t) const;

  /// Interior times where H(t) is continuous but not differentiable.
  /// Integrators must place grid nodes here.
  const std::vector<double>& kinks() const { return kinks_; }

  bool has_frame() const { return static_cast<bool>(frame_); }
  /// V0(t) with V0(0) = I and H(t) = V0(t) H(0) V0(t)^dagger.
  UnitaryOperator frame(double t) const;

  const HermitianOperator& initial() const { return h0_; }

  static HamiltonianPath make(int dim, double duration, PathKind kind, Evaluator eval,
                              HermitianOperator h0, Evaluator frame = nullptr,
                              std::vector<double> kinks = {});

 private:
  HamiltonianPath(int dim, double duration, PathKind kind, Evaluator eval, HermitianOperator h0,
                  Evaluator frame, std::vector<double> kinks);

  int dim_;
  double duration_;
  PathKind kind_;
  Evaluator eval_;
  Evaluator frame_;
  std::vector<double> kinks_;
  HermitianOperator h0_;
};

HamiltonianPath isospectral_path(const IsospectralParams& params, double duration);

/// The three-stage ramp: scale H0 up to Lambda*H0 on [0, T/3], interpolate
/// (2 - 3t/T) Lambda H0 + (-1 + 3t/T) Lambda H1 on [T/3, 2T/3], scale back
/// down to H1 on [2T/3, T]. Continuous at both joins.
HamiltonianPath lambda_ramp_path(const HermitianOperator& h0, const HermitianOperator& h1,
                                 double lambda_scale, double duration);

/// H(t) = -(omega0/2) nhat(t).sigma with nhat precessing about the 3-axis:
/// -(omega0/2)(sin(theta)cos(omega t) s1 + sin(theta)sin(omega t) s2 + cos(theta) s3).
HamiltonianPath rotating_spin_path(const RotatingSpinParams& params, double duration);

/// Replaces the base frame V0(t) by exp(i epsilon h(t)) V0(t) with
/// h(t) = sum_i f_i(t) l_i. Exactly isospectral at finite epsilon and equal
/// to the first-order family (1 + i epsilon h) V0 to O(epsilon^2). The f_i
/// must vanish at both endpoints, so H(0) and H(T) are unchanged.
HamiltonianPath perturbed_path(const HamiltonianPath& base,
                               const std::vector<PiecewiseLinear>& h_coeffs, double epsilon);

/// H(t) -> H(lambda t) on [0, duration/lambda].
HamiltonianPath time_dilate(const HamiltonianPath& base, double lambda);

}  // namespace adiopt
