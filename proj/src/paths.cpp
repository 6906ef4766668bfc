#include "adiopt/paths.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace adiopt {

namespace {

// Interior node times of the coefficient functions; H(t) is only piecewise
// smooth across them, so integrators need them as grid nodes.
std::vector<double> coefficient_kinks(const std::vector<PiecewiseLinear>& coeffs, double duration) {
  std::vector<double> kinks;
  for (const auto& f : coeffs) {
    for (double t : f.times()) {
      if (t > 1e-12 * duration && t < duration * (1.0 - 1e-12)) kinks.push_back(t);
    }
  }
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end(),
                          [duration](double a, double b) { return std::abs(a - b) <= 1e-12 * duration; }),
              kinks.end());
  return kinks;
}

std::vector<double> merge_kinks(std::vector<double> a, const std::vector<double>& b, double duration) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end(),
                      [duration](double x, double y) { return std::abs(x - y) <= 1e-12 * duration; }),
          a.end());
  return a;
}

// h(t) = sum_i f_i(t) l_i
cmat assemble_direction(const std::vector<PiecewiseLinear>& coeffs,
                        const std::vector<HermitianOperator>& basis, double t) {
  cmat h = cmat::Zero(basis[0].dim(), basis[0].dim());
  for (size_t i = 0; i < coeffs.size(); ++i) h += coeffs[i](t) * basis[i].matrix();
  return h;
}

}  // namespace

const char* to_string(PathKind kind) {
  switch (kind) {
    case PathKind::Isospectral: return "isospectral";
    case PathKind::LambdaRamp: return "lambda_ramp";
    case PathKind::RotatingSpin: return "rotating_spin";
    case PathKind::Perturbed: return "perturbed";
    case PathKind::Dilated: return "dilated";
  }
  return "unknown";
}

void RotatingSpinParams::validate() const {
  if (!std::isfinite(omega0) || !std::isfinite(omega) || !std::isfinite(theta)) {
    throw ValidationError("RotatingSpinParams: non-finite parameter");
  }
  if (omega0 <= 0.0) throw ValidationError("RotatingSpinParams: omega0 must be positive");
  if (theta < 0.0 || theta > kPi) throw ValidationError("RotatingSpinParams: theta must lie in [0, pi]");
}

HamiltonianPath::HamiltonianPath(int dim, double duration, PathKind kind, Evaluator eval,
                                 HermitianOperator h0, Evaluator frame, std::vector<double> kinks)
    : dim_(dim),
      duration_(duration),
      kind_(kind),
      eval_(std::move(eval)),
      frame_(std::move(frame)),
      kinks_(std::move(kinks)),
      h0_(std::move(h0)) {}

HamiltonianPath HamiltonianPath::make(int dim, double duration, PathKind kind, Evaluator eval,
                                      HermitianOperator h0, Evaluator frame,
                                      std::vector<double> kinks) {
  if (dim < 2) throw ValidationError("HamiltonianPath: dim >= 2 required");
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw ValidationError("HamiltonianPath: duration must be positive and finite");
  }
  if (h0.dim() != dim) throw ValidationError("HamiltonianPath: H(0) dimension mismatch");
  if (!eval) throw ValidationError("HamiltonianPath: missing evaluator");
  return HamiltonianPath(dim, duration, kind, std::move(eval), std::move(h0), std::move(frame),
                         std::move(kinks));
}

HermitianOperator HamiltonianPath::at(double t) const {
  const double slack = 1e-9 * duration_;
  if (!std::isfinite(t) || t < -slack || t > duration_ + slack) {
    throw ValidationError("HamiltonianPath: t outside [0, duration]");
  }
  const double tc = std::clamp(t, 0.0, duration_);
  return HermitianOperator(eval_(tc));
}

UnitaryOperator HamiltonianPath::frame(double t) const {
  if (!frame_) throw ValidationError("HamiltonianPath: no conjugating frame for this path kind");
  const double slack = 1e-9 * duration_;
  if (!std::isfinite(t) || t < -slack || t > duration_ + slack) {
    throw ValidationError("HamiltonianPath: t outside [0, duration]");
  }
  return UnitaryOperator(frame_(std::clamp(t, 0.0, duration_)));
}

HamiltonianPath isospectral_path(const IsospectralParams& params, double duration) {
  const int d = params.h0.dim();
  if (params.v_end.dim() != d) throw ValidationError("isospectral_path: V_end dimension mismatch");
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw ValidationError("isospectral_path: duration must be positive and finite");
  }

  auto basis = std::make_shared<std::vector<HermitianOperator>>(hermitian_basis(d));
  auto coeffs = std::make_shared<std::vector<PiecewiseLinear>>(params.coefficients);
  if (!coeffs->empty() && coeffs->size() != basis->size()) {
    throw ValidationError("isospectral_path: expected " + std::to_string(basis->size()) +
                          " coefficient functions, got " + std::to_string(coeffs->size()));
  }
  for (size_t i = 0; i < coeffs->size(); ++i) {
    if (std::abs((*coeffs)[i](0.0)) > 1e-12 || std::abs((*coeffs)[i](duration)) > 1e-12) {
      throw ValidationError("isospectral_path: coefficient " + std::to_string(i) +
                            " must be zero initially and finally");
    }
  }

  // Principal logarithm of V_end. A unitary matrix is normal, so its Schur
  // form is diagonal; eigenphases are mapped to (-pi, pi].
  Eigen::ComplexSchur<cmat> schur(params.v_end.matrix());
  if (schur.info() != Eigen::Success) {
    throw NumericalError("isospectral_path: Schur decomposition failed");
  }
  const cmat q = schur.matrixU();
  rvec phases(d);
  for (int k = 0; k < d; ++k) {
    const cxd lambda = schur.matrixT()(k, k);
    if (std::abs(std::abs(lambda) - 1.0) > 1e-8) {
      throw NumericalError("isospectral_path: V_end eigenvalue off the unit circle");
    }
    const double phi = std::arg(lambda);
    if (kPi - std::abs(phi) < 1e-9) {
      throw AmbiguousLogarithmError(
          "isospectral_path: V_end has an eigenphase at pi; the principal logarithm is ambiguous, "
          "supply a reference path explicitly");
    }
    phases[k] = phi;
  }

  auto v_ref = [q, phases, duration, d](double t) {
    cvec diag(d);
    for (int k = 0; k < d; ++k) diag[k] = std::polar(1.0, phases[k] * (t / duration));
    return cmat(q * diag.asDiagonal() * q.adjoint());
  };

  cmat h0m = params.h0.matrix();
  auto frame = [v_ref, coeffs, basis](double t) -> cmat {
    if (coeffs->empty()) return v_ref(t);
    const HermitianOperator f(assemble_direction(*coeffs, *basis, t));
    return v_ref(t) * expm_skew(f, -1.0).matrix();  // V_ref(t) exp(+iF(t))
  };
  auto eval = [frame, h0m](double t) -> cmat {
    const cmat v = frame(t);
    return v * h0m * v.adjoint();
  };

  return HamiltonianPath::make(d, duration, PathKind::Isospectral, eval, params.h0, frame,
                               coefficient_kinks(*coeffs, duration));
}

HamiltonianPath lambda_ramp_path(const HermitianOperator& h0, const HermitianOperator& h1,
                                 double lambda_scale, double duration) {
  if (h0.dim() != h1.dim()) throw ValidationError("lambda_ramp_path: endpoint dimension mismatch");
  if (!std::isfinite(lambda_scale) || lambda_scale < 1.0) {
    throw ValidationError("lambda_ramp_path: Lambda must be >= 1");
  }
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw ValidationError("lambda_ramp_path: duration must be positive and finite");
  }

  const cmat m0 = h0.matrix();
  const cmat m1 = h1.matrix();
  const double lam = lambda_scale;
  auto eval = [m0, m1, lam, duration](double t) -> cmat {
    const double s = 3.0 * t / duration;
    if (s <= 1.0) return (1.0 + s * (lam - 1.0)) * m0;
    if (s <= 2.0) return ((2.0 - s) * lam) * m0 + ((-1.0 + s) * lam) * m1;
    return (3.0 * lam - 2.0 + s * (1.0 - lam)) * m1;
  };

  return HamiltonianPath::make(h0.dim(), duration, PathKind::LambdaRamp, eval, h0, nullptr,
                               {duration / 3.0, 2.0 * duration / 3.0});
}

HamiltonianPath rotating_spin_path(const RotatingSpinParams& params, double duration) {
  params.validate();
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw ValidationError("rotating_spin_path: duration must be positive and finite");
  }

  const double w0 = params.omega0;
  const double w = params.omega;
  const double st = std::sin(params.theta);
  const double ct = std::cos(params.theta);

  auto eval = [w0, w, st, ct](double t) -> cmat {
    cmat h(2, 2);
    const double nx = st * std::cos(w * t);
    const double ny = st * std::sin(w * t);
    h(0, 0) = -0.5 * w0 * ct;
    h(1, 1) = 0.5 * w0 * ct;
    h(0, 1) = -0.5 * w0 * cxd(nx, -ny);
    h(1, 0) = -0.5 * w0 * cxd(nx, ny);
    return h;
  };
  // frame choice with V0(0) = I: V0(t) = exp(-i omega t s3 / 2)
  auto frame = [w](double t) -> cmat {
    cmat v = cmat::Zero(2, 2);
    v(0, 0) = std::polar(1.0, -0.5 * w * t);
    v(1, 1) = std::polar(1.0, 0.5 * w * t);
    return v;
  };

  return HamiltonianPath::make(2, duration, PathKind::RotatingSpin, eval,
                               HermitianOperator(eval(0.0)), frame);
}

HamiltonianPath perturbed_path(const HamiltonianPath& base,
                               const std::vector<PiecewiseLinear>& h_coeffs, double epsilon) {
  if (base.kind() != PathKind::Isospectral && base.kind() != PathKind::RotatingSpin) {
    throw ValidationError("perturbed_path: base must be of isospectral or rotating_spin kind");
  }
  if (!std::isfinite(epsilon)) throw ValidationError("perturbed_path: non-finite epsilon");

  const int d = base.dim();
  auto basis = std::make_shared<std::vector<HermitianOperator>>(hermitian_basis(d));
  if (h_coeffs.size() != basis->size()) {
    throw ValidationError("perturbed_path: expected " + std::to_string(basis->size()) +
                          " coefficient functions, got " + std::to_string(h_coeffs.size()));
  }
  const double duration = base.duration();
  for (size_t i = 0; i < h_coeffs.size(); ++i) {
    if (std::abs(h_coeffs[i](0.0)) > 1e-12 || std::abs(h_coeffs[i](duration)) > 1e-12) {
      throw ValidationError("perturbed_path: coefficient " + std::to_string(i) +
                            " must be zero initially and finally");
    }
  }

  auto coeffs = std::make_shared<std::vector<PiecewiseLinear>>(h_coeffs);
  auto frame = [base, coeffs, basis, epsilon](double t) -> cmat {
    const HermitianOperator h(assemble_direction(*coeffs, *basis, t));
    return expm_skew(h, -epsilon).matrix() * base.frame(t).matrix();  // exp(+i eps h) V0
  };
  HamiltonianPath::Evaluator eval;
  if (epsilon == 0.0) {
    eval = [base](double t) { return base.at(t).matrix(); };
  } else {
    cmat h0m = base.initial().matrix();
    eval = [frame, h0m](double t) -> cmat {
      const cmat v = frame(t);
      return v * h0m * v.adjoint();
    };
  }

  return HamiltonianPath::make(d, duration, PathKind::Perturbed, eval, base.initial(), frame,
                               merge_kinks(base.kinks(), coefficient_kinks(*coeffs, duration), duration));
}

HamiltonianPath time_dilate(const HamiltonianPath& base, double lambda) {
  if (!std::isfinite(lambda) || lambda <= 0.0) {
    throw ValidationError("time_dilate: lambda must be positive and finite");
  }
  const double duration = base.duration() / lambda;
  auto eval = [base, lambda](double t) { return base.at(lambda * t).matrix(); };
  HamiltonianPath::Evaluator frame = nullptr;
  if (base.has_frame()) {
    frame = [base, lambda](double t) { return base.frame(lambda * t).matrix(); };
  }
  std::vector<double> kinks;
  for (double k : base.kinks()) kinks.push_back(k / lambda);
  return HamiltonianPath::make(base.dim(), duration, PathKind::Dilated, eval, base.initial(),
                               frame, std::move(kinks));
}

}  // namespace adiopt
