#pragma once

#include <random>

#include "adiopt/operators.hpp"

namespace adiopt::testing {

inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

inline cmat random_complex(std::mt19937_64& gen, int rows, int cols) {
  cmat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = cxd(uniform(gen, -1, 1), uniform(gen, -1, 1));
  }
  return m;
}

inline HermitianOperator random_hermitian(std::mt19937_64& gen, int dim) {
  const cmat m = random_complex(gen, dim, dim);
  return HermitianOperator(0.5 * (m + m.adjoint().eval()));
}

inline HermitianOperator random_traceless_hermitian(std::mt19937_64& gen, int dim) {
  cmat m = random_complex(gen, dim, dim);
  m = 0.5 * (m + m.adjoint().eval());
  m -= (m.trace() / static_cast<double>(dim)) * cmat::Identity(dim, dim);
  return HermitianOperator(std::move(m));
}

inline UnitaryOperator random_unitary(std::mt19937_64& gen, int dim) {
  const cmat m = random_complex(gen, dim, dim);
  Eigen::HouseholderQR<cmat> qr(m);
  cmat q = qr.householderQ();
  // fix the diagonal phases of R so Q is uniquely determined by m
  const cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    const cxd d = r(k, k);
    if (std::abs(d) > 0) q.col(k) *= d / std::abs(d);
  }
  return UnitaryOperator(std::move(q));
}

inline StateVector random_state(std::mt19937_64& gen, int dim) {
  cvec v(dim);
  for (int k = 0; k < dim; ++k) v[k] = cxd(uniform(gen, -1, 1), uniform(gen, -1, 1));
  return StateVector::normalized(v / v.norm());
}

}  // namespace adiopt::testing
