#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "ranky/dense_matrix.hpp"
#include "ranky/rng.hpp"
#include "ranky/svd.hpp"

namespace ranky::testing {

inline DenseMatrix random_dense(std::size_t rows, std::size_t cols,
                                std::uint64_t seed) {
  DenseMatrix m(rows, cols);
  KeyedRng rng(seed, 0x7e57, 0);
  for (double& v : m.values()) v = 2.0 * rng.unit() - 1.0;
  return m;
}

// rank-deficient: product of two thin random factors
inline DenseMatrix random_low_rank(std::size_t rows, std::size_t cols,
                                   std::size_t rank, std::uint64_t seed) {
  return multiply(random_dense(rows, rank, seed),
                  random_dense(rank, cols, seed ^ 0x5eedULL));
}

inline double max_abs(const DenseMatrix& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  }
  return m;
}

// max-norm of U^T U - I
inline double orthonormality_defect(const DenseMatrix& u) {
  double worst = 0.0;
  for (std::size_t i = 0; i < u.cols(); ++i) {
    for (std::size_t j = i; j < u.cols(); ++j) {
      double dot = 0.0;
      for (std::size_t r = 0; r < u.rows(); ++r) dot += u(r, i) * u(r, j);
      worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

inline double reconstruction_residual(const DenseMatrix& a, const SvdResult& svd) {
  const DenseMatrix& v = *svd.v;
  double sum = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      double acc = 0.0;
      for (std::size_t j = 0; j < svd.sigma.size(); ++j) {
        acc += svd.u(r, j) * svd.sigma[j] * v(c, j);
      }
      sum += (a(r, c) - acc) * (a(r, c) - acc);
    }
  }
  return std::sqrt(sum);
}

// largest principal angle between the column spans of two orthonormal blocks
inline double largest_principal_angle(const DenseMatrix& a, const DenseMatrix& b) {
  const SvdResult svd = dense_svd(multiply(a.transposed(), b));
  double min_cos = 1.0;
  for (double s : svd.sigma) min_cos = std::min(min_cos, s);
  min_cos = std::min(1.0, std::max(-1.0, min_cos));
  return std::acos(min_cos);
}

}  // namespace ranky::testing
