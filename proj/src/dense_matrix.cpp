#include "ranky/dense_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ranky {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw std::invalid_argument("dense value count " + std::to_string(values_.size()) +
                                " does not match " + std::to_string(rows_) + "x" +
                                std::to_string(cols_));
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double DenseMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

bool DenseMatrix::all_finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) return false;
  return true;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("multiply: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " by " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  }
  DenseMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

DenseMatrix dense_of(const SparseMatrix& a) {
  const std::size_t count = a.rows() * a.cols();
  if (a.rows() != 0 && count / a.rows() != a.cols()) {
    throw std::invalid_argument("dense_of: dimension overflow");
  }
  if (count > kDensifyCap) {
    throw std::invalid_argument("dense_of: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) +
                                " exceeds the densification cap");
  }
  DenseMatrix out(a.rows(), a.cols());
  for (const Entry& e : a.entries()) out(e.row, e.col) = e.value;
  return out;
}

SparseMatrix sparse_of(const DenseMatrix& a) {
  std::vector<Entry> entries;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(r, c) != 0.0) entries.push_back({r, c, a(r, c)});
  return SparseMatrix(a.rows(), a.cols(), std::move(entries));
}

}  // namespace ranky
