#pragma once

#include <cstddef>
#include <vector>

#include "ranky/sparse_matrix.hpp"

namespace ranky {

// Row-major dense matrix of doubles.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  DenseMatrix transposed() const;
  double frobenius_norm() const;
  bool all_finite() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);

// Largest element count dense_of will materialize. Oracle paths stay at desk
// scale; production-sized inputs must not be densified by accident.
inline constexpr std::size_t kDensifyCap = std::size_t{1} << 26;

DenseMatrix dense_of(const SparseMatrix& a);

// Re-extract the nonzero entries of a dense matrix.
SparseMatrix sparse_of(const DenseMatrix& a);

}  // namespace ranky
