#pragma once

#include <optional>
#include <vector>

#include "ranky/dense_matrix.hpp"
#include "ranky/sparse_matrix.hpp"

namespace ranky {

// Singular values above kRankTol * sigma_max count toward the numerical rank;
// left singular directions below it are deterministic orthonormal fill.
inline constexpr double kRankTol = 1e-10;

struct SvdResult {
  DenseMatrix u;              // rows x k, orthonormal columns
  std::vector<double> sigma;  // length k, descending, nonnegative
  std::optional<DenseMatrix> v;  // cols x k, orthonormal columns
};

// Full SVD (k = min(rows, cols)) by one-sided Jacobi with QR preconditioning
// on tall inputs. Deterministic: ties keep stable order, each U column's
// largest-magnitude entry is made nonnegative, null directions are completed
// by Gram-Schmidt over canonical basis vectors.
SvdResult dense_svd(const DenseMatrix& a);

// Reduced SVD of one (densified) block, truncated to
// k = min(keep, min(rows, cols)). V is not retained.
SvdResult block_svd(const SparseMatrix& block, std::size_t keep);

}  // namespace ranky
