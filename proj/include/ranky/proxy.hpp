#pragma once

#include <span>
#include <vector>

#include "ranky/dense_matrix.hpp"
#include "ranky/svd.hpp"

namespace ranky {

// Horizontal concatenation of the per-block U*Sigma factors. block_offsets[i]
// is the first proxy column of block i; a trailing offset marks the end.
struct ProxyMatrix {
  DenseMatrix matrix;
  std::vector<std::size_t> block_offsets;
};

ProxyMatrix build_proxy(std::span<const SvdResult> block_results, std::size_t rows);

// SVD of the proxy; its sigma and U are the singular values and left singular
// vectors reported for the original matrix.
SvdResult proxy_svd(const ProxyMatrix& proxy);

// Centralized right-vector recovery: v_j = A^T u_j / sigma_j for every
// sigma_j > tol * sigma_max; smaller components are omitted.
DenseMatrix recover_right_vectors(const SparseMatrix& a, const DenseMatrix& u,
                                  std::span<const double> sigma, double tol);

}  // namespace ranky
