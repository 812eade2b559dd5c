#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "ranky/dense_matrix.hpp"
#include "ranky/repair.hpp"

namespace ranky {

// Sum of absolute singular-value differences. The shorter list is zero-padded
// so missing components count as full error.
double sigma_error(std::span<const double> sigma_hat, std::span<const double> sigma_ref);

// Resolves the sign/rotation freedom of left singular vectors before an
// elementwise comparison. Columns whose inner product with the reference is
// negative are flipped. When sigma_ref is supplied, columns belonging to a
// degenerate cluster (values equal within 1e-9 of sigma_max) are instead
// aligned as a group by orthogonal Procrustes.
DenseMatrix align_signs(const DenseMatrix& u_hat, const DenseMatrix& u_ref,
                        std::span<const double> sigma_ref = {});

// Sum over all entries of |u_hat - u_ref| after alignment.
double left_vector_error(const DenseMatrix& u_hat, const DenseMatrix& u_ref,
                         std::span<const double> sigma_ref);

// Count of singular values above tol * sigma_max.
std::size_t numerical_rank(const DenseMatrix& a, double tol);

// One row of an evaluation report (one pipeline run vs the dense oracle).
struct EvalRow {
  std::size_t block_count = 0;
  std::size_t rows = 0;
  std::size_t block_width = 0;  // width of the first block
  RepairMethod method = RepairMethod::kNone;
  std::uint64_t seed = 0;
  double e_sigma = 0.0;
  double e_u = 0.0;
};

std::string eval_csv_header();
std::string to_csv(const EvalRow& row);

}  // namespace ranky
