#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ranky/dense_matrix.hpp"
#include "ranky/metrics.hpp"
#include "ranky/svd.hpp"
#include "test_support.hpp"

using namespace ranky;
using namespace ranky::testing;

TEST_CASE("sigma_error") {
  std::vector<double> a{3.0, 1.0};
  CHECK(sigma_error(a, a) == 0.0);
  std::vector<double> b{2.5, 0.5};
  CHECK(sigma_error(a, b) == 1.0);
  // shorter list is padded with zeros
  std::vector<double> c{3.0};
  CHECK(sigma_error(a, c) == 1.0);
  CHECK(sigma_error(c, a) == 1.0);
  CHECK(sigma_error({}, a) == 4.0);
}

TEST_CASE("align_signs flips negated columns") {
  DenseMatrix u = random_dense(6, 3, 42);
  DenseMatrix negated = u;
  for (double& v : negated.values()) v = -v;
  CHECK(align_signs(negated, u) == u);
  CHECK(align_signs(u, u) == u);

  DenseMatrix one_flip = u;
  for (std::size_t r = 0; r < 6; ++r) one_flip(r, 1) = -one_flip(r, 1);
  CHECK(align_signs(one_flip, u) == u);

  DenseMatrix wrong(5, 3);
  CHECK_THROWS_AS(align_signs(wrong, u), std::invalid_argument);
}

TEST_CASE("align_signs rotates degenerate clusters into place") {
  // orthonormal pair (e1, e2) rotated by 90 degrees inside a degenerate
  // cluster: plain sign flips cannot undo it, Procrustes can
  DenseMatrix u_ref(4, 2);
  u_ref(0, 0) = 1.0;
  u_ref(1, 1) = 1.0;
  DenseMatrix u_hat(4, 2);
  u_hat(1, 0) = 1.0;   // e2
  u_hat(0, 1) = -1.0;  // -e1
  const std::vector<double> sigma{2.0, 2.0};

  DenseMatrix aligned = align_signs(u_hat, u_ref, sigma);
  CHECK(max_abs_diff(aligned, u_ref) <= 1e-8);

  // distinct sigmas: the cluster path must not engage, signs only; both
  // inner products are zero, so the columns stay put
  const std::vector<double> distinct{2.0, 1.0};
  DenseMatrix sign_only = align_signs(u_hat, u_ref, distinct);
  CHECK(sign_only(1, 0) == 1.0);
  CHECK(sign_only(0, 1) == -1.0);
}

TEST_CASE("left_vector_error") {
  DenseMatrix u = random_dense(8, 4, 31);
  std::vector<double> sigma{4.0, 3.0, 2.0, 1.0};
  CHECK(left_vector_error(u, u, sigma) == 0.0);

  DenseMatrix flipped = u;
  for (std::size_t r = 0; r < 8; ++r) flipped(r, 2) = -flipped(r, 2);
  CHECK(left_vector_error(flipped, u, sigma) == 0.0);

  DenseMatrix perturbed = u;
  perturbed(0, 0) += 0.5;
  CHECK(left_vector_error(perturbed, u, sigma) == doctest::Approx(0.5));
}

TEST_CASE("left_vector_error is invariant under sign flips of either side") {
  DenseMatrix u_ref = dense_svd(random_dense(7, 7, 77)).u;
  DenseMatrix u_hat = u_ref;
  u_hat(3, 2) += 1e-3;
  std::vector<double> sigma{7, 6, 5, 4, 3, 2, 1};
  const double base = left_vector_error(u_hat, u_ref, sigma);
  for (std::size_t j : {0ul, 2ul, 5ul}) {
    DenseMatrix hat_flipped = u_hat;
    DenseMatrix ref_flipped = u_ref;
    for (std::size_t r = 0; r < 7; ++r) {
      hat_flipped(r, j) = -hat_flipped(r, j);
      ref_flipped(r, j) = -ref_flipped(r, j);
    }
    CHECK(left_vector_error(hat_flipped, u_ref, sigma) == doctest::Approx(base));
    CHECK(left_vector_error(u_hat, ref_flipped, sigma) == doctest::Approx(base));
  }
}

TEST_CASE("numerical_rank") {
  CHECK(numerical_rank(DenseMatrix::identity(3), 1e-10) == 3);
  CHECK(numerical_rank(DenseMatrix(4, 6), 1e-10) == 0);

  // duplicated row: the failure mode a single-entry neighbor column causes
  DenseMatrix a = random_dense(4, 8, 5);
  for (std::size_t c = 0; c < 8; ++c) a(2, c) = a(1, c);
  CHECK(numerical_rank(a, 1e-10) == 3);

  // rank is invariant under transpose and permutation
  CHECK(numerical_rank(a.transposed(), 1e-10) == 3);
  DenseMatrix permuted(4, 8);
  const std::size_t row_perm[4] = {2, 0, 3, 1};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 8; ++c) permuted(r, c) = a(row_perm[r], (c + 3) % 8);
  CHECK(numerical_rank(permuted, 1e-10) == 3);
}

TEST_CASE("eval rows serialize to the report format") {
  CHECK(eval_csv_header() == "D,M,Ni,method,seed,e_sigma,e_u");
  EvalRow row;
  row.block_count = 2;
  row.rows = 539;
  row.block_width = 85448;
  row.method = RepairMethod::kRandom;
  row.seed = 7;
  row.e_sigma = 2.502443e-13;
  row.e_u = 4.052329e-10;
  const std::string csv = to_csv(row);
  CHECK(csv.substr(0, 21) == "2,539,85448,random,7,");
  CHECK(csv.find("2.502443e-13") != std::string::npos);
  CHECK(csv.find("4.052329e-10") != std::string::npos);
}
