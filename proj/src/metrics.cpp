#include "ranky/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ranky/svd.hpp"

namespace ranky {

namespace {

constexpr double kClusterTol = 1e-9;  // relative to sigma_max

std::string sci_repr(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  return std::string(buf, ptr);
}

DenseMatrix columns_of(const DenseMatrix& a, std::size_t lo, std::size_t hi) {
  DenseMatrix out(a.rows(), hi - lo);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = lo; c < hi; ++c) out(r, c - lo) = a(r, c);
  return out;
}

}  // namespace

double sigma_error(std::span<const double> sigma_hat,
                   std::span<const double> sigma_ref) {
  const std::size_t n = std::max(sigma_hat.size(), sigma_ref.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < sigma_hat.size() ? sigma_hat[i] : 0.0;
    const double b = i < sigma_ref.size() ? sigma_ref[i] : 0.0;
    sum += std::abs(a - b);
  }
  return sum;
}

DenseMatrix align_signs(const DenseMatrix& u_hat, const DenseMatrix& u_ref,
                        std::span<const double> sigma_ref) {
  if (u_hat.rows() != u_ref.rows() || u_hat.cols() != u_ref.cols()) {
    throw std::invalid_argument("align_signs: shape mismatch");
  }
  if (!sigma_ref.empty() && sigma_ref.size() != u_hat.cols()) {
    throw std::invalid_argument("align_signs: sigma length mismatch");
  }
  DenseMatrix out = u_hat;
  const std::size_t m = u_hat.rows(), n = u_hat.cols();

  auto flip_if_negative = [&](std::size_t j) {
    double inner = 0.0;
    for (std::size_t i = 0; i < m; ++i) inner += out(i, j) * u_ref(i, j);
    if (inner < 0.0) {
      for (std::size_t i = 0; i < m; ++i) out(i, j) = -out(i, j);
    }
  };

  if (sigma_ref.empty()) {
    for (std::size_t j = 0; j < n; ++j) flip_if_negative(j);
    return out;
  }

  double sigma_max = 0.0;
  for (double s : sigma_ref) sigma_max = std::max(sigma_max, s);
  const double gap_tol = kClusterTol * sigma_max;

  std::size_t lo = 0;
  while (lo < n) {
    std::size_t hi = lo + 1;
    while (hi < n && std::abs(sigma_ref[hi - 1] - sigma_ref[hi]) <= gap_tol) ++hi;
    if (hi - lo == 1) {
      flip_if_negative(lo);
    } else {
      // degenerate cluster: best orthogonal alignment (Procrustes) of the
      // cluster block onto the reference block
      DenseMatrix hat = columns_of(out, lo, hi);
      DenseMatrix ref = columns_of(u_ref, lo, hi);
      DenseMatrix cross = multiply(hat.transposed(), ref);
      SvdResult svd = dense_svd(cross);
      DenseMatrix w = multiply(svd.u, svd.v->transposed());
      DenseMatrix aligned = multiply(hat, w);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = lo; c < hi; ++c) out(r, c) = aligned(r, c - lo);
    }
    lo = hi;
  }
  return out;
}

double left_vector_error(const DenseMatrix& u_hat, const DenseMatrix& u_ref,
                         std::span<const double> sigma_ref) {
  const DenseMatrix aligned = align_signs(u_hat, u_ref, sigma_ref);
  double sum = 0.0;
  for (std::size_t r = 0; r < u_ref.rows(); ++r)
    for (std::size_t c = 0; c < u_ref.cols(); ++c)
      sum += std::abs(aligned(r, c) - u_ref(r, c));
  return sum;
}

std::size_t numerical_rank(const DenseMatrix& a, double tol) {
  const SvdResult svd = dense_svd(a);
  if (svd.sigma.empty()) return 0;
  const double threshold = tol * svd.sigma.front();
  std::size_t rank = 0;
  for (double s : svd.sigma) {
    if (s > threshold && s > 0.0) ++rank;
  }
  return rank;
}

std::string eval_csv_header() { return "D,M,Ni,method,seed,e_sigma,e_u"; }

std::string to_csv(const EvalRow& row) {
  std::string out;
  out += std::to_string(row.block_count);
  out += ',';
  out += std::to_string(row.rows);
  out += ',';
  out += std::to_string(row.block_width);
  out += ',';
  out += to_string(row.method);
  out += ',';
  out += std::to_string(row.seed);
  out += ',';
  out += sci_repr(row.e_sigma);
  out += ',';
  out += sci_repr(row.e_u);
  return out;
}

}  // namespace ranky
