#include "ranky/proxy.hpp"

#include <stdexcept>
#include <string>

namespace ranky {

ProxyMatrix build_proxy(std::span<const SvdResult> block_results, std::size_t rows) {
  std::size_t total_cols = 0;
  for (const SvdResult& r : block_results) {
    if (r.u.rows() != rows) {
      throw std::invalid_argument("build_proxy: block factor has " +
                                  std::to_string(r.u.rows()) + " rows, expected " +
                                  std::to_string(rows));
    }
    if (r.u.cols() != r.sigma.size()) {
      throw std::invalid_argument("build_proxy: U column count does not match sigma");
    }
    total_cols += r.sigma.size();
  }

  ProxyMatrix proxy;
  proxy.matrix = DenseMatrix(rows, total_cols);
  proxy.block_offsets.reserve(block_results.size() + 1);
  std::size_t offset = 0;
  for (const SvdResult& r : block_results) {
    proxy.block_offsets.push_back(offset);
    for (std::size_t j = 0; j < r.sigma.size(); ++j) {
      const double s = r.sigma[j];
      for (std::size_t i = 0; i < rows; ++i) {
        proxy.matrix(i, offset + j) = r.u(i, j) * s;
      }
    }
    offset += r.sigma.size();
  }
  proxy.block_offsets.push_back(offset);
  return proxy;
}

SvdResult proxy_svd(const ProxyMatrix& proxy) {
  if (proxy.block_offsets.empty() ||
      proxy.block_offsets.back() != proxy.matrix.cols()) {
    throw std::invalid_argument("proxy_svd: malformed block offsets");
  }
  return dense_svd(proxy.matrix);
}

DenseMatrix recover_right_vectors(const SparseMatrix& a, const DenseMatrix& u,
                                  std::span<const double> sigma, double tol) {
  if (u.rows() != a.rows() || u.cols() != sigma.size()) {
    throw std::invalid_argument("recover_right_vectors: factor shapes disagree");
  }
  double sigma_max = 0.0;
  for (double s : sigma) sigma_max = std::max(sigma_max, s);

  std::vector<std::size_t> retained;
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    if (sigma[j] > tol * sigma_max && sigma[j] > 0.0) retained.push_back(j);
  }

  DenseMatrix v(a.cols(), retained.size());
  for (const Entry& e : a.entries()) {
    for (std::size_t jj = 0; jj < retained.size(); ++jj) {
      v(e.col, jj) += e.value * u(e.row, retained[jj]);
    }
  }
  for (std::size_t jj = 0; jj < retained.size(); ++jj) {
    const double inv = 1.0 / sigma[retained[jj]];
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, jj) *= inv;
  }
  return v;
}

}  // namespace ranky
