#include "ranky/svd.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ranky/errors.hpp"

namespace ranky {

namespace {

constexpr double kJacobiTol = 1e-14;
constexpr int kMaxSweeps = 60;

// Column-major working storage; one-sided Jacobi rotates whole columns.
struct ColMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  ColMat() = default;
  ColMat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double* col(std::size_t j) { return data.data() + j * rows; }
  const double* col(std::size_t j) const { return data.data() + j * rows; }

  static ColMat identity(std::size_t n) {
    ColMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data[i * n + i] = 1.0;
    return m;
  }
};

ColMat colmat_of(const DenseMatrix& a, bool transpose) {
  ColMat out(transpose ? a.cols() : a.rows(), transpose ? a.rows() : a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (transpose)
        out.col(r)[c] = a(r, c);
      else
        out.col(c)[r] = a(r, c);
    }
  return out;
}

DenseMatrix dense_of_colmat(const ColMat& a) {
  DenseMatrix out(a.rows, a.cols);
  for (std::size_t c = 0; c < a.cols; ++c) {
    const double* column = a.col(c);
    for (std::size_t r = 0; r < a.rows; ++r) out(r, c) = column[r];
  }
  return out;
}

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double norm_sq(const double* x, std::size_t n) { return dot(x, x, n); }

struct QrFactors {
  // reflector k acts on rows k..m-1: H = I - beta * v * v^T
  std::vector<std::vector<double>> vs;
  std::vector<double> betas;
  std::size_t rows = 0;
};

// In-place Householder QR of tall a (rows >= cols); on return the upper
// triangle of a holds R.
QrFactors householder_qr(ColMat& a) {
  const std::size_t m = a.rows, n = a.cols;
  QrFactors qr;
  qr.rows = m;
  qr.vs.resize(n);
  qr.betas.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double* ak = a.col(k);
    const std::size_t len = m - k;
    const double norm = std::sqrt(norm_sq(ak + k, len));
    std::vector<double>& v = qr.vs[k];
    v.assign(len, 0.0);
    if (norm == 0.0) continue;  // column already zero below the diagonal
    const double alpha = ak[k] >= 0.0 ? -norm : norm;
    for (std::size_t i = 0; i < len; ++i) v[i] = ak[k + i];
    v[0] -= alpha;
    const double vsq = norm_sq(v.data(), len);
    if (vsq == 0.0) continue;  // x was already alpha * e1
    const double beta = 2.0 / vsq;
    qr.betas[k] = beta;
    ak[k] = alpha;
    for (std::size_t i = 1; i < len; ++i) ak[k + i] = 0.0;
    for (std::size_t j = k + 1; j < n; ++j) {
      double* aj = a.col(j);
      const double w = dot(v.data(), aj + k, len);
      const double bw = beta * w;
      for (std::size_t i = 0; i < len; ++i) aj[k + i] -= bw * v[i];
    }
  }
  return qr;
}

// Q * x for the thin Q implied by the reflectors: pad x (n-vector columns)
// with zeros to m rows, then apply H_{n-1} ... H_0.
ColMat apply_q(const QrFactors& qr, const ColMat& x) {
  const std::size_t m = qr.rows, n = qr.vs.size();
  ColMat out(m, x.cols);
  for (std::size_t j = 0; j < x.cols; ++j) {
    double* oj = out.col(j);
    const double* xj = x.col(j);
    for (std::size_t i = 0; i < x.rows; ++i) oj[i] = xj[i];
  }
  for (std::size_t j = 0; j < out.cols; ++j) {
    double* oj = out.col(j);
    for (std::size_t kk = n; kk-- > 0;) {
      const double beta = qr.betas[kk];
      if (beta == 0.0) continue;
      const std::vector<double>& v = qr.vs[kk];
      const std::size_t len = m - kk;
      const double w = dot(v.data(), oj + kk, len);
      const double bw = beta * w;
      for (std::size_t i = 0; i < len; ++i) oj[kk + i] -= bw * v[i];
    }
  }
  return out;
}

ColMat extract_r(const ColMat& a) {
  const std::size_t n = a.cols;
  ColMat r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double* aj = a.col(j);
    double* rj = r.col(j);
    for (std::size_t i = 0; i <= j; ++i) rj[i] = aj[i];
  }
  return r;
}

// Fill columns marked deficient with an orthonormal completion built from
// canonical basis vectors. For every column the first candidate whose
// Gram-Schmidt residual is comfortably large wins; when none stands out, the
// largest residual does (it is at least sqrt((m - placed) / m), so progress
// is guaranteed). Deterministic either way.
void complete_columns(ColMat& u, const std::vector<bool>& deficient) {
  const std::size_t m = u.rows, n = u.cols;
  std::vector<double> w(m, 0.0);
  std::vector<double> best(m, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (!deficient[j]) continue;
    auto orthogonalize = [&](std::size_t cand) {
      std::fill(w.begin(), w.end(), 0.0);
      w[cand] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t c = 0; c < n; ++c) {
          if (deficient[c] && c >= j) continue;  // only columns already placed
          const double proj = dot(u.col(c), w.data(), m);
          const double* uc = u.col(c);
          for (std::size_t i = 0; i < m; ++i) w[i] -= proj * uc[i];
        }
      }
      return std::sqrt(norm_sq(w.data(), m));
    };

    double best_norm = -1.0;
    for (std::size_t cand = 0; cand < m; ++cand) {
      const double wn = orthogonalize(cand);
      if (wn > 0.5) {
        best_norm = wn;
        best = w;
        break;
      }
      if (wn > best_norm) {
        best_norm = wn;
        best = w;
      }
    }
    if (!(best_norm > 0.0)) {
      throw ConvergenceError("orthonormal completion has no independent direction",
                             best_norm);
    }
    double* uj = u.col(j);
    for (std::size_t i = 0; i < m; ++i) uj[i] = best[i] / best_norm;
    if (best_norm <= 0.5) {
      // touch up a marginal pick with one more sweep against placed columns
      for (std::size_t c = 0; c < n; ++c) {
        if (deficient[c] && c >= j) continue;
        const double proj = dot(u.col(c), uj, m);
        const double* uc = u.col(c);
        for (std::size_t i = 0; i < m; ++i) uj[i] -= proj * uc[i];
      }
      const double wn = std::sqrt(norm_sq(uj, m));
      for (std::size_t i = 0; i < m; ++i) uj[i] /= wn;
    }
  }
}

struct JacobiOut {
  ColMat u;  // empty unless build_u
  std::vector<double> sigma;
  ColMat v;
};

// One-sided Jacobi on the columns of b (rows >= cols). Cyclic sweeps; a pair
// is rotated when |<b_p, b_q>| exceeds kJacobiTol * ||b_p|| * ||b_q||.
// Columns whose norm falls below kJacobiTol times the largest column norm are
// frozen: they are numerically zero and rotating them against rounding noise
// would cycle forever. Converged when a full sweep applies no rotation.
JacobiOut jacobi_svd(ColMat b, bool build_u) {
  const std::size_t m = b.rows, n = b.cols;
  ColMat v = ColMat::identity(n);
  std::vector<double> alpha(n, 0.0);

  double last_max_ratio = 0.0;
  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    double alpha_max = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      alpha[j] = norm_sq(b.col(j), m);
      alpha_max = std::max(alpha_max, alpha[j]);
    }
    const double freeze = kJacobiTol * kJacobiTol * alpha_max;
    std::size_t rotations = 0;
    double max_ratio = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (alpha[p] <= freeze || alpha[q] <= freeze) continue;
        const double gamma = dot(b.col(p), b.col(q), m);
        const double ratio = std::abs(gamma) / std::sqrt(alpha[p] * alpha[q]);
        max_ratio = std::max(max_ratio, ratio);
        if (ratio <= kJacobiTol) continue;

        const double zeta = (alpha[q] - alpha[p]) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        double* bp = b.col(p);
        double* bq = b.col(q);
        for (std::size_t i = 0; i < m; ++i) {
          const double xp = bp[i], xq = bq[i];
          bp[i] = c * xp - s * xq;
          bq[i] = s * xp + c * xq;
        }
        double* vp = v.col(p);
        double* vq = v.col(q);
        for (std::size_t i = 0; i < n; ++i) {
          const double xp = vp[i], xq = vq[i];
          vp[i] = c * xp - s * xq;
          vq[i] = s * xp + c * xq;
        }
        const double ap = alpha[p], aq = alpha[q];
        alpha[p] = std::max(0.0, c * c * ap - 2.0 * c * s * gamma + s * s * aq);
        alpha[q] = std::max(0.0, s * s * ap + 2.0 * c * s * gamma + c * c * aq);
        ++rotations;
      }
    }
    last_max_ratio = max_ratio;
    if (rotations == 0) converged = true;
  }
  if (!converged) {
    throw ConvergenceError("one-sided Jacobi did not converge", last_max_ratio);
  }

  std::vector<double> sigma(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(norm_sq(b.col(j), m));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t c) { return sigma[a] > sigma[c]; });

  JacobiOut out;
  out.sigma.resize(n);
  out.v = ColMat(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.sigma[j] = sigma[order[j]];
    const double* src = v.col(order[j]);
    std::copy(src, src + n, out.v.col(j));
  }

  if (build_u) {
    const double sigma_max = out.sigma.empty() ? 0.0 : out.sigma.front();
    const double threshold = kRankTol * sigma_max;
    out.u = ColMat(m, n);
    std::vector<bool> deficient(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      const double s = out.sigma[j];
      if (s > threshold && s > 0.0) {
        const double* src = b.col(order[j]);
        double* dst = out.u.col(j);
        for (std::size_t i = 0; i < m; ++i) dst[i] = src[i] / s;
      } else {
        deficient[j] = true;
      }
    }
    complete_columns(out.u, deficient);
  }
  return out;
}

struct TallSvd {
  ColMat u;  // rows x cols, only when wanted
  std::vector<double> sigma;
  ColMat v;  // cols x cols
};

// SVD of tall b (rows >= cols). Taller-than-square inputs go through a QR
// factorization first so the Jacobi stage works on a small square matrix.
TallSvd svd_tall(ColMat b, bool want_u) {
  TallSvd out;
  if (b.rows > b.cols) {
    QrFactors qr = householder_qr(b);
    ColMat r = extract_r(b);
    JacobiOut j = jacobi_svd(std::move(r), want_u);
    out.sigma = std::move(j.sigma);
    out.v = std::move(j.v);
    if (want_u) out.u = apply_q(qr, j.u);
  } else {
    JacobiOut j = jacobi_svd(std::move(b), want_u);
    out.sigma = std::move(j.sigma);
    out.v = std::move(j.v);
    if (want_u) out.u = std::move(j.u);
  }
  return out;
}

// Deterministic sign fix: the largest-magnitude entry of every U column is
// made nonnegative; the paired V column flips with it.
void apply_sign_convention(DenseMatrix& u, DenseMatrix* v) {
  for (std::size_t j = 0; j < u.cols(); ++j) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < u.rows(); ++i) {
      const double mag = std::abs(u(i, j));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (u(arg, j) < 0.0) {
      for (std::size_t i = 0; i < u.rows(); ++i) u(i, j) = -u(i, j);
      if (v) {
        for (std::size_t i = 0; i < v->rows(); ++i) (*v)(i, j) = -(*v)(i, j);
      }
    }
  }
}

DenseMatrix leading_columns(const DenseMatrix& a, std::size_t k) {
  DenseMatrix out(a.rows(), k);
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < k; ++c) out(r, c) = a(r, c);
  return out;
}

}  // namespace

SvdResult dense_svd(const DenseMatrix& a) {
  if (!a.all_finite()) {
    throw std::invalid_argument("dense_svd: input has non-finite values");
  }
  const std::size_t k = std::min(a.rows(), a.cols());
  if (k == 0) {
    return {DenseMatrix(a.rows(), 0), {}, DenseMatrix(a.cols(), 0)};
  }
  const bool transposed = a.rows() < a.cols();
  TallSvd t = svd_tall(colmat_of(a, transposed), /*want_u=*/true);
  DenseMatrix u = dense_of_colmat(transposed ? t.v : t.u);
  DenseMatrix v = dense_of_colmat(transposed ? t.u : t.v);
  apply_sign_convention(u, &v);
  return {std::move(u), std::move(t.sigma), std::move(v)};
}

SvdResult block_svd(const SparseMatrix& block, std::size_t keep) {
  if (keep == 0) throw std::invalid_argument("block_svd: keep must be >= 1");
  const DenseMatrix dense = dense_of(block);
  if (!dense.all_finite()) {
    throw std::invalid_argument("block_svd: block has non-finite values");
  }
  const std::size_t k_full = std::min(dense.rows(), dense.cols());
  if (k_full == 0) {
    return {DenseMatrix(dense.rows(), 0), {}, std::nullopt};
  }
  const std::size_t k = std::min(keep, k_full);
  // short-and-fat blocks: the left vectors are the V factor of the transposed
  // problem, so the tall Q never has to be assembled
  const bool transposed = dense.rows() < dense.cols();
  TallSvd t = svd_tall(colmat_of(dense, transposed), /*want_u=*/!transposed);
  DenseMatrix u = dense_of_colmat(transposed ? t.v : t.u);
  apply_sign_convention(u, nullptr);
  t.sigma.resize(k);
  return {leading_columns(u, k), std::move(t.sigma), std::nullopt};
}

}  // namespace ranky
