#include "sparsebound/omp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sparsebound/errors.hpp"
#include "sparsebound/kernels.hpp"

namespace sparsebound {

namespace {

Eigen::MatrixXd gather_columns(const Dictionary& d, std::span<const std::size_t> support) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(d.rows()), static_cast<Eigen::Index>(support.size()));
  for (std::size_t k = 0; k < support.size(); ++k) {
    d.column_into(support[k], std::span<double>(a.col(static_cast<Eigen::Index>(k)).data(), d.rows()));
  }
  return a;
}

// Greedy selection over correlations; already-selected atoms are excluded.
std::size_t select_atom(std::vector<double>& corr, const std::vector<char>& selected) {
  for (std::size_t j = 0; j < corr.size(); ++j) {
    if (selected[j]) corr[j] = 0.0;
  }
  const std::size_t best = kernels::argmax_abs(corr);
  if (!selected[best]) return best;
  // Every remaining correlation is zero: lowest unselected index wins.
  for (std::size_t j = 0; j < selected.size(); ++j) {
    if (!selected[j]) return j;
  }
  return best;
}

// Active-set QR, A_S = Q R, grown one column at a time with classical
// Gram-Schmidt and one reorthogonalization pass.
class IncrementalQr {
 public:
  IncrementalQr(std::size_t rows, std::size_t capacity) : rows_(rows), capacity_(capacity) {
    q_.reserve(rows * capacity);
    r_.assign(capacity * capacity, 0.0);
  }

  std::size_t size() const { return size_; }

  // Returns false if `atom` is numerically in the span of the current columns.
  bool append(std::vector<double> atom, double tolerance) {
    const auto& k = kernels::active_table();
    const std::size_t n = size_;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < n; ++i) {
        const double proj = k.dot(q_col(i), atom.data(), rows_);
        r_at(i, n) += proj;
        k.axpy(-proj, q_col(i), atom.data(), rows_);
      }
    }
    const double norm = std::sqrt(k.dot(atom.data(), atom.data(), rows_));
    if (!(norm >= tolerance)) return false;
    k.scale(1.0 / norm, atom.data(), rows_);
    r_at(n, n) = norm;
    q_.insert(q_.end(), atom.begin(), atom.end());
    ++size_;
    return true;
  }

  const double* q_col(std::size_t i) const { return q_.data() + i * rows_; }

  // Solves R x = rhs by back substitution.
  std::vector<double> back_substitute(const std::vector<double>& rhs) const {
    std::vector<double> x(size_);
    for (std::size_t ii = size_; ii-- > 0;) {
      double acc = rhs[ii];
      for (std::size_t j = ii + 1; j < size_; ++j) acc -= r_at(ii, j) * x[j];
      x[ii] = acc / r_at(ii, ii);
    }
    return x;
  }

 private:
  double& r_at(std::size_t i, std::size_t j) { return r_[j * capacity_ + i]; }
  double r_at(std::size_t i, std::size_t j) const { return r_[j * capacity_ + i]; }

  std::size_t rows_;
  std::size_t capacity_;
  std::size_t size_ = 0;
  std::vector<double> q_;
  std::vector<double> r_;
};

double norm2(std::span<const double> v) { return std::sqrt(kernels::dot(v, v)); }

}  // namespace

std::vector<double> least_squares(const Dictionary& d, std::span<const std::size_t> support,
                                  std::span<const double> y, double& residual_norm) {
  if (y.size() != d.rows()) throw std::invalid_argument("least_squares: y length must equal rows");
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
  if (support.empty()) {
    residual_norm = yv.norm();
    return {};
  }
  const Eigen::MatrixXd a = gather_columns(d, support);
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::VectorXd x = qr.solve(yv);
  residual_norm = (yv - a * x).norm();
  return std::vector<double>(x.data(), x.data() + x.size());
}

OmpResult omp(const Dictionary& d, std::span<const double> y, std::size_t tau,
              const OmpOptions& options) {
  const std::size_t m = d.rows();
  const std::size_t n = d.cols();
  if (tau < 1 || tau > std::min(m, n)) {
    throw std::invalid_argument("omp: tau must be in [1, min(M, N)] = [1, " +
                                std::to_string(std::min(m, n)) + "], got " + std::to_string(tau));
  }
  if (y.size() != m) {
    throw std::invalid_argument("omp: y has length " + std::to_string(y.size()) + ", expected " +
                                std::to_string(m));
  }

  OmpResult result;
  result.support.reserve(tau);
  result.residual_history.reserve(tau);
  std::vector<double> residual(y.begin(), y.end());
  std::vector<double> corr(n);
  std::vector<char> selected(n, 0);

  if (options.method == LeastSquaresMethod::Incremental) {
    IncrementalQr qr(m, tau);
    std::vector<double> qty;  // Q^T y
    qty.reserve(tau);
    for (std::size_t it = 0; it < tau; ++it) {
      d.correlate_all(residual, corr);
      const std::size_t j = select_atom(corr, selected);
      if (!qr.append(d.column(j), options.rank_tolerance)) {
        throw SingularSystemError(it, "omp: atom " + std::to_string(j) + " selected at iteration " +
                                          std::to_string(it) + " is linearly dependent on the active set");
      }
      selected[j] = 1;
      result.support.push_back(j);
      // r is orthogonal to the earlier Q columns, so <q, r> = <q, y>.
      const double* q = qr.q_col(it);
      const double z = kernels::active_table().dot(q, residual.data(), m);
      qty.push_back(z);
      kernels::active_table().axpy(-z, q, residual.data(), m);
      result.residual_history.push_back(norm2(residual));
    }
    result.coefficients = qr.back_substitute(qty);
  } else {
    for (std::size_t it = 0; it < tau; ++it) {
      d.correlate_all(residual, corr);
      const std::size_t j = select_atom(corr, selected);
      selected[j] = 1;
      result.support.push_back(j);
      const Eigen::MatrixXd a = gather_columns(d, result.support);
      const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
      // Same criterion as the incremental path: |R_kk| bounds the component of
      // the weakest column orthogonal to the others.
      const double min_pivot = qr.matrixR().diagonal().cwiseAbs().minCoeff();
      if (!(min_pivot >= options.rank_tolerance)) {
        throw SingularSystemError(it, "omp: active set lost rank at iteration " + std::to_string(it));
      }
      const Eigen::VectorXd x = qr.solve(Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(m)));
      Eigen::Map<Eigen::VectorXd> r(residual.data(), static_cast<Eigen::Index>(m));
      r = Eigen::Map<const Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(m)) - a * x;
      result.coefficients.assign(x.data(), x.data() + x.size());
      result.residual_history.push_back(norm2(residual));
    }
  }
  result.iterations = tau;
  result.residual_norm = result.residual_history.back();
  return result;
}

OmpResult exhaustive_l0(const Dictionary& d, std::span<const double> y, std::size_t tau,
                        std::uint64_t max_supports) {
  const std::size_t n = d.cols();
  if (tau < 1 || tau > d.rows() || tau > n) {
    throw std::invalid_argument("exhaustive_l0: tau must be in [1, min(M, N)]");
  }
  if (y.size() != d.rows()) throw std::invalid_argument("exhaustive_l0: y length must equal rows");

  // C(n, tau) with early exit once the budget is exceeded.
  std::uint64_t count = 1;
  for (std::size_t i = 1; i <= tau; ++i) {
    count = count * (n - tau + i) / i;
    if (count > max_supports) {
      throw ResourceLimitError("exhaustive_l0: C(" + std::to_string(n) + ", " + std::to_string(tau) +
                               ") exceeds the limit of " + std::to_string(max_supports) + " supports");
    }
  }

  const double tie_tol = 1e-12 * std::max(1.0, norm2(y));
  std::vector<std::size_t> combo(tau);
  for (std::size_t i = 0; i < tau; ++i) combo[i] = i;

  OmpResult best;
  best.residual_norm = std::numeric_limits<double>::infinity();
  while (true) {
    double res = 0.0;
    std::vector<double> coef = least_squares(d, combo, y, res);
    if (res < best.residual_norm - tie_tol) {
      best.support = combo;
      best.coefficients = std::move(coef);
      best.residual_norm = res;
    }
    // Next combination in lexicographic order.
    std::size_t i = tau;
    while (i > 0 && combo[i - 1] == n - tau + i - 1) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t k = i; k < tau; ++k) combo[k] = combo[k - 1] + 1;
  }
  best.iterations = tau;
  best.residual_history = {best.residual_norm};
  return best;
}

bool support_match(std::span<const std::size_t> found, std::span<const std::size_t> truth) {
  std::vector<std::size_t> a(found.begin(), found.end());
  std::vector<std::size_t> b(truth.begin(), truth.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace sparsebound
