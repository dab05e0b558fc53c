#include "sparsebound/dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "sparsebound/kernels.hpp"

namespace sparsebound {

struct Dictionary::CoherenceCache {
  std::once_flag once;
  double value = 0.0;
};

Dictionary::Dictionary(Kind kind, std::size_t rows, std::size_t cols, std::vector<double> data)
    : kind_(kind),
      rows_(rows),
      cols_(cols),
      data_(std::move(data)),
      coherence_(std::make_shared<CoherenceCache>()) {}

Dictionary Dictionary::identity_hadamard(std::size_t m) {
  if (m < 2 || !kernels::is_power_of_two(m)) {
    throw std::invalid_argument("identity_hadamard: m must be a power of two and at least 2 (got " +
                                std::to_string(m) + ")");
  }
  Dictionary d(Kind::IdentityHadamard, m, 2 * m, {});
  d.hadamard_scale_ = 1.0 / std::sqrt(static_cast<double>(m));
  return d;
}

Dictionary Dictionary::dense(std::size_t rows, std::size_t cols, std::vector<double> column_major) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("dense: dimensions must be positive");
  if (column_major.size() != rows * cols) {
    throw std::invalid_argument("dense: expected " + std::to_string(rows * cols) +
                                " entries, got " + std::to_string(column_major.size()));
  }
  for (std::size_t j = 0; j < cols; ++j) {
    std::span<double> col(column_major.data() + j * rows, rows);
    double norm = 0.0;
    for (double v : col) norm += v * v;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw std::invalid_argument("dense: column " + std::to_string(j) + " is zero or not finite");
    }
    for (double& v : col) v /= norm;
  }
  return Dictionary(Kind::DenseExplicit, rows, cols, std::move(column_major));
}

std::vector<double> Dictionary::column(std::size_t j) const {
  std::vector<double> out(rows_);
  column_into(j, out);
  return out;
}

void Dictionary::column_into(std::size_t j, std::span<double> out) const {
  if (j >= cols_) {
    throw std::invalid_argument("column: index " + std::to_string(j) + " out of range [0, " +
                                std::to_string(cols_) + ")");
  }
  if (out.size() != rows_) throw std::invalid_argument("column: output length must equal rows");
  if (kind_ == Kind::DenseExplicit) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(j * rows_), rows_, out.begin());
    return;
  }
  if (j < rows_) {
    std::fill(out.begin(), out.end(), 0.0);
    out[j] = 1.0;
    return;
  }
  const std::size_t k = j - rows_;
  for (std::size_t i = 0; i < rows_; ++i) out[i] = hadamard_sign(i, k) * hadamard_scale_;
}

void Dictionary::correlate_all(std::span<const double> r, std::span<double> out) const {
  if (r.size() != rows_) {
    throw std::invalid_argument("correlate_all: residual length " + std::to_string(r.size()) +
                                " does not match rows " + std::to_string(rows_));
  }
  if (out.size() != cols_) throw std::invalid_argument("correlate_all: output length must equal cols");
  const auto& k = kernels::active_table();
  if (kind_ == Kind::DenseExplicit) {
    for (std::size_t j = 0; j < cols_; ++j) out[j] = k.dot(data_.data() + j * rows_, r.data(), rows_);
    return;
  }
  // H is symmetric, so H^T r is the same transform.
  std::copy(r.begin(), r.end(), out.begin());
  std::copy(r.begin(), r.end(), out.begin() + static_cast<std::ptrdiff_t>(rows_));
  double* hadamard_half = out.data() + rows_;
  k.fwht(hadamard_half, rows_);
  k.scale(hadamard_scale_, hadamard_half, rows_);
}

std::vector<double> Dictionary::correlate_all(std::span<const double> r) const {
  std::vector<double> out(cols_);
  correlate_all(r, out);
  return out;
}

void Dictionary::apply(std::span<const double> x, std::span<double> out) const {
  if (x.size() != cols_) throw std::invalid_argument("apply: input length must equal cols");
  if (out.size() != rows_) throw std::invalid_argument("apply: output length must equal rows");
  const auto& k = kernels::active_table();
  if (kind_ == Kind::DenseExplicit) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (x[j] != 0.0) k.axpy(x[j], data_.data() + j * rows_, out.data(), rows_);
    }
    return;
  }
  std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(rows_), rows_, out.begin());
  k.fwht(out.data(), rows_);
  k.scale(hadamard_scale_, out.data(), rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] += x[i];
}

double Dictionary::mutual_coherence() const {
  if (cols_ < 2) throw std::invalid_argument("mutual_coherence: need at least two atoms");
  std::call_once(coherence_->once, [this] {
    coherence_->value = kind_ == Kind::IdentityHadamard ? hadamard_scale_ : mutual_coherence_brute_force();
  });
  return coherence_->value;
}

double Dictionary::mutual_coherence_brute_force() const {
  if (cols_ < 2) throw std::invalid_argument("mutual_coherence: need at least two atoms");
  std::vector<double> all(rows_ * cols_);
  for (std::size_t j = 0; j < cols_; ++j) column_into(j, std::span<double>(all.data() + j * rows_, rows_));
  double best = 0.0;
  for (std::size_t i = 0; i < cols_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      const double c = std::fabs(kernels::scalar::dot(all.data() + i * rows_, all.data() + j * rows_, rows_));
      best = std::max(best, c);
    }
  }
  return std::min(best, 1.0);
}

}  // namespace sparsebound
