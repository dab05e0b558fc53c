#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace sparsebound {

/// Column-normalized real M x N measurement dictionary.
///
/// Two kinds exist. IdentityHadamard is [I, H / sqrt(M)] with H the natural
/// order Sylvester-Hadamard matrix; nothing is stored and products with the
/// Hadamard half go through a fast Walsh-Hadamard transform. DenseExplicit
/// holds an arbitrary matrix whose columns are normalized on construction.
///
/// Column indices are zero-based. Instances are immutable and may be shared
/// between threads; copies share the coherence cache.
class Dictionary {
 public:
  enum class Kind { IdentityHadamard, DenseExplicit };

  /// [I_m, H_m / sqrt(m)] with N = 2m. m must be a power of two, m >= 2.
  static Dictionary identity_hadamard(std::size_t m);

  /// `column_major` holds rows * cols entries, column after column. Each column
  /// is scaled to unit norm; a zero column is rejected.
  static Dictionary dense(std::size_t rows, std::size_t cols, std::vector<double> column_major);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Kind kind() const noexcept { return kind_; }

  /// Atom j (zero-based) materialized as a length-M vector.
  std::vector<double> column(std::size_t j) const;
  void column_into(std::size_t j, std::span<double> out) const;

  /// out[j] = <A_j, r> for every atom. `out` must have length N.
  void correlate_all(std::span<const double> r, std::span<double> out) const;
  std::vector<double> correlate_all(std::span<const double> r) const;

  /// out = A x. `x` has length N, `out` length M.
  void apply(std::span<const double> x, std::span<double> out) const;

  /// max_{i != j} |<A_i, A_j>|. Closed form 1/sqrt(M) for IdentityHadamard,
  /// exhaustive pairwise search otherwise. Computed once and cached.
  double mutual_coherence() const;

  /// Exhaustive pairwise coherence, regardless of kind. O(M N^2).
  double mutual_coherence_brute_force() const;

 private:
  Dictionary(Kind kind, std::size_t rows, std::size_t cols, std::vector<double> data);

  struct CoherenceCache;

  Kind kind_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;  // DenseExplicit only, column-major
  double hadamard_scale_ = 0.0;
  std::shared_ptr<CoherenceCache> coherence_;
};

/// Sylvester-Hadamard entry H[row][col] in natural order: (-1)^popcount(row & col).
inline double hadamard_sign(std::size_t row, std::size_t col) {
  return (__builtin_popcountll(static_cast<unsigned long long>(row & col)) & 1) ? -1.0 : 1.0;
}

}  // namespace sparsebound
