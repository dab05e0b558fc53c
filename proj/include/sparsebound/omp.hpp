#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sparsebound/dictionary.hpp"

namespace sparsebound {

struct OmpResult {
  std::vector<std::size_t> support;   // selection order
  std::vector<double> coefficients;   // aligned with `support`
  double residual_norm = 0.0;
  std::size_t iterations = 0;
  /// Residual norm after each iteration (non-increasing).
  std::vector<double> residual_history;
};

enum class LeastSquaresMethod {
  /// Gram-Schmidt QR of the active set, extended by one column per iteration.
  Incremental,
  /// Column-pivoted Householder QR of the whole active set, every iteration.
  Direct,
};

struct OmpOptions {
  LeastSquaresMethod method = LeastSquaresMethod::Incremental;
  /// A new atom whose component orthogonal to the active span is shorter than
  /// this is treated as linearly dependent.
  double rank_tolerance = 1e-12;
};

/// Orthogonal matching pursuit run for exactly `tau` iterations.
///
/// Each iteration selects the not-yet-selected atom maximizing |<A_j, r>|
/// (lowest index on ties), re-solves least squares over all selected atoms and
/// sets r = y - A_S x. Requires 1 <= tau <= min(M, N). Throws
/// SingularSystemError when the active set loses rank.
OmpResult omp(const Dictionary& d, std::span<const double> y, std::size_t tau,
              const OmpOptions& options = {});

/// Least-squares fit of y on the given atoms via column-pivoted QR.
/// Returns coefficients aligned with `support`; `residual_norm` receives
/// ||y - A_S x||_2.
std::vector<double> least_squares(const Dictionary& d, std::span<const std::size_t> support,
                                  std::span<const double> y, double& residual_norm);

/// Brute-force minimizer of ||y - A_S x||_2 over all supports of size `tau`.
/// Ties (within a relative 1e-12 of ||y||) resolve to the lexicographically
/// smallest support. Throws ResourceLimitError when C(N, tau) exceeds
/// `max_supports`.
OmpResult exhaustive_l0(const Dictionary& d, std::span<const double> y, std::size_t tau,
                        std::uint64_t max_supports = 1'000'000);

/// Set equality, order ignored.
bool support_match(std::span<const std::size_t> found, std::span<const std::size_t> truth);

}  // namespace sparsebound
