#pragma once

#include <cstddef>
#include <vector>

#include "sparsebound/dictionary.hpp"
#include "sparsebound/rng.hpp"

namespace sparsebound {

/// Length-N sparse vector with explicit support. Nonzero magnitudes lie in
/// [s_min, s_max]; every entry outside `support` is zero.
struct SparseSignal {
  std::vector<double> values;
  std::vector<std::size_t> support;  // draw order, zero-based
  double s_min = 0.0;
  double s_max = 0.0;
};

/// y = A s + w, with the noise kept for diagnostics.
struct Measurement {
  std::vector<double> observed;
  std::vector<double> noise;
  double sigma = 0.0;
};

/// First tau entries of a uniform random permutation of {0, ..., n-1}
/// (partial Fisher-Yates), so every tau-subset is equally likely.
std::vector<std::size_t> draw_support(RngStream& rng, std::size_t n, std::size_t tau);

/// Support from draw_support, magnitudes i.i.d. uniform on [s_min, s_max],
/// independent fair signs.
SparseSignal draw_sparse_signal(RngStream& rng, std::size_t n, std::size_t tau, double s_min,
                                double s_max);

/// Fills `out` with i.i.d. N(0, sigma^2) entries: unit-variance draws scaled by
/// sigma afterwards, so the result for sigma = c is c times the sigma = 1 draw.
void draw_noise(RngStream& rng, double sigma, std::vector<double>& out);

/// observed = A s + noise with noise ~ N(0, sigma^2 I). Consumes M normals
/// from `rng` even when sigma == 0.
Measurement synthesize(const Dictionary& d, const SparseSignal& s, double sigma, RngStream& rng);

}  // namespace sparsebound
