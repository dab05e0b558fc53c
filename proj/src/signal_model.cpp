#include "sparsebound/signal_model.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace sparsebound {

std::vector<std::size_t> draw_support(RngStream& rng, std::size_t n, std::size_t tau) {
  if (tau > n) {
    throw std::invalid_argument("draw_support: tau (" + std::to_string(tau) +
                                ") exceeds n (" + std::to_string(n) + ")");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = 0; i < tau; ++i) {
    const std::size_t k = i + static_cast<std::size_t>(rng.uniform_index(n - i));
    std::swap(perm[i], perm[k]);
  }
  perm.resize(tau);
  return perm;
}

SparseSignal draw_sparse_signal(RngStream& rng, std::size_t n, std::size_t tau, double s_min,
                                double s_max) {
  if (!(s_min > 0.0)) throw std::invalid_argument("draw_sparse_signal: s_min must be positive");
  if (!(s_min <= s_max)) throw std::invalid_argument("draw_sparse_signal: s_min must not exceed s_max");
  SparseSignal s;
  s.s_min = s_min;
  s.s_max = s_max;
  s.values.assign(n, 0.0);
  s.support = draw_support(rng, n, tau);
  for (std::size_t j : s.support) {
    const double magnitude = rng.uniform(s_min, s_max);
    s.values[j] = rng.coin() ? magnitude : -magnitude;
  }
  return s;
}

void draw_noise(RngStream& rng, double sigma, std::vector<double>& out) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("draw_noise: sigma must be nonnegative");
  for (double& v : out) v = rng.normal();
  for (double& v : out) v *= sigma;
}

Measurement synthesize(const Dictionary& d, const SparseSignal& s, double sigma, RngStream& rng) {
  if (s.values.size() != d.cols()) {
    throw std::invalid_argument("synthesize: signal length " + std::to_string(s.values.size()) +
                                " does not match dictionary cols " + std::to_string(d.cols()));
  }
  if (!(sigma >= 0.0)) throw std::invalid_argument("synthesize: sigma must be nonnegative");
  Measurement m;
  m.sigma = sigma;
  m.observed.assign(d.rows(), 0.0);
  m.noise.assign(d.rows(), 0.0);
  d.apply(s.values, m.observed);
  draw_noise(rng, sigma, m.noise);
  for (std::size_t i = 0; i < m.observed.size(); ++i) m.observed[i] += m.noise[i];
  return m;
}

}  // namespace sparsebound
