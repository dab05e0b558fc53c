#include "sparsebound/guarantees.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "sparsebound/kernels.hpp"
#include "sparsebound/signal_model.hpp"

namespace sparsebound {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kBetaBlock = 256;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// 1 - exp(log_x), accurate when exp(log_x) is close to 1.
double one_minus_exp(double log_x) { return -std::expm1(log_x); }

// log(2) - num / den, where den == 0 means an infinitely concentrated sum.
double log_two_exp_ratio(double log_prefactor, double num, double den) {
  if (den > 0.0) return log_prefactor - num / den;
  return num > 0.0 ? -std::numeric_limits<double>::infinity() : log_prefactor;
}

}  // namespace

void validate(const GuaranteeInputs& g) {
  if (g.n < 2) throw std::invalid_argument("guarantee inputs: N must be at least 2");
  if (g.tau < 1) throw std::invalid_argument("guarantee inputs: tau must be at least 1");
  if (!(g.mu_max >= 0.0 && g.mu_max <= 1.0)) {
    throw std::invalid_argument("guarantee inputs: mu_max must lie in [0, 1]");
  }
  if (!(g.s_min > 0.0)) throw std::invalid_argument("guarantee inputs: s_min must be positive");
  if (!(g.s_min <= g.s_max)) throw std::invalid_argument("guarantee inputs: s_min must not exceed s_max");
  if (!(g.sigma >= 0.0)) throw std::invalid_argument("guarantee inputs: sigma must be nonnegative");
  if (!(g.beta >= 0.0)) throw std::invalid_argument("guarantee inputs: beta must be nonnegative");
}

TailConstants interference_constants(const GuaranteeInputs& g) {
  const double n = static_cast<double>(g.n);
  const double tau = static_cast<double>(g.tau);
  return {tau / n * g.s_max * g.s_max * g.mu_max * g.mu_max, g.mu_max * g.s_max};
}

double bernstein_tail_unclamped(double delta, std::size_t n_terms, double nu, double c) {
  if (!(delta > 0.0)) throw std::invalid_argument("bernstein_tail: delta must be positive");
  if (!(nu >= 0.0) || !(c >= 0.0)) throw std::invalid_argument("bernstein_tail: nu and c must be nonnegative");
  const double den = 2.0 * (static_cast<double>(n_terms) * nu + c * delta / 3.0);
  if (!(den > 0.0)) throw std::invalid_argument("bernstein_tail: nu and c must not both vanish");
  return std::exp(std::numbers::ln2 - delta * delta / den);
}

double bernstein_tail(double delta, std::size_t n_terms, double nu, double c) {
  return std::min(1.0, bernstein_tail_unclamped(delta, n_terms, nu, c));
}

double correlation_tail_bound(double xi, double beta, std::size_t n_terms, double nu, double c) {
  if (!(beta >= 0.0)) throw std::invalid_argument("correlation_tail_bound: beta must be nonnegative");
  if (!(xi >= beta)) throw std::invalid_argument("correlation_tail_bound: requires xi >= beta");
  if (xi == beta) return 1.0;
  return bernstein_tail(xi - beta, n_terms, nu, c);
}

bool classic_condition(const GuaranteeInputs& g) {
  const double spread = 2.0 * static_cast<double>(g.tau) - 1.0;
  return g.s_min * (1.0 - spread * g.mu_max) >= 2.0 * g.beta;
}

double classic_probability(const GuaranteeInputs& g, double alpha) {
  validate(g);
  if (!(alpha > 0.0)) throw std::invalid_argument("classic_probability: alpha must be positive");
  if (!classic_condition(g)) return 0.0;
  const double log_n = std::log(static_cast<double>(g.n));
  if (std::isinf(alpha)) return 1.0;
  const double log_fail = -alpha * log_n - 0.5 * std::log(std::numbers::pi * (1.0 + alpha) * log_n);
  return std::max(0.0, one_minus_exp(log_fail));
}

BoundBreakdown probabilistic_bound(const GuaranteeInputs& g, const BoundOptions& options) {
  validate(g);
  if (g.sigma > 0.0 && g.beta == 0.0) {
    throw std::invalid_argument("probabilistic_bound: beta must be positive when sigma > 0");
  }
  const double n = static_cast<double>(g.n);
  const double tau = static_cast<double>(g.tau);
  const TailConstants tc = interference_constants(g);

  BoundBreakdown b;
  b.gamma = g.mu_max * g.s_max;
  b.nu = tc.nu;
  b.c = tc.c;
  b.rho = g.s_min / 2.0 - g.beta;
  b.condition_ok = g.s_min / 2.0 >= g.beta;

  double log_p3 = -std::numeric_limits<double>::infinity();
  if (g.sigma > 0.0) {
    log_p3 = 0.5 * std::log(2.0 / std::numbers::pi) + std::log(g.sigma / g.beta) -
             g.beta * g.beta / (2.0 * g.sigma * g.sigma);
  }
  b.p3 = std::exp(log_p3);

  if (g.sigma == 0.0) {
    b.lambda_raw = 1.0;
  } else if (options.lambda_form == LambdaForm::Linearized) {
    b.lambda_raw = one_minus_exp(std::log(n) + log_p3);
  } else if (b.p3 < 1.0) {
    b.lambda_raw = std::exp(n * std::log1p(-b.p3));
  } else {
    b.lambda_raw = std::pow(1.0 - b.p3, n);
  }
  b.lambda_lb = clamp01(b.lambda_raw);

  if (!(b.rho >= 0.0)) {
    b.p1 = b.p2 = b.error_ub = b.probability_raw = kNaN;
    b.probability = 0.0;
    return b;
  }

  const double rho2 = b.rho * b.rho;
  b.p1 = std::exp(log_two_exp_ratio(std::numbers::ln2, rho2, 2.0 * ((tau - 1.0) * b.nu + b.c * b.rho / 3.0)));
  b.p2 = std::exp(log_two_exp_ratio(std::numbers::ln2, rho2, 2.0 * (tau * b.nu + b.c * b.rho / 3.0)));

  const double log_err = log_two_exp_ratio(
      std::log(2.0 * n), n * rho2,
      2.0 * tau * tau * b.gamma * b.gamma + 2.0 * n * b.gamma * b.rho / 3.0);
  b.error_ub = std::exp(log_err);
  const double survive = b.error_ub > 0.0 ? one_minus_exp(log_err) : 1.0;
  b.probability_raw = b.lambda_lb * survive;
  b.probability = b.condition_ok ? clamp01(b.probability_raw) : 0.0;
  return b;
}

AlphaBeta alpha_from_beta(double beta, double sigma, std::size_t n) {
  if (!(beta > 0.0)) throw std::invalid_argument("alpha_from_beta: beta must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("alpha_from_beta: sigma must be positive");
  if (n < 2) throw std::invalid_argument("alpha_from_beta: N must be at least 2");
  AlphaBeta ab;
  ab.beta = beta;
  ab.sigma = sigma;
  ab.n = n;
  const double ratio = beta / sigma;
  ab.alpha = ratio * ratio / (2.0 * std::log(static_cast<double>(n))) - 1.0;
  ab.valid = ab.alpha > 0.0;
  return ab;
}

double beta_from_alpha(double alpha, double sigma, std::size_t n) {
  if (!(alpha > -1.0)) throw std::invalid_argument("beta_from_alpha: alpha must exceed -1");
  if (!(sigma >= 0.0)) throw std::invalid_argument("beta_from_alpha: sigma must be nonnegative");
  if (n < 2) throw std::invalid_argument("beta_from_alpha: N must be at least 2");
  return sigma * std::sqrt(2.0 * (1.0 + alpha) * std::log(static_cast<double>(n)));
}

ClassicResult classic_from_beta(const GuaranteeInputs& g) {
  validate(g);
  ClassicResult r;
  r.condition = classic_condition(g);
  if (g.sigma == 0.0) {
    r.probability = r.condition ? 1.0 : 0.0;
    return r;
  }
  if (!(g.beta > 0.0)) return r;
  r.alpha_beta = alpha_from_beta(g.beta, g.sigma, g.n);
  r.alpha_defined = true;
  if (r.alpha_beta.valid) r.probability = classic_probability(g, r.alpha_beta.alpha);
  return r;
}

double estimate_beta(const Dictionary& d, double sigma, std::size_t draws, const RngStream& key,
                     unsigned threads) {
  if (draws < 1) throw std::invalid_argument("estimate_beta: draws must be at least 1");
  if (!(sigma >= 0.0)) throw std::invalid_argument("estimate_beta: sigma must be nonnegative");
  if (sigma == 0.0) return 0.0;

  const std::size_t blocks = (draws + kBetaBlock - 1) / kBetaBlock;
  std::vector<double> block_max(blocks, 0.0);
  detail::parallel_blocks(blocks, detail::resolve_threads(threads),
                          [&](std::size_t, std::size_t begin, std::size_t end) {
    std::vector<double> w(d.rows());
    std::vector<double> corr(d.cols());
    for (std::size_t k = begin; k < end; ++k) {
      RngStream rng(key.master_seed(), key.stream_id(), k + 1);
      const std::size_t count = std::min(kBetaBlock, draws - k * kBetaBlock);
      double best = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        draw_noise(rng, sigma, w);
        d.correlate_all(w, corr);
        best = std::max(best, kernels::max_abs(corr));
      }
      block_max[k] = best;
    }
  });
  return *std::max_element(block_max.begin(), block_max.end());
}

}  // namespace sparsebound
