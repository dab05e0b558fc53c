#pragma once

// Support-recovery guarantees for OMP in terms of mutual coherence.
//
// Two guarantees are evaluated side by side:
//  * the classical one, which requires the deterministic condition
//      s_min (1 - (2 tau - 1) mu_max) >= 2 beta
//    and then holds with probability 1 - N^-alpha / sqrt(pi (1 + alpha) log N),
//    where beta = sigma sqrt(2 (1 + alpha) log N);
//  * the probabilistic one, which only needs s_min / 2 >= beta and treats the
//    nonzero amplitudes as independent centered random variables:
//      lambda * (1 - 2N exp(-N rho^2 / (2 tau^2 gamma^2 + 2 N gamma rho / 3)))
//    with rho = s_min / 2 - beta, gamma = mu_max s_max and
//      lambda >= 1 - N sqrt(2 / pi) (sigma / beta) exp(-beta^2 / 2 sigma^2).
//
// All logarithms are natural. CSV columns call these thm1 and thm2.

#include <cstddef>
#include <cstdint>

#include "sparsebound/dictionary.hpp"
#include "sparsebound/rng.hpp"

namespace sparsebound {

struct GuaranteeInputs {
  std::size_t n = 0;    // number of atoms N
  std::size_t tau = 0;  // sparsity
  double mu_max = 0.0;
  double s_min = 0.0;
  double s_max = 0.0;
  double sigma = 0.0;
  double beta = 0.0;
};

/// Throws std::invalid_argument unless N >= 2, tau >= 1, mu_max in [0, 1],
/// 0 < s_min <= s_max, sigma >= 0 and beta >= 0.
void validate(const GuaranteeInputs& g);

/// Every intermediate of the probabilistic bound. Fields that are undefined
/// because rho < 0 are NaN.
struct BoundBreakdown {
  double rho = 0.0;
  double gamma = 0.0;
  double nu = 0.0;  // variance proxy (tau / N) s_max^2 mu_max^2
  double c = 0.0;   // per-term magnitude bound mu_max s_max
  double p1 = 0.0;  // tail for an on-support atom (tau - 1 interfering terms)
  double p2 = 0.0;  // tail for an off-support atom (tau interfering terms)
  double p3 = 0.0;  // per-atom noise exceedance
  double lambda_raw = 1.0;
  double lambda_lb = 1.0;
  double error_ub = 0.0;  // 2N exp(...) = N * p2
  double probability_raw = 0.0;
  double probability = 0.0;
  bool condition_ok = false;
};

enum class LambdaForm {
  Linearized,  // 1 - N P3
  Product,     // (1 - P3)^N
};

struct BoundOptions {
  LambdaForm lambda_form = LambdaForm::Linearized;
};

/// Constants of the Bernstein argument for the interference sum.
struct TailConstants {
  double nu = 0.0;
  double c = 0.0;
};

TailConstants interference_constants(const GuaranteeInputs& g);

/// Bernstein tail without clamping: 2 exp(-delta^2 / (2 (n nu + c delta / 3))).
double bernstein_tail_unclamped(double delta, std::size_t n_terms, double nu, double c);

/// min(1, bernstein_tail_unclamped(...)). Requires delta > 0 and nu, c >= 0 not
/// both zero.
double bernstein_tail(double delta, std::size_t n_terms, double nu, double c);

/// Upper bound on Pr{|<A_j, A s + w>| >= xi} given |<A_j, w>| <= beta:
/// the Bernstein tail at delta = xi - beta, clamped to [0, 1]. Requires
/// xi >= beta >= 0; xi == beta gives the vacuous bound 1.
double correlation_tail_bound(double xi, double beta, std::size_t n_terms, double nu, double c);

/// s_min (1 - (2 tau - 1) mu_max) >= 2 beta.
bool classic_condition(const GuaranteeInputs& g);

/// 0 when classic_condition fails, else max(0, 1 - N^-alpha / sqrt(pi (1+alpha) log N)).
/// Requires alpha > 0.
double classic_probability(const GuaranteeInputs& g, double alpha);

/// The probabilistic bound with its breakdown. When sigma > 0, beta must be
/// positive.
BoundBreakdown probabilistic_bound(const GuaranteeInputs& g, const BoundOptions& options = {});

/// beta and alpha linked by beta = sigma sqrt(2 (1 + alpha) log N).
struct AlphaBeta {
  double beta = 0.0;
  double alpha = 0.0;
  double sigma = 0.0;
  std::size_t n = 0;
  /// alpha > 0, as the classical guarantee requires.
  bool valid = false;
};

/// alpha = beta^2 / (2 sigma^2 log N) - 1. Requires beta > 0, sigma > 0, N >= 2.
AlphaBeta alpha_from_beta(double beta, double sigma, std::size_t n);

/// beta = sigma sqrt(2 (1 + alpha) log N).
double beta_from_alpha(double alpha, double sigma, std::size_t n);

/// The classical guarantee evaluated from g.beta, with alpha derived from it.
struct ClassicResult {
  bool condition = false;
  /// Set when sigma > 0.
  AlphaBeta alpha_beta;
  bool alpha_defined = false;
  double probability = 0.0;
};

/// sigma == 0 is the noiseless limit alpha -> infinity: probability 1 when the
/// condition holds. An alpha <= 0 gives probability 0.
ClassicResult classic_from_beta(const GuaranteeInputs& g);

inline constexpr std::size_t kDefaultBetaDraws = 10'000;

/// Empirical noise level: max over `draws` vectors w ~ N(0, sigma^2 I) of
/// max_j |<A_j, w>|. Draws are split into fixed blocks of 256, block k drawing
/// from substream k + 1 of (key.master_seed(), key.stream_id()), so the result
/// does not depend on `threads` (0 = hardware concurrency).
double estimate_beta(const Dictionary& d, double sigma, std::size_t draws, const RngStream& key,
                     unsigned threads = 1);

}  // namespace sparsebound
