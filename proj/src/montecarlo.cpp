#include "sparsebound/montecarlo.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "sparsebound/errors.hpp"
#include "sparsebound/kernels.hpp"
#include "sparsebound/omp.hpp"
#include "sparsebound/rng.hpp"
#include "sparsebound/signal_model.hpp"

namespace sparsebound {

std::string_view sweep_name(SweepKind kind) {
  switch (kind) {
    case SweepKind::Tau:
      return "tau";
    case SweepKind::SMin:
      return "s_min";
    case SweepKind::Sigma:
      return "sigma";
  }
  return "unknown";
}

namespace {

void validate_point(const PointParams& p, std::size_t m) {
  if (!(p.s_min > 0.0)) throw std::invalid_argument("s_min must be positive");
  if (!(p.s_min <= p.s_max)) throw std::invalid_argument("s_min must not exceed s_max");
  if (!(p.sigma >= 0.0)) throw std::invalid_argument("sigma must be nonnegative");
  if (p.tau < 1 || p.tau > m) {
    throw std::invalid_argument("tau must be in [1, M] = [1, " + std::to_string(m) + "]");
  }
}

PointParams point_for(const ExperimentConfig& cfg, double value) {
  PointParams p = cfg.fixed;
  switch (cfg.sweep) {
    case SweepKind::Tau:
      p.tau = static_cast<std::size_t>(std::llround(value));
      break;
    case SweepKind::SMin:
      p.s_min = value;
      break;
    case SweepKind::Sigma:
      p.sigma = value;
      break;
  }
  return p;
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.m < 2 || !kernels::is_power_of_two(cfg.m)) {
    throw std::invalid_argument("m must be a power of two and at least 2");
  }
  if (cfg.trials < 1) throw std::invalid_argument("trials must be positive");
  if (cfg.beta_draws < 1) throw std::invalid_argument("beta_draws must be positive");
  if (cfg.sweep_values.empty()) throw std::invalid_argument("sweep values must not be empty");
  for (std::size_t i = 1; i < cfg.sweep_values.size(); ++i) {
    if (!(cfg.sweep_values[i] > cfg.sweep_values[i - 1])) {
      throw std::invalid_argument("sweep values must be strictly increasing");
    }
  }
  if (cfg.beta_override && !(*cfg.beta_override >= 0.0)) {
    throw std::invalid_argument("beta must be nonnegative");
  }
  if (cfg.sweep == SweepKind::Tau) {
    for (double v : cfg.sweep_values) {
      if (v != std::floor(v)) throw std::invalid_argument("tau sweep values must be integers");
    }
  }
  validate_point(cfg.fixed, cfg.m);
  for (double v : cfg.sweep_values) {
    const PointParams p = point_for(cfg, v);
    validate_point(p, cfg.m);
    if (cfg.beta_override && *cfg.beta_override == 0.0 && p.sigma > 0.0) {
      throw std::invalid_argument("beta must be positive when sigma > 0");
    }
  }
}

SweepResult run_point(const Dictionary& d, const PointParams& params, std::size_t trials,
                      double beta, std::uint64_t master_seed, const RunOptions& options) {
  validate_point(params, std::min(d.rows(), d.cols()));
  if (trials < 1) throw std::invalid_argument("run_point: trials must be positive");

  const unsigned threads = detail::resolve_threads(options.threads);
  std::vector<std::size_t> successes(std::max<std::size_t>(1, std::min<std::size_t>(threads, trials)), 0);
  detail::parallel_blocks(trials, threads, [&](std::size_t worker, std::size_t begin, std::size_t end) {
    std::size_t local = 0;
    for (std::size_t t = begin + 1; t <= end; ++t) {
      try {
        RngStream rng(master_seed, t);
        const SparseSignal s = draw_sparse_signal(rng, d.cols(), params.tau, params.s_min, params.s_max);
        const Measurement y = synthesize(d, s, params.sigma, rng);
        const OmpResult r = omp(d, y.observed, params.tau);
        if (support_match(r.support, s.support)) ++local;
      } catch (const std::exception& e) {
        throw TrialError(t, "trial " + std::to_string(t) + ": " + e.what());
      }
    }
    successes[worker] = local;
  });

  SweepResult out;
  out.m = d.rows();
  out.n = d.cols();
  out.params = params;
  out.beta = beta;
  out.trials = trials;
  for (std::size_t s : successes) out.successes += s;
  const double p = static_cast<double>(out.successes) / static_cast<double>(trials);
  out.empirical_prob = p;
  out.mc_stderr = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));

  GuaranteeInputs g;
  g.n = d.cols();
  g.tau = params.tau;
  g.mu_max = d.mutual_coherence();
  g.s_min = params.s_min;
  g.s_max = params.s_max;
  g.sigma = params.sigma;
  g.beta = beta;
  const ClassicResult classic = classic_from_beta(g);
  out.thm1_condition = classic.condition;
  out.thm1_prob = classic.probability;
  const BoundBreakdown bound = probabilistic_bound(g);
  out.thm2_condition = bound.condition_ok;
  out.thm2_prob = bound.probability;
  return out;
}

std::vector<SweepResult> run_sweep(const ExperimentConfig& cfg, const RunOptions& options) {
  validate(cfg);
  const Dictionary d = Dictionary::identity_hadamard(cfg.m);
  const RngStream beta_key(cfg.master_seed, 0);
  std::map<double, double> beta_by_sigma;
  auto beta_for = [&](double sigma) {
    if (cfg.beta_override) return *cfg.beta_override;
    auto it = beta_by_sigma.find(sigma);
    if (it == beta_by_sigma.end()) {
      it = beta_by_sigma.emplace(sigma, estimate_beta(d, sigma, cfg.beta_draws, beta_key, options.threads)).first;
    }
    return it->second;
  };

  std::vector<SweepResult> rows;
  rows.reserve(cfg.sweep_values.size());
  for (double v : cfg.sweep_values) {
    const PointParams p = point_for(cfg, v);
    SweepResult r = run_point(d, p, cfg.trials, beta_for(p.sigma), cfg.master_seed, options);
    r.param_value = v;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace sparsebound
