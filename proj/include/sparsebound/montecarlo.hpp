#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sparsebound/dictionary.hpp"
#include "sparsebound/guarantees.hpp"

namespace sparsebound {

/// Signal and noise parameters of one experiment point. sigma is the noise
/// standard deviation (not the variance).
struct PointParams {
  std::size_t tau = 1;
  double s_min = 0.5;
  double s_max = 1.0;
  double sigma = 0.0;
};

enum class SweepKind { Tau, SMin, Sigma };

std::string_view sweep_name(SweepKind kind);

struct ExperimentConfig {
  std::size_t m = 1024;
  SweepKind sweep = SweepKind::Tau;
  std::vector<double> sweep_values;
  PointParams fixed;
  std::size_t trials = 5000;
  std::size_t beta_draws = kDefaultBetaDraws;
  std::uint64_t master_seed = 0;
  /// Skips estimation and uses this beta at every point.
  std::optional<double> beta_override;
};

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const ExperimentConfig& cfg);

struct SweepResult {
  double param_value = 0.0;
  std::size_t m = 0;
  std::size_t n = 0;
  PointParams params;
  double beta = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double empirical_prob = 0.0;
  double mc_stderr = 0.0;
  bool thm1_condition = false;
  double thm1_prob = 0.0;
  bool thm2_condition = false;
  double thm2_prob = 0.0;
};

struct RunOptions {
  /// Worker threads; 0 = hardware concurrency. Never changes results.
  unsigned threads = 0;
};

/// `trials` independent OMP trials. Trial t (1-based) draws its signal and
/// noise from stream (master_seed, t), so the outcome is independent of the
/// thread count. Both theoretical bounds are evaluated with the given beta.
/// A solver failure is rethrown as TrialError naming the trial.
SweepResult run_point(const Dictionary& d, const PointParams& params, std::size_t trials,
                      double beta, std::uint64_t master_seed, const RunOptions& options = {});

/// One SweepResult per sweep value. beta is estimated from stream
/// (master_seed, 0) once per distinct sigma unless overridden.
std::vector<SweepResult> run_sweep(const ExperimentConfig& cfg, const RunOptions& options = {});

}  // namespace sparsebound
