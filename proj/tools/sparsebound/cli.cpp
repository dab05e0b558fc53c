#include "sparsebound/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>

#include "sparsebound/config.hpp"
#include "sparsebound/csv.hpp"
#include "sparsebound/dictionary.hpp"
#include "sparsebound/guarantees.hpp"
#include "sparsebound/montecarlo.hpp"

namespace sparsebound::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void row(std::ostream& out, std::string_view key, const std::string& value) {
  out << key;
  for (std::size_t i = key.size(); i < 16; ++i) out << ' ';
  out << ' ' << value << '\n';
}

std::string yes_no(bool v) { return v ? "true" : "false"; }

// sigma from either --sigma or --sigma-sq.
std::optional<double> resolve_sigma(const std::optional<double>& sigma,
                                    const std::optional<double>& sigma_sq) {
  if (sigma && sigma_sq) throw UsageError("give either --sigma or --sigma-sq, not both");
  if (sigma_sq) {
    if (*sigma_sq < 0.0) throw UsageError("--sigma-sq must be nonnegative");
    return std::sqrt(*sigma_sq);
  }
  return sigma;
}

struct CoherenceArgs {
  std::size_t m = 0;
};

int cmd_coherence(const CoherenceArgs& a, std::ostream& out) {
  const Dictionary d = Dictionary::identity_hadamard(a.m);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", d.mutual_coherence());
  out << "M=" << d.rows() << '\n' << "N=" << d.cols() << '\n' << "mu_max=" << buf << '\n';
  return kExitOk;
}

struct BoundArgs {
  std::optional<std::size_t> m;
  std::optional<std::size_t> n;
  std::optional<double> mu;
  std::optional<std::size_t> tau;
  std::optional<double> s_min;
  std::optional<double> s_max;
  std::optional<double> sigma;
  std::optional<double> sigma_sq;
  std::optional<double> beta;
  std::optional<double> alpha;
  std::string lambda_form = "linearized";
};

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  GuaranteeInputs g;
  std::vector<std::string> missing;
  if (a.m) {
    if (a.n || a.mu) throw UsageError("--m replaces --n and --mu; do not combine them");
    const Dictionary d = Dictionary::identity_hadamard(*a.m);
    g.n = d.cols();
    g.mu_max = d.mutual_coherence();
  } else {
    if (a.n) g.n = *a.n; else missing.emplace_back("--n (or --m)");
    if (a.mu) g.mu_max = *a.mu; else missing.emplace_back("--mu (or --m)");
  }
  if (a.tau) g.tau = *a.tau; else missing.emplace_back("--tau");
  if (a.s_min) g.s_min = *a.s_min; else missing.emplace_back("--s-min");
  if (a.s_max) g.s_max = *a.s_max; else missing.emplace_back("--s-max");
  const auto sigma = resolve_sigma(a.sigma, a.sigma_sq);
  if (sigma) g.sigma = *sigma; else missing.emplace_back("--sigma (or --sigma-sq)");
  if (!a.beta && !a.alpha) missing.emplace_back("--beta (or --alpha)");
  if (!missing.empty()) {
    std::string msg = "missing required flags:";
    for (const auto& m : missing) msg += " " + m;
    throw UsageError(msg);
  }
  g.beta = a.beta ? *a.beta : beta_from_alpha(*a.alpha, g.sigma, g.n);

  BoundOptions opts;
  if (a.lambda_form == "linearized") {
    opts.lambda_form = LambdaForm::Linearized;
  } else if (a.lambda_form == "product") {
    opts.lambda_form = LambdaForm::Product;
  } else {
    throw UsageError("--lambda-form must be 'linearized' or 'product'");
  }

  validate(g);
  bool thm1_condition = classic_condition(g);
  double thm1_prob = 0.0;
  std::string alpha_text = "undefined";
  std::string alpha_valid = "false";
  if (a.alpha) {
    if (!(*a.alpha > 0.0)) throw UsageError("--alpha must be positive");
    thm1_prob = classic_probability(g, *a.alpha);
    alpha_text = format_real(*a.alpha);
    alpha_valid = "true";
  } else {
    const ClassicResult c = classic_from_beta(g);
    thm1_prob = c.probability;
    if (c.alpha_defined) {
      alpha_text = format_real(c.alpha_beta.alpha);
      alpha_valid = yes_no(c.alpha_beta.valid);
    }
  }
  const BoundBreakdown b = probabilistic_bound(g, opts);

  row(out, "N", std::to_string(g.n));
  row(out, "tau", std::to_string(g.tau));
  row(out, "mu_max", format_real(g.mu_max));
  row(out, "s_min", format_real(g.s_min));
  row(out, "s_max", format_real(g.s_max));
  row(out, "sigma", format_real(g.sigma));
  row(out, "beta", format_real(g.beta));
  row(out, "alpha", alpha_text);
  row(out, "alpha_valid", alpha_valid);
  row(out, "thm1_condition", yes_no(thm1_condition));
  row(out, "thm1_prob", format_real(thm1_prob));
  row(out, "thm2_condition", yes_no(b.condition_ok));
  row(out, "rho", format_real(b.rho));
  row(out, "gamma", format_real(b.gamma));
  row(out, "nu", format_real(b.nu));
  row(out, "c", format_real(b.c));
  row(out, "p1", format_real(b.p1));
  row(out, "p2", format_real(b.p2));
  row(out, "p3", format_real(b.p3));
  row(out, "lambda_raw", format_real(b.lambda_raw));
  row(out, "lambda_lb", format_real(b.lambda_lb));
  row(out, "error_ub", format_real(b.error_ub));
  row(out, "thm2_prob_raw", format_real(b.probability_raw));
  row(out, "thm2_prob", format_real(b.probability));
  return kExitOk;
}

struct BetaArgs {
  std::size_t m = 0;
  std::optional<double> sigma;
  std::optional<double> sigma_sq;
  std::size_t draws = kDefaultBetaDraws;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

int cmd_beta(const BetaArgs& a, std::ostream& out) {
  const auto sigma = resolve_sigma(a.sigma, a.sigma_sq);
  if (!sigma) throw UsageError("missing required flags: --sigma (or --sigma-sq)");
  if (*sigma < 0.0) throw UsageError("--sigma must be nonnegative");
  if (a.draws < 1) throw UsageError("--draws must be positive");
  const Dictionary d = Dictionary::identity_hadamard(a.m);
  const double beta = estimate_beta(d, *sigma, a.draws, RngStream(a.seed, 0), a.threads);
  out << "M=" << d.rows() << '\n';
  out << "N=" << d.cols() << '\n';
  out << "sigma=" << format_real(*sigma) << '\n';
  out << "draws=" << a.draws << '\n';
  out << "seed=" << a.seed << '\n';
  out << "beta=" << format_real(beta) << '\n';
  if (*sigma > 0.0 && beta > 0.0) {
    const AlphaBeta ab = alpha_from_beta(beta, *sigma, d.cols());
    out << "alpha=" << format_real(ab.alpha) << '\n';
    out << "alpha_valid=" << yes_no(ab.valid) << '\n';
  } else {
    out << "alpha=undefined\n";
    out << "alpha_valid=false\n";
  }
  return kExitOk;
}

struct SweepArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_path;
  std::string plot_path;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  KeyValues kv;
  if (!a.config_path.empty()) kv = read_config_file(a.config_path);
  for (const std::string& o : a.overrides) {
    if (o.find('=') == std::string::npos) throw UsageError("--set expects key=value, got '" + o + "'");
    for (auto& [k, v] : parse_key_values(o, "--set")) kv[k] = v;
  }
  if (a.seed) kv["seed"] = std::to_string(*a.seed);
  const ExperimentConfig cfg = build_experiment_config(kv);

  RunOptions run_opts;
  run_opts.threads = a.threads;
  const std::vector<SweepResult> rows = run_sweep(cfg, run_opts);
  write_file_atomic(a.output_path, sweep_csv(cfg.sweep, rows));
  if (!a.plot_path.empty()) write_file_atomic(a.plot_path, plot_script(cfg.sweep, a.output_path));
  out << "wrote " << rows.size() << " rows to " << a.output_path << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"OMP support-recovery guarantees and Monte Carlo sweeps"};
  app.require_subcommand(1);

  CoherenceArgs coh;
  auto* coherence = app.add_subcommand("coherence", "Mutual coherence of the [I, H] dictionary");
  coherence->add_option("--m", coh.m, "Signal dimension M (power of two)")->required();

  BoundArgs bnd;
  auto* bound = app.add_subcommand("bound", "Evaluate both guarantees with full breakdown");
  bound->add_option("--m", bnd.m, "Use the [I, H] dictionary of dimension M (sets N and mu)");
  bound->add_option("--n", bnd.n, "Number of atoms N");
  bound->add_option("--mu", bnd.mu, "Mutual coherence mu_max");
  bound->add_option("--tau", bnd.tau, "Sparsity");
  bound->add_option("--s-min", bnd.s_min, "Smallest nonzero magnitude");
  bound->add_option("--s-max", bnd.s_max, "Largest nonzero magnitude");
  bound->add_option("--sigma", bnd.sigma, "Noise standard deviation");
  bound->add_option("--sigma-sq", bnd.sigma_sq, "Noise variance");
  bound->add_option("--beta", bnd.beta, "Noise correlation level beta");
  bound->add_option("--alpha", bnd.alpha, "alpha for the classical guarantee (derived from beta if omitted)");
  bound->add_option("--lambda-form", bnd.lambda_form, "linearized (1 - N P3) or product ((1 - P3)^N)");

  BetaArgs bet;
  auto* beta = app.add_subcommand("beta", "Estimate beta empirically and derive alpha");
  beta->add_option("--m", bet.m, "Signal dimension M (power of two)")->required();
  beta->add_option("--sigma", bet.sigma, "Noise standard deviation");
  beta->add_option("--sigma-sq", bet.sigma_sq, "Noise variance");
  beta->add_option("--draws", bet.draws, "Number of noise vectors")->capture_default_str();
  beta->add_option("--seed", bet.seed, "Master seed")->capture_default_str();
  beta->add_option("--threads", bet.threads, "Worker threads (0 = all cores)");

  SweepArgs swp;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
  sweep->add_option("--config", swp.config_path, "key=value config file");
  sweep->add_option("--set", swp.overrides, "Override a config key (key=value), repeatable");
  sweep->add_option("--output,-o", swp.output_path, "CSV output path")->required();
  sweep->add_option("--plot", swp.plot_path, "Also write a gnuplot script to this path");
  sweep->add_option("--seed", swp.seed, "Master seed (overrides the config)");
  sweep->add_option("--threads", swp.threads, "Worker threads (0 = all cores)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*coherence) return cmd_coherence(coh, out);
    if (*bound) return cmd_bound(bnd, out);
    if (*beta) return cmd_beta(bet, out);
    if (*sweep) return cmd_sweep(swp, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace sparsebound::cli
