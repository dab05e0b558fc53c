#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sparsebound/montecarlo.hpp"

namespace sparsebound::cli {

/// Flat key=value pairs. '#' starts a comment; blank lines are skipped;
/// whitespace around keys and values is trimmed. A later pair overrides an
/// earlier one with the same key.
using KeyValues = std::map<std::string, std::string, std::less<>>;

/// `origin` names the source in error messages (file path, "--set").
KeyValues parse_key_values(std::string_view text, std::string_view origin);
KeyValues read_config_file(const std::string& path);

/// "a,b,c" or an inclusive range "start:stop:step".
std::vector<double> parse_value_list(std::string_view text);

/// Builds a validated experiment config. Recognized keys:
///   m, sweep (tau | s_min | sigma | sigma_sq), values, tau, s_min, s_max,
///   sigma, sigma_sq, trials, beta_draws, seed, beta
/// sigma_sq is a variance and is converted to sigma; sweep=sigma_sq takes
/// variances in `values` and runs a sigma sweep. Unknown keys are rejected.
ExperimentConfig build_experiment_config(const KeyValues& kv);

double parse_real(std::string_view text, std::string_view what);
unsigned long long parse_unsigned(std::string_view text, std::string_view what);

}  // namespace sparsebound::cli
