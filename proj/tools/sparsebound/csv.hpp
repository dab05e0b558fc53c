#pragma once

#include <span>
#include <string>
#include <string_view>

#include "sparsebound/montecarlo.hpp"

namespace sparsebound::cli {

inline constexpr std::string_view kCsvHeader =
    "sweep,param_value,M,N,tau,s_min,s_max,sigma,beta,trials,successes,empirical_prob,"
    "mc_stderr,thm1_condition,thm1_prob,thm2_condition,thm2_prob";

/// Shortest decimal that round-trips to the same double.
std::string format_real(double v);

std::string sweep_csv(SweepKind kind, std::span<const SweepResult> rows);

/// Gnuplot script drawing the empirical, thm1 and thm2 columns of `csv_path`
/// against param_value.
std::string plot_script(SweepKind kind, std::string_view csv_path);

/// Writes to a sibling temporary file, then renames over `path`. On failure
/// the temporary is removed and std::runtime_error is thrown.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace sparsebound::cli
