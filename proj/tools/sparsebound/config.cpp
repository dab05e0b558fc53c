#include "sparsebound/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sparsebound::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

const std::vector<std::string_view> kKnownKeys = {
    "m", "sweep", "values", "tau", "s_min", "s_max", "sigma", "sigma_sq",
    "trials", "beta_draws", "seed", "beta"};

}  // namespace

KeyValues parse_key_values(std::string_view text, std::string_view origin) {
  KeyValues kv;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(std::string(origin) + ":" + std::to_string(line_no) +
                                  ": expected key=value, got '" + std::string(line) + "'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw std::invalid_argument(std::string(origin) + ":" + std::to_string(line_no) + ": empty key");
    }
    kv[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_key_values(buf.str(), path);
}

double parse_real(std::string_view text, std::string_view what) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + ": '" + std::string(text) + "' is not a finite number");
  }
  return v;
}

unsigned long long parse_unsigned(std::string_view text, std::string_view what) {
  text = trim(text);
  unsigned long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string(what) + ": '" + std::string(text) +
                                "' is not a nonnegative integer");
  }
  return v;
}

std::vector<double> parse_value_list(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw std::invalid_argument("values: range must be start:stop:step");
    const double start = parse_real(text.substr(0, c1), "values");
    const double stop = parse_real(text.substr(c1 + 1, c2 - c1 - 1), "values");
    const double step = parse_real(text.substr(c2 + 1), "values");
    if (!(step > 0.0) || stop < start) throw std::invalid_argument("values: empty or invalid range");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_real(text.substr(0, comma), "values"));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

ExperimentConfig build_experiment_config(const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    bool known = false;
    for (auto k : kKnownKeys) known = known || key == k;
    if (!known) throw std::invalid_argument("unknown config key '" + key + "'");
  }
  auto get = [&](std::string_view key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  ExperimentConfig cfg;
  if (auto v = get("m")) cfg.m = parse_unsigned(*v, "m");
  if (auto v = get("tau")) cfg.fixed.tau = parse_unsigned(*v, "tau");
  if (auto v = get("s_min")) cfg.fixed.s_min = parse_real(*v, "s_min");
  if (auto v = get("s_max")) cfg.fixed.s_max = parse_real(*v, "s_max");
  if (get("sigma") && get("sigma_sq")) throw std::invalid_argument("give either sigma or sigma_sq, not both");
  if (auto v = get("sigma")) cfg.fixed.sigma = parse_real(*v, "sigma");
  if (auto v = get("sigma_sq")) {
    const double var = parse_real(*v, "sigma_sq");
    if (var < 0.0) throw std::invalid_argument("sigma_sq must be nonnegative");
    cfg.fixed.sigma = std::sqrt(var);
  }
  if (auto v = get("trials")) cfg.trials = parse_unsigned(*v, "trials");
  if (auto v = get("beta_draws")) cfg.beta_draws = parse_unsigned(*v, "beta_draws");
  if (auto v = get("seed")) cfg.master_seed = parse_unsigned(*v, "seed");
  if (auto v = get("beta")) cfg.beta_override = parse_real(*v, "beta");

  bool values_are_variances = false;
  const std::string* sweep = get("sweep");
  if (!sweep) throw std::invalid_argument("missing config key 'sweep'");
  if (*sweep == "tau") {
    cfg.sweep = SweepKind::Tau;
  } else if (*sweep == "s_min") {
    cfg.sweep = SweepKind::SMin;
  } else if (*sweep == "sigma") {
    cfg.sweep = SweepKind::Sigma;
  } else if (*sweep == "sigma_sq") {
    cfg.sweep = SweepKind::Sigma;
    values_are_variances = true;
  } else {
    throw std::invalid_argument("sweep must be one of tau, s_min, sigma, sigma_sq (got '" + *sweep + "')");
  }
  const std::string* values = get("values");
  if (!values) throw std::invalid_argument("missing config key 'values'");
  cfg.sweep_values = parse_value_list(*values);
  if (values_are_variances) {
    for (double& v : cfg.sweep_values) {
      if (v < 0.0) throw std::invalid_argument("sigma_sq values must be nonnegative");
      v = std::sqrt(v);
    }
  }
  validate(cfg);
  return cfg;
}

}  // namespace sparsebound::cli
