#include "sparsebound/csv.hpp"

#include <unistd.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace sparsebound::cli {

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf, ptr);
}

std::string sweep_csv(SweepKind kind, std::span<const SweepResult> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  auto b = [](bool v) { return v ? "true" : "false"; };
  for (const SweepResult& r : rows) {
    out += sweep_name(kind);
    out += ',' + format_real(r.param_value);
    out += ',' + std::to_string(r.m);
    out += ',' + std::to_string(r.n);
    out += ',' + std::to_string(r.params.tau);
    out += ',' + format_real(r.params.s_min);
    out += ',' + format_real(r.params.s_max);
    out += ',' + format_real(r.params.sigma);
    out += ',' + format_real(r.beta);
    out += ',' + std::to_string(r.trials);
    out += ',' + std::to_string(r.successes);
    out += ',' + format_real(r.empirical_prob);
    out += ',' + format_real(r.mc_stderr);
    out += ',';
    out += b(r.thm1_condition);
    out += ',' + format_real(r.thm1_prob);
    out += ',';
    out += b(r.thm2_condition);
    out += ',' + format_real(r.thm2_prob);
    out += '\n';
  }
  return out;
}

std::string plot_script(SweepKind kind, std::string_view csv_path) {
  const std::string data(csv_path);
  std::string s;
  s += "# gnuplot script: probability of support recovery against " + std::string(sweep_name(kind)) + "\n";
  s += "set datafile separator \",\"\n";
  s += "set key bottom left\n";
  s += "set xlabel \"" + std::string(sweep_name(kind)) + "\"\n";
  s += "set ylabel \"probability of support recovery\"\n";
  s += "set yrange [0:1.05]\n";
  s += "set grid\n";
  s += "plot \"" + data + "\" using \"param_value\":\"empirical_prob\" with linespoints title \"empirical (OMP)\", \\\n";
  s += "     \"" + data + "\" using \"param_value\":\"thm1_prob\" with lines title \"thm1 (coherence condition)\", \\\n";
  s += "     \"" + data + "\" using \"param_value\":\"thm2_prob\" with lines title \"thm2 (probabilistic bound)\"\n";
  return s;
}

void write_file_atomic(const std::string& path, std::string_view contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw std::runtime_error("failed while writing '" + path + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw std::runtime_error("cannot move output into place at '" + path + "': " + ec.message());
  }
}

}  // namespace sparsebound::cli
