#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparsebound {

/// The active-set system became numerically rank deficient.
class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(std::size_t iteration, const std::string& what)
      : std::runtime_error(what), iteration_(iteration) {}

  /// Zero-based solver iteration at which the rank loss was detected.
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

/// A brute-force search would exceed its combinatorial budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure inside a Monte Carlo trial; carries the trial index.
class TrialError : public std::runtime_error {
 public:
  TrialError(std::size_t trial, const std::string& what)
      : std::runtime_error(what), trial_(trial) {}

  std::size_t trial() const noexcept { return trial_; }

 private:
  std::size_t trial_;
};

}  // namespace sparsebound
