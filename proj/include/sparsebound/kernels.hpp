#pragma once

// Data-parallel inner loops. Every kernel has a portable scalar reference
// implementation; wider variants are selected once at runtime from what the
// CPU reports and can be pinned explicitly (tests use this to compare them).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace sparsebound::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend b);

struct KernelTable {
  /// In-place unnormalized Walsh-Hadamard transform, natural (Sylvester) order.
  void (*fwht)(double* data, std::size_t len);
  double (*dot)(const double* x, const double* y, std::size_t len);
  /// y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t len);
  void (*scale)(double alpha, double* x, std::size_t len);
  /// Index of the first entry of maximal magnitude; 0 for empty input.
  std::size_t (*argmax_abs)(const double* x, std::size_t len);
  double (*max_abs)(const double* x, std::size_t len);
};

bool backend_available(Backend b);

/// Best backend the running CPU supports.
Backend detect_backend();

/// Backend used by the span wrappers below.
Backend active_backend();

/// Pin the backend for the whole process. Throws std::invalid_argument if the
/// CPU cannot run it. Not meant to be called while kernels are executing.
void set_backend(Backend b);

/// Throws std::invalid_argument if `b` is unavailable.
const KernelTable& table(Backend b);
const KernelTable& active_table();

/// All backends usable on this machine, scalar first.
std::vector<Backend> available_backends();

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fwht(std::span<double> data);
double dot(std::span<const double> x, std::span<const double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
std::size_t argmax_abs(std::span<const double> x);
double max_abs(std::span<const double> x);

namespace scalar {
void fwht(double* data, std::size_t len);
double dot(const double* x, const double* y, std::size_t len);
void axpy(double alpha, const double* x, double* y, std::size_t len);
void scale(double alpha, double* x, std::size_t len);
std::size_t argmax_abs(const double* x, std::size_t len);
double max_abs(const double* x, std::size_t len);
}  // namespace scalar

namespace avx2 {
void fwht(double* data, std::size_t len);
double dot(const double* x, const double* y, std::size_t len);
void axpy(double alpha, const double* x, double* y, std::size_t len);
void scale(double alpha, double* x, std::size_t len);
std::size_t argmax_abs(const double* x, std::size_t len);
double max_abs(const double* x, std::size_t len);
}  // namespace avx2

}  // namespace sparsebound::kernels
