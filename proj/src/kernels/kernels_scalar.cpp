#include "sparsebound/kernels.hpp"

#include <cmath>

namespace sparsebound::kernels::scalar {

void fwht(double* data, std::size_t len) {
  for (std::size_t h = 1; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double x = data[j];
        const double y = data[j + h];
        data[j] = x + y;
        data[j + h] = x - y;
      }
    }
  }
}

double dot(const double* x, const double* y, std::size_t len) {
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) x[i] *= alpha;
}

std::size_t argmax_abs(const double* x, std::size_t len) {
  std::size_t best = 0;
  double best_abs = len > 0 ? std::fabs(x[0]) : 0.0;
  for (std::size_t i = 1; i < len; ++i) {
    const double a = std::fabs(x[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

double max_abs(const double* x, std::size_t len) {
  double m = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double a = std::fabs(x[i]);
    if (a > m) m = a;
  }
  return m;
}

}  // namespace sparsebound::kernels::scalar
