// AVX2 + FMA variants. Compiled with -mavx2 -mfma; only reached through the
// dispatcher after a CPUID check.

#include "sparsebound/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace sparsebound::kernels::avx2 {

namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign_mask, v);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

}  // namespace

// The butterflies below produce the same IEEE results as the scalar loop:
// every output is a single x + y or x - y of the same operands.
void fwht(double* data, std::size_t len) {
  if (len < 4) {
    scalar::fwht(data, len);
    return;
  }
  // h = 1 and h = 2 stay inside one register.
  for (std::size_t i = 0; i < len; i += 4) {
    __m256d a = _mm256_loadu_pd(data + i);
    __m256d sw = _mm256_permute_pd(a, 0b0101);
    __m256d sum = _mm256_add_pd(a, sw);
    __m256d dif = _mm256_sub_pd(sw, a);
    a = _mm256_blend_pd(sum, dif, 0b1010);

    sw = _mm256_permute2f128_pd(a, a, 0x01);
    sum = _mm256_add_pd(a, sw);
    dif = _mm256_sub_pd(sw, a);
    _mm256_storeu_pd(data + i, _mm256_blend_pd(sum, dif, 0b1100));
  }
  for (std::size_t h = 4; h < len; h <<= 1) {
    for (std::size_t i = 0; i < len; i += h << 1) {
      for (std::size_t j = i; j < i + h; j += 4) {
        const __m256d x = _mm256_loadu_pd(data + j);
        const __m256d y = _mm256_loadu_pd(data + j + h);
        _mm256_storeu_pd(data + j, _mm256_add_pd(x, y));
        _mm256_storeu_pd(data + j + h, _mm256_sub_pd(x, y));
      }
    }
  }
}

double dot(const double* x, const double* y, std::size_t len) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= len; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < len; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t len) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < len; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t len) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(a, _mm256_loadu_pd(x + i)));
  }
  for (; i < len; ++i) x[i] *= alpha;
}

double max_abs(const double* x, std::size_t len) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(x + i)));
  double best = hmax(m);
  for (; i < len; ++i) {
    const double a = std::fabs(x[i]);
    if (a > best) best = a;
  }
  return best;
}

// Two passes: vector max, then the first lane that attains it. Matches the
// scalar lowest-index tie-break exactly.
std::size_t argmax_abs(const double* x, std::size_t len) {
  if (len == 0) return 0;
  const double best = max_abs(x, len);
  const __m256d target = _mm256_set1_pd(best);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d eq = _mm256_cmp_pd(abs_pd(_mm256_loadu_pd(x + i)), target, _CMP_EQ_OQ);
    const int mask = _mm256_movemask_pd(eq);
    if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
  }
  for (; i < len; ++i) {
    if (std::fabs(x[i]) == best) return i;
  }
  return 0;
}

}  // namespace sparsebound::kernels::avx2
