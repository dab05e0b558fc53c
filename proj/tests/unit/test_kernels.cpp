#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "sparsebound/kernels.hpp"
#include "sparsebound/rng.hpp"

using namespace sparsebound;

namespace {

std::vector<double> random_vector(RngStream& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

}  // namespace

TEST_CASE("scalar fwht matches the dense Sylvester product") {
  RngStream rng(11, 1);
  for (std::size_t m : {1u, 2u, 4u, 8u, 32u, 128u}) {
    const auto h = oracle::sylvester(m);
    auto x = random_vector(rng, m);
    std::vector<double> want(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) want[i] += h[i * m + j] * x[j];
    }
    kernels::scalar::fwht(x.data(), m);
    for (std::size_t i = 0; i < m; ++i) CHECK(x[i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
}

TEST_CASE("fwht applied twice scales by the length") {
  RngStream rng(12, 1);
  for (auto backend : kernels::available_backends()) {
    const auto& k = kernels::table(backend);
    for (std::size_t m = 2; m <= 4096; m *= 2) {
      const auto orig = random_vector(rng, m);
      auto x = orig;
      k.fwht(x.data(), m);
      k.fwht(x.data(), m);
      double worst = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        worst = std::max(worst, std::fabs(x[i] - static_cast<double>(m) * orig[i]));
        scale = std::max(scale, std::fabs(static_cast<double>(m) * orig[i]));
      }
      CHECK(worst <= 1e-10 * scale);
    }
  }
}

TEST_CASE("every backend reproduces the scalar fwht bit for bit") {
  RngStream rng(13, 1);
  const auto& ref = kernels::table(kernels::Backend::Scalar);
  for (auto backend : kernels::available_backends()) {
    CAPTURE(kernels::backend_name(backend));
    const auto& k = kernels::table(backend);
    for (std::size_t m = 1; m <= 2048; m *= 2) {
      auto a = random_vector(rng, m);
      auto b = a;
      ref.fwht(a.data(), m);
      k.fwht(b.data(), m);
      CHECK(a == b);
    }
  }
}

TEST_CASE("reductions and updates agree across backends") {
  RngStream rng(14, 1);
  const auto& ref = kernels::table(kernels::Backend::Scalar);
  for (auto backend : kernels::available_backends()) {
    CAPTURE(kernels::backend_name(backend));
    const auto& k = kernels::table(backend);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 9u, 31u, 64u, 1000u}) {
      const auto x = random_vector(rng, n);
      auto y1 = random_vector(rng, n);
      auto y2 = y1;

      double l1 = 0.0;
      for (std::size_t i = 0; i < n; ++i) l1 += std::fabs(x[i] * y1[i]);
      CHECK(std::fabs(k.dot(x.data(), y1.data(), n) - ref.dot(x.data(), y1.data(), n)) <= 1e-14 * (l1 + 1.0));

      ref.axpy(0.37, x.data(), y1.data(), n);
      k.axpy(0.37, x.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));

      auto s1 = x, s2 = x;
      ref.scale(-1.7, s1.data(), n);
      k.scale(-1.7, s2.data(), n);
      CHECK(s1 == s2);

      CHECK(k.max_abs(x.data(), n) == ref.max_abs(x.data(), n));
      CHECK(k.argmax_abs(x.data(), n) == ref.argmax_abs(x.data(), n));
    }
  }
}

TEST_CASE("argmax_abs resolves ties to the lowest index") {
  for (auto backend : kernels::available_backends()) {
    const auto& k = kernels::table(backend);
    const std::vector<double> v{0.1, -0.5, 0.2, 0.5, 0.3, -0.5, 0.0, 0.5, 0.5};
    CHECK(k.argmax_abs(v.data(), v.size()) == 1);
    const std::vector<double> zeros(13, 0.0);
    CHECK(k.argmax_abs(zeros.data(), zeros.size()) == 0);
    std::vector<double> tail(11, 1.0);
    tail[10] = -2.0;
    CHECK(k.argmax_abs(tail.data(), tail.size()) == 10);
  }
}

TEST_CASE("backend selection") {
  CHECK(kernels::backend_available(kernels::Backend::Scalar));
  const auto original = kernels::active_backend();
  kernels::set_backend(kernels::Backend::Scalar);
  CHECK(kernels::active_backend() == kernels::Backend::Scalar);
  kernels::set_backend(original);
  if (!kernels::backend_available(kernels::Backend::Avx2)) {
    CHECK_THROWS_AS(kernels::set_backend(kernels::Backend::Avx2), std::invalid_argument);
  }
  std::vector<double> bad(6, 1.0);
  CHECK_THROWS_AS(kernels::fwht(bad), std::invalid_argument);
}
