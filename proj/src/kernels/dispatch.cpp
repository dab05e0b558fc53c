#include <atomic>
#include <stdexcept>
#include <string>

#include "sparsebound/kernels.hpp"

namespace sparsebound::kernels {

namespace {

constexpr KernelTable kScalarTable{
    scalar::fwht, scalar::dot, scalar::axpy, scalar::scale, scalar::argmax_abs, scalar::max_abs};

#if defined(SPARSEBOUND_HAVE_AVX2)
constexpr KernelTable kAvx2Table{
    avx2::fwht, avx2::dot, avx2::axpy, avx2::scale, avx2::argmax_abs, avx2::max_abs};
#endif

bool cpu_has_avx2() {
#if defined(SPARSEBOUND_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&table(detect_backend())};
  return slot;
}

std::atomic<Backend>& active_kind() {
  static std::atomic<Backend> kind{detect_backend()};
  return kind;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2: {
      static const bool ok = cpu_has_avx2();
      return ok;
    }
  }
  return false;
}

Backend detect_backend() {
  return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

const KernelTable& table(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("kernel backend '" + std::string(backend_name(b)) +
                                "' is not supported on this CPU");
  }
#if defined(SPARSEBOUND_HAVE_AVX2)
  if (b == Backend::Avx2) return kAvx2Table;
#endif
  return kScalarTable;
}

Backend active_backend() { return active_kind().load(std::memory_order_acquire); }

const KernelTable& active_table() { return *active_slot().load(std::memory_order_acquire); }

void set_backend(Backend b) {
  const KernelTable* t = &table(b);
  active_slot().store(t, std::memory_order_release);
  active_kind().store(b, std::memory_order_release);
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::Scalar};
  if (backend_available(Backend::Avx2)) out.push_back(Backend::Avx2);
  return out;
}

void fwht(std::span<double> data) {
  if (!is_power_of_two(data.size())) {
    throw std::invalid_argument("fwht: length must be a power of two");
  }
  active_table().fwht(data.data(), data.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: length mismatch");
  return active_table().dot(x.data(), y.data(), x.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
  active_table().axpy(alpha, x.data(), y.data(), x.size());
}

void scale(double alpha, std::span<double> x) { active_table().scale(alpha, x.data(), x.size()); }

std::size_t argmax_abs(std::span<const double> x) {
  return active_table().argmax_abs(x.data(), x.size());
}

double max_abs(std::span<const double> x) { return active_table().max_abs(x.data(), x.size()); }

}  // namespace sparsebound::kernels
