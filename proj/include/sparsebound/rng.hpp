#pragma once

#include <cstdint>
#include <random>

namespace sparsebound {

/// A reproducible random stream keyed by (master_seed, stream_id, substream).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq, both of which
/// the standard specifies bit-exactly. Uniform and Gaussian variates are
/// produced here rather than with the std distributions, whose algorithms are
/// implementation-defined, so sequences are identical across toolchains.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t substream = 0);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t substream() const noexcept { return substream_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Uniform on [lo, hi]. Returns lo exactly when lo == hi.
  double uniform(double lo, double hi);

  /// Uniform integer in [0, bound). Unbiased (rejection on the top range).
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Fair coin.
  bool coin();

  /// Standard normal variate (Box-Muller, second value cached).
  double normal();

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t substream_;
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace sparsebound
