#pragma once

#include <cmath>
#include <cstdint>

namespace altweib {

/// Counter-based splittable uniform generator.
///
/// Each draw hashes (key, counter) through the splitmix64 finalizer, so a
/// stream is fully determined by its key and position.  fork() derives an
/// independent child stream from a tag; Monte Carlo code forks one stream
/// per (pair, replication) and results do not depend on scheduling order.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t key = 0) : key_(key), counter_(0) {}

  static SplitRng seeded(std::uint64_t seed) { return SplitRng(mix(seed)); }

  /// Independent child stream; deterministic in (parent key, tag).
  SplitRng fork(std::uint64_t tag) const {
    return SplitRng(mix(key_ ^ mix(tag + 0x632BE59BD9B4E019ull)));
  }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

  /// Uniform draw on the open interval (0, 1); never returns 0 or 1.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  /// Standard exponential via inversion, -log(1 - U).
  double exponential() { return -std::log1p(-uniform()); }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace altweib
