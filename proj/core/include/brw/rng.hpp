#pragma once

#include <cstdint>

namespace brw {

/// Counter-based generator: every draw is SplitMix64 of a key built from
/// (seed, stream, counter), so any trial's stream can be regenerated
/// without touching shared state.
class CounterRng {
 public:
  static constexpr const char* kName = "splitmix64-counter";

  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1].
  double uniform_open_left() { return 1.0 - uniform(); }
  std::uint64_t counter() const { return counter_; }

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace brw
