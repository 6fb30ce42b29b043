#pragma once

#include <cstdint>
#include <limits>

namespace sprint {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: the i-th output is a pure function of (key, i).
/// Streams for different draws are obtained by keying with
/// CounterRng::for_stream(seed, index); no state is shared between them.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

  /// Independent stream `index` of the master `seed`.
  static constexpr CounterRng for_stream(std::uint64_t seed, std::uint64_t index) noexcept {
    return CounterRng(stream_key(seed, index));
  }
  static constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(mix64(seed ^ 0x5851F42D4C957F2DULL) + mix64(index + 0x9E3779B97F4A7C15ULL));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    return mix64(key_ + (++counter_) * 0x9E3779B97F4A7C15ULL);
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sprint
