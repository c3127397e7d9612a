#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace hpoly {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Child seed for a stream identified by a path of integers, e.g.
/// derive_seed(seed, {n, sample}). Order of the path matters.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t key = mix64(seed);
  for (std::uint64_t p : path) key = mix64(key ^ mix64(p + 0x632BE59BD9B4E019ULL));
  return key;
}

/// Counter-based generator: the k-th output depends only on (key, k), so any
/// element of a stream can be produced without generating its predecessors.
class CounterRng {
public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(mix64(key)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type at(std::uint64_t index) const noexcept {
    return mix64(key_ + index * 0xD1B54A32D192ED03ULL);
  }
  constexpr result_type operator()() noexcept { return at(counter_++); }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  constexpr int sign_at(std::uint64_t index) const noexcept { return (at(index) >> 63) ? -1 : 1; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace hpoly
