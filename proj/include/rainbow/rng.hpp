#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace rainbow {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

// A deterministic random stream identified by (master seed, stream index).
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard; every derived draw below is computed here rather than through the
// implementation-defined std::*_distribution types, so a given (seed, index)
// yields the same samples on every platform and at every thread count.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t index = 0)
      : seed_(seed), index_(index),
        engine_(detail::splitmix64(detail::splitmix64(seed) ^ detail::splitmix64(~index))) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }

  /// Independent child stream; `sub` distinguishes siblings.
  RngStream child(std::uint64_t sub) const {
    return RngStream(detail::splitmix64(seed_ ^ 0x5851f42d4c957f2dULL) + index_, sub);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform integer in [0, bound); bound must be positive (Lemire's method).
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 product = static_cast<unsigned __int128>(engine_()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<unsigned __int128>(engine_()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Number of failures before the first success of a Bernoulli(p) sequence.
  /// `log_q` must be log(1 - p) < 0.
  std::uint64_t geometric_skip(double log_q) {
    const double u = 1.0 - uniform();  // (0, 1]
    const double skip = std::floor(std::log(u) / log_q);
    if (!(skip < 9.0e18)) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(skip);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::mt19937_64 engine_;
};

}  // namespace rainbow
