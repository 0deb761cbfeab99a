// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace lastpass {

/// Philox4x32-10 counter-based block function.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// SplitMix64 finalizer; used to derive independent seeds from tags.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for a named sub-experiment of a run, e.g. the fresh paths that feed
/// an independent copy of a quantity.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
  return splitmix64(master ^ splitmix64(tag + 0x9E3779B97F4A7C15ull));
}

/// Random stream for one sample: the output is a pure function of
/// (seed, index, draw number), independent of which thread consumes it.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Exponential with the given rate (mean 1/rate).
  double exponential(double rate);

  std::uint64_t draws() const { return draw_; }

 private:
  PhiloxKey key_;
  std::uint64_t index_;
  std::uint64_t draw_ = 0;  // number of 64-bit outputs consumed
  std::array<std::uint64_t, 2> block_{};
};

}  // namespace lastpass
