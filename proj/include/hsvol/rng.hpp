#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace hsvol {

/// Philox4x32-10 block function: 128-bit counter and 64-bit key to 128 random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/**
 * Counter-based random stream keyed by (seed, stream id).
 *
 * Draw i of stream s under seed k depends only on (k, s, i), so chunks of a
 * Monte Carlo run can be replayed in any order or on any thread.
 * Satisfies UniformRandomBitGenerator.
 */
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_(stream_id) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal (Box-Muller).
  double normal();

  std::uint64_t draws() const { return draw_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t draw_ = 0;  // 64-bit draws consumed
  std::array<std::uint32_t, 4> block_{};
  bool have_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace hsvol
