#pragma once

#include <array>
#include <cstdint>

#include "bmom/math.hpp"

namespace bmom::rng {

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw 2011).
// Stateless: every output word is a pure function of (counter, key), so a
// draw stream can be sampled at any index, in any order, on any platform,
// with identical results.
struct Philox4x32 {
  static constexpr std::uint32_t kMult0 = 0xD2511F53u;
  static constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t(kMult0) * ctr[0];
      const std::uint64_t p1 = std::uint64_t(kMult1) * ctr[2];
      const auto hi0 = std::uint32_t(p0 >> 32);
      const auto lo0 = std::uint32_t(p0);
      const auto hi1 = std::uint32_t(p1 >> 32);
      const auto lo1 = std::uint32_t(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

// One logical stream of doubles keyed by (seed, stream id) and indexed by
// (draw, slot). Counter layout: (draw lo, draw hi, slot/2, stream); each
// 128-bit block yields two 53-bit uniforms.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint32_t stream)
      : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}, stream_(stream) {}

  // Uniform on the open interval (0,1): never 0, never 1.
  double uniform(std::uint64_t draw, std::uint32_t slot) const {
    const std::array<std::uint32_t, 4> ctr = {
        std::uint32_t(draw), std::uint32_t(draw >> 32), slot >> 1, stream_};
    const auto out = Philox4x32::block(ctr, key_);
    const std::uint64_t bits =
        (slot & 1u) == 0
            ? (std::uint64_t(out[0]) << 32) | out[1]
            : (std::uint64_t(out[2]) << 32) | out[3];
    return (double(bits >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal by inverse cdf; exactly reproducible because the
  // quantile function is pinned.
  double normal(std::uint64_t draw, std::uint32_t slot) const {
    return math::normal_quantile(uniform(draw, slot));
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_;
};

}  // namespace bmom::rng
