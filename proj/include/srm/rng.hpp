#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace srm {

/// Stream tags for seed splitting. A derived seed depends on
/// (master seed, tag, index) only, so per-item randomness does not depend on
/// scheduling or worker count.
enum class Stream : std::uint64_t {
  noise = 1,
  initializer = 2,
  replica_a = 3,
  replica_b = 4,
  projection = 5,
  spec = 6,
  gaussian = 7,
  shuffle = 8,
};

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Splitting rule: mix64(mix64(master ^ mix64(tag)) + index).
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master,
                                                  Stream tag,
                                                  std::uint64_t index) {
  const std::uint64_t keyed =
      mix64(master ^ mix64(static_cast<std::uint64_t>(tag)));
  return mix64(keyed + index);
}

/// xoshiro256** (Blackman & Vigna), 256-bit state seeded through SplitMix64.
/// Satisfies UniformRandomBitGenerator so it plugs into <random>.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;
  static constexpr std::string_view name = "xoshiro256**";

  explicit Xoshiro256(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// Uniform on [0, 1) from the top 53 bits; never returns 1.
[[nodiscard]] double uniform01(Xoshiro256& rng);

[[nodiscard]] double standard_normal(Xoshiro256& rng);

}  // namespace srm
