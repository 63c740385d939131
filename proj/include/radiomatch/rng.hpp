#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace radiomatch {

// 64-bit finalizer (splitmix64 style).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic sub-seed for stream `stream` under a master seed.  Every
// per-node stream and per-trial seed is derived through this, so results do
// not depend on evaluation order.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return mix64(master ^ mix64(stream ^ 0x632be59bd9b4e019ULL));
}

// mt19937_64 with explicit conversions to doubles and bounded integers.
// The standard <random> distributions are implementation-defined, so all
// derived draws are produced here from raw engine words and reproduce
// bit-for-bit everywhere.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_word() { return engine_(); }

  // Uniform in [0, 1), 53 mantissa bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound), bound > 0.  Rejection sampling, unbiased.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % bound;
    }
  }

  // Fisher-Yates with our own bounded draws.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[static_cast<std::size_t>(uniform_below(i))]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace radiomatch
