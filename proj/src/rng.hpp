#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace levitrap {

// Deterministic stream-splitting: every consumer derives its own engine
// from (seed, stream label), so concurrent oracles never share a stream
// and results are reproducible bit-for-bit for a given seed.
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view stream)
      : engine_(mix(seed ^ fnv1a(stream))) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Exponential waiting time; implemented directly so the byte stream does
  // not depend on the standard library's distribution internals.
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  std::uint64_t bits() { return engine_(); }

 private:
  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    return h;
  }
  // splitmix64 finalizer; whitens the seed/label mix before seeding.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace levitrap
