#pragma once

// Deterministic case streams. Every generated datum is a function of
// (seed, suite id, case index) only:
//
//   stream seed = splitmix64(seed ^ splitmix64(fnv1a64(suite) ^ splitmix64(case)))
//
// which seeds a std::mt19937_64 (a fully specified engine). Bounded draws use
// rejection sampling on the raw 64-bit output, never the
// implementation-defined std::uniform_int_distribution.

#include <cstdint>
#include <random>
#include <string_view>

namespace sdg::harness {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

inline constexpr std::uint64_t stream_seed(std::uint64_t seed, std::string_view suite, std::uint64_t case_index) {
  return splitmix64(seed ^ splitmix64(fnv1a64(suite) ^ splitmix64(case_index)));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::string_view suite, std::uint64_t case_index)
      : engine_(stream_seed(seed, suite, case_index)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do r = next();
    while (r >= limit);
    return lo + static_cast<long>(r % span);
  }

  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sdg::harness
