#pragma once

#include <cstdint>
#include <random>

namespace qnlp {

// Seeded generator with a bit-exact mapping to doubles and bounded integers.
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard; the distributions are done by hand because the std:: ones are
// implementation-defined.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound). Modulo bias is below 2^-40 for the sizes used here.
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

  // +1 or -1 with equal probability (top bit of the next draw).
  int rademacher() { return (engine_() >> 63) ? 1 : -1; }

private:
  std::mt19937_64 engine_;
};

// Independent streams derived from one run seed, so adding a consumer never
// shifts the draws of another.
enum class Stream : std::uint64_t {
  Split = 0x5eed0001,
  Init = 0x5eed0002,
  Optimizer = 0x5eed0003,
  Shots = 0x5eed0004,
};

inline std::uint64_t stream_seed(std::uint64_t seed, Stream stream) {
  // splitmix64 finalizer over (seed, stream)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(stream);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace qnlp
