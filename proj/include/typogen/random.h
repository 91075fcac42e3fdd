#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace typogen {

// Deterministic across platforms: mt19937_64 output is fixed by the standard,
// and all derived draws below are computed here instead of through the
// implementation-defined <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

  // Uniform integer in [0, n); n must be positive.
  std::size_t below(std::size_t n);

  // Index i drawn with probability proportional to the i-th increment of a
  // non-decreasing cumulative weight vector.
  std::size_t pick(std::span<const double> cumulative);

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer over (seed, stream); used to derive per-record seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

inline constexpr std::uint64_t kDefaultSeed = 20200707;

}  // namespace typogen
