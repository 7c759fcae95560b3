#pragma once

#include <cstdint>
#include <random>

namespace bgsp {

// Deterministic, stream-addressed random source.
//
// Seeding goes through a splitmix64 mix of (seed, stream) so that independent
// streams (one per surrogate realization, per subject, ...) can be drawn in
// any order — including in parallel — and still reproduce bit-identically.
// The raw engine is std::mt19937_64, whose 64-bit output sequence is fixed by
// the standard; the uniform/normal transforms below are written out explicitly
// because the std::*_distribution adapters are implementation-defined and
// would break cross-platform reproducibility of seeded runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : Rng(seed, 0) {}
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64() { return eng_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t uniform_below(std::uint64_t n);

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal();

  // Fair coin in {-1.0, +1.0}.
  double sign() { return (next_u64() & 1u) ? 1.0 : -1.0; }

 private:
  std::mt19937_64 eng_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

// The splitmix64 finalizer used for stream derivation; exposed for tests.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace bgsp
