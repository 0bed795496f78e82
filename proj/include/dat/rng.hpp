#pragma once

#include <cstdint>

#include "dat/rational.hpp"

namespace dat {

/// SplitMix64 (Steele/Lea/Flood). Chosen as the project-wide randomness
/// source because its output sequence is fixed by the algorithm itself,
/// so seeded runs reproduce bit-identically on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw from {0, ..., bound-1} via rejection sampling (unbiased).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t u;
    do {
      u = next();
    } while (u >= limit);
    return u % bound;
  }

 private:
  std::uint64_t state_;
};

/// Stable seed for the `stream`-th independent substream of `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mix(seed ^ (0xA24BAED4963EE407ULL + stream * 0x9E3779B97F4A7C15ULL));
  return mix.next();
}

/// True with probability p (clamped to [0,1]). Compares a uniform 64-bit
/// draw u against the exact rational threshold p*2^64, so the bias relative
/// to p is below 2^-64.
inline bool bernoulli(SplitMix64& rng, const Rational& p) {
  if (p.sign() <= 0) return false;
  if (p >= Rational(1)) return true;
  const std::uint64_t u = rng.next();
  mpz_class lhs = mpz_class(mpz_class(u >> 32) << 32) + mpz_class(static_cast<unsigned long>(u & 0xFFFFFFFFULL));
  lhs *= p.den();
  mpz_class rhs = p.num() << 64;
  return lhs < rhs;
}

}  // namespace dat
