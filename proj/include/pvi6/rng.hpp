#pragma once
#include <cstdint>

#include "pvi6/rational.hpp"

namespace pvi6 {

/// SplitMix64: tiny, deterministic, and trivially splittable into independent
/// per-trial streams. Reports quote the master seed; every trial derives its
/// own stream from (seed, trial index), so results are independent of trial
/// scheduling (serial or parallel).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n). Modulo bias is irrelevant here: draws feed rejection
  /// sampling of small witnesses, and only determinism is contractual.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  long range(long lo, long hi) {  // inclusive bounds
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double uniform01() { return (next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::uint64_t state_;
};

/// Stream for trial t of a run with master seed `seed`.
inline SplitMix64 trial_stream(std::uint64_t seed, long trial) {
  return SplitMix64(seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(trial + 1));
}

/// Random rational with |numerator| <= bound, 1 <= denominator <= bound.
/// Draw order (numerator first) is part of the reproducibility contract.
inline Rat sample_rational(SplitMix64& rng, long bound) {
  long num = rng.range(-bound, bound);
  long den = rng.range(1, bound);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat sample_nonzero_rational(SplitMix64& rng, long bound) {
  for (;;) {
    Rat r = sample_rational(rng, bound);
    if (sgn(r) != 0) return r;
  }
}

}  // namespace pvi6
