#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pvi6 {

/// Witness for a failed randomized check, serialization-ready (all scalars as
/// strings so exact and floating modes share one shape).
struct Counterexample {
  long trial = -1;
  std::string mismatch;          // what differed, human-readable
  std::vector<std::string> alpha;
  std::vector<std::string> q, p; // empty for parameter-level claims
  std::string s;                 // empty if not applicable
};

/// Outcome of one verification claim. `trials` counts the checks actually
/// performed; `seed` is the master seed the run quoted (0 for deterministic,
/// non-randomized claims).
struct VerificationReport {
  std::string claim;
  bool pass = false;
  long trials = 0;
  std::uint64_t seed = 0;
  std::optional<Counterexample> counterexample;
};

}  // namespace pvi6
