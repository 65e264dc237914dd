#pragma once
#include <cstdint>

#include "pvi6/report.hpp"
#include "pvi6/weyl.hpp"

namespace pvi6 {

/// Arithmetic the randomized checks run in. Both are exact; the prime field
/// trades certainty-over-Q for speed (a false identity survives mod p only
/// with probability ~deg/p per sample).
enum class ArithmeticMode { ExactRational, PrimeField };

struct TrialConfig {
  long trials = 100;
  std::uint64_t seed = 0xE6;
  long bound = 20;           // numerators/denominators of sampled witnesses
  ArithmeticMode mode = ArithmeticMode::ExactRational;
  int jobs = 1;              // worker threads; results independent of scheduling
  long resample_cap = 100;   // rejection-sampling retries per trial
};

/// Solution-preservation of a single generator: the pushforward of the
/// Hamiltonian direction field equals the direction field of the transformed
/// parameters at the transformed point, checked exactly per trial.
VerificationReport check_theorem1(const Generator& g, const TrialConfig& cfg);
/// All nine generators, aggregated.
VerificationReport check_theorem1_all(const TrialConfig& cfg);

/// One defining relation, acting on sampled phase-space states.
VerificationReport check_phase_relation(const Relation& rel, const TrialConfig& cfg);
/// Every catalogued relation, cfg.trials states each.
VerificationReport check_phase_relations(const TrialConfig& cfg);
/// Parameter matrices exactly + parameter trials + phase trials.
VerificationReport check_relations(const TrialConfig& cfg);

/// Jacobian symplecticity J^T Omega J = Omega of one generator at sampled
/// points (exact arithmetic; Omega in (q1,q2,q3,p1,p2,p3) ordering).
VerificationReport check_canonicity(const Generator& g, const TrialConfig& cfg);
VerificationReport check_canonicity_all(const TrialConfig& cfg);

/// On the locus where two of the three coupling factors vanish, the surviving
/// block's Hamiltonian partials coincide with the scalar Painleve VI ones.
VerificationReport check_degeneration(const TrialConfig& cfg);

}  // namespace pvi6
