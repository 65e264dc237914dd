#pragma once
#include <stdexcept>
#include <string>

namespace pvi6 {

/// Evaluation of a vector field or flow at s in {0, 1}, where the system is singular.
struct SingularIndependentVariable : std::domain_error {
  using std::domain_error::domain_error;
};

/// A Backlund transformation hit the zero locus of its divisor phi_i.
struct SingularTransformation : std::domain_error {
  int generator_phi;  ///< index i of the vanishing phi_i
  int word_position;  ///< position within the word being applied (0 for a single generator)
  SingularTransformation(int phi, int pos, const std::string& what)
      : std::domain_error(what), generator_phi(phi), word_position(pos) {}
};

/// Rejection sampling failed to find an admissible point within the retry budget.
struct ResampleExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive integrator drove the step size below representable progress.
struct StepUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive integrator exceeded its step budget.
struct MaxStepsExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A loop-algebra bracket escaped the finite truncation window |n| <= N.
struct TruncationOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Element is not homogeneous for the principal gradation.
struct NotHomogeneous : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input (state files, option combinations).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pvi6
