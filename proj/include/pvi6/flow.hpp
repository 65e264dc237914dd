#pragma once
#include <array>
#include <string>
#include <vector>

#include "pvi6/backlund.hpp"
#include "pvi6/hamiltonian.hpp"
#include "pvi6/weyl.hpp"

namespace pvi6 {

struct IntegrationConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 0;  // 0: pick automatically from the field at the start
  long max_steps = 100000;
  bool dense = true;  // keep per-step interpolation coefficients
};

/// Quartic Hermite-type interpolation data for one accepted step.
struct DenseSegment {
  double s0 = 0, h = 0;
  std::array<std::array<double, 6>, 5> c{};
};

/// State order in y is (q1,q2,q3,p1,p2,p3); the CSV layer interleaves.
struct Trajectory {
  std::vector<double> s;
  std::vector<std::array<double, 6>> y;
  std::vector<DenseSegment> segments;
  long accepted = 0, rejected = 0;
  double last_error = 0;  // scaled error estimate of the final accepted step

  /// Dense evaluation anywhere inside the integrated window.
  std::array<double, 6> eval(double si) const;
};

/// Integrates the non-autonomous Hamilton equations from z0.s to s_end.
/// The window [z0.s, s_end] must not touch {0, 1}. Throws StepUnderflow /
/// MaxStepsExceeded on integrator failure, ConfigError on a bad window.
Trajectory integrate(const PhasePoint<double>& z0, const ParameterVector<double>& alpha,
                     double s_end, const IntegrationConfig& cfg = {});

/// Columns "s,q1,p1,q2,p2,q3,p3", every value with 17 significant digits, so
/// write -> read -> write reproduces bytes exactly.
std::string trajectory_to_csv(const Trajectory& tr);
Trajectory trajectory_from_csv(const std::string& text);

struct CovarianceResult {
  Generator g;
  double max_deviation = 0;
  long compared_points = 0;
  Trajectory direct;       // integration of the transformed initial data
  Trajectory transported;  // the transformation applied at each reference node
};

/// Compares "transform then integrate" against "integrate then transform"
/// on the reference trajectory's own grid (dense output bridges the grids).
CovarianceResult covariance_experiment(const Generator& g, const PhasePoint<double>& z0,
                                       const ParameterVector<double>& alpha, double s_end,
                                       const IntegrationConfig& cfg = {},
                                       const TransformOptions& topt = {});

}  // namespace pvi6
