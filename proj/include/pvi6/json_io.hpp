#pragma once

#include <string>

#include "pvi6/hamiltonian.hpp"
#include "pvi6/report.hpp"
#include "pvi6/weyl.hpp"

namespace pvi6 {

/// Leaf convention for parameter/state files: exact files carry every value
/// as a rational string ("num/den" or "num"), float files as JSON numbers.
/// The two kinds never mix within one file.
enum class NumberMode { Exact, Float };

struct ParamsFile {
  NumberMode mode = NumberMode::Exact;
  ParameterVector<Rat> alpha{};       // exact view (float leaves converted exactly)
  ParameterVector<double> alpha_f{};  // double view (exact leaves rounded)
};

struct StateFile {
  NumberMode mode = NumberMode::Exact;
  ParameterVector<Rat> alpha{};
  PhasePoint<Rat> point{};
  ParameterVector<double> alpha_f{};
  PhasePoint<double> point_f{};
};

ParamsFile params_from_json(const std::string& text);
std::string params_to_json(const ParameterVector<Rat>& alpha);
std::string params_to_json(const ParameterVector<double>& alpha);

StateFile state_from_json(const std::string& text);
std::string state_to_json(const ParameterVector<Rat>& alpha, const PhasePoint<Rat>& z);
std::string state_to_json(const ParameterVector<double>& alpha, const PhasePoint<double>& z);

std::string report_to_json(const VerificationReport& rep);
VerificationReport report_from_json(const std::string& text);

std::string matrix_to_json(const RatMat7& m);
RatMat7 matrix_from_json(const std::string& text);

std::string cartan_to_json();

}  // namespace pvi6
