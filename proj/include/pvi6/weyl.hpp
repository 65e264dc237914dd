#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pvi6/report.hpp"
#include "pvi6/scalar.hpp"

namespace pvi6 {

/// Generalized Cartan matrix of affine type E6, nodes ordered 0..6.
/// Node 0 is the affine node (attached to node 6); node 6 is the branch node
/// attached to node 3 of the A5 chain 1-2-3-4-5.
constexpr std::array<std::array<int, 7>, 7> kCartanE6 = {{
    {2, 0, 0, 0, 0, 0, -1},
    {0, 2, -1, 0, 0, 0, 0},
    {0, -1, 2, -1, 0, 0, 0},
    {0, 0, -1, 2, -1, 0, -1},
    {0, 0, 0, -1, 2, -1, 0},
    {0, 0, 0, 0, -1, 2, 0},
    {-1, 0, 0, -1, 0, 0, 2},
}};

/// Marks: positive integer null vector of the Cartan matrix, normalized so the
/// affine node carries 1. The level functional is sum_i marks[i] * alpha[i].
constexpr std::array<int, 7> kMarks = {1, 1, 2, 3, 2, 1, 2};

/// Diagram automorphism permutations on node indices.
constexpr std::array<int, 7> kSigma1 = {1, 0, 6, 3, 4, 5, 2};  // (01)(26)
constexpr std::array<int, 7> kSigma2 = {5, 1, 2, 3, 6, 0, 4};  // (05)(46)

/// One generator of the extended affine Weyl group: a simple reflection r_i
/// (i = 0..6) or a diagram automorphism pi_i (i = 1..2).
struct Generator {
  enum class Kind { Reflection, Automorphism };
  Kind kind;
  int index;

  static Generator r(int i) { return {Kind::Reflection, i}; }
  static Generator pi(int i) { return {Kind::Automorphism, i}; }
  bool operator==(const Generator&) const = default;
};

using WeylWord = std::vector<Generator>;

std::string generator_name(const Generator& g);
/// Parses "r0".."r6", "pi1", "pi2". Throws ConfigError on anything else.
Generator parse_generator(const std::string& name);
/// Parses a whitespace- or comma-separated word, applied left to right.
WeylWord parse_word(const std::string& text);
/// r0..r6, pi1, pi2 in that order.
const std::vector<Generator>& all_generators();

template <typename S>
using ParameterVector = std::array<S, 7>;

const std::array<int, 7>& sigma(int i);

/// r_i: alpha_j -> alpha_j - a_ij * alpha_i.  pi_i: alpha_j -> alpha_{sigma_i^{-1}(j)}
/// (the sigma here are involutions, so inverse = forward).
template <typename S>
ParameterVector<S> apply_generator_params(const Generator& g, const ParameterVector<S>& a) {
  ParameterVector<S> out;
  if (g.kind == Generator::Kind::Reflection) {
    const int i = g.index;
    for (int j = 0; j < 7; ++j)
      out[j] = a[j] - ScalarTraits<S>::from_long(kCartanE6[i][j]) * a[i];
  } else {
    const auto& sg = sigma(g.index);
    for (int j = 0; j < 7; ++j) out[sg[j]] = a[j];
  }
  return out;
}

/// Words act on data left to right: apply_word_params({a, b}, x) = b(a(x)).
template <typename S>
ParameterVector<S> apply_word_params(const WeylWord& w, ParameterVector<S> a) {
  for (const auto& g : w) a = apply_generator_params(g, a);
  return a;
}

/// Level functional sum_i marks[i] * alpha[i]; every generator preserves it.
template <typename S>
S level(const ParameterVector<S>& a) {
  S acc = ScalarTraits<S>::from_long(0);
  for (int i = 0; i < 7; ++i) acc += ScalarTraits<S>::from_long(kMarks[i]) * a[i];
  return acc;
}

using RatMat7 = std::array<std::array<Rat, 7>, 7>;

RatMat7 identity_matrix7();
RatMat7 multiply(const RatMat7& a, const RatMat7& b);
/// Matrix of a single generator acting on parameter vectors (alpha' = M alpha).
RatMat7 generator_matrix(const Generator& g);
/// Matrix of a word in application order: M_w = M_{g_n} ... M_{g_1}.
RatMat7 word_matrix(const WeylWord& w);
Rat determinant(RatMat7 m);

/// One defining relation of the extended group, expressed as a pair of words
/// that must act identically (rhs empty means lhs = identity).
struct Relation {
  std::string name;
  WeylWord lhs, rhs;
};

/// The full catalogue: r_i^2, (r_i r_j)^{2-a_ij} for i < j, pi_i^2,
/// (pi1 pi2)^3, and pi_i r_j = r_{sigma_i(j)} pi_i for all i, j.
const std::vector<Relation>& relation_catalogue();

/// Checks every catalogued relation exactly on parameter matrices and on
/// `trials` random rational parameter vectors each (numerators/denominators
/// bounded by `bound`).
VerificationReport verify_parameter_relations(std::uint64_t seed, long trials, long bound = 20);

}  // namespace pvi6
