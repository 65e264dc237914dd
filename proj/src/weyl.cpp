#include "pvi6/weyl.hpp"

#include <sstream>

#include "pvi6/errors.hpp"
#include "pvi6/rng.hpp"

namespace pvi6 {

std::string generator_name(const Generator& g) {
  return (g.kind == Generator::Kind::Reflection ? "r" : "pi") + std::to_string(g.index);
}

Generator parse_generator(const std::string& name) {
  if (name.size() == 2 && name[0] == 'r' && name[1] >= '0' && name[1] <= '6')
    return Generator::r(name[1] - '0');
  if (name == "pi1") return Generator::pi(1);
  if (name == "pi2") return Generator::pi(2);
  throw ConfigError("unknown generator '" + name + "' (expected r0..r6, pi1, pi2)");
}

WeylWord parse_word(const std::string& text) {
  std::string norm = text;
  for (auto& c : norm)
    if (c == ',') c = ' ';
  WeylWord w;
  std::string tok;
  std::istringstream in(norm);
  while (in >> tok) w.push_back(parse_generator(tok));
  return w;
}

const std::vector<Generator>& all_generators() {
  static const std::vector<Generator> gens = [] {
    std::vector<Generator> g;
    for (int i = 0; i < 7; ++i) g.push_back(Generator::r(i));
    g.push_back(Generator::pi(1));
    g.push_back(Generator::pi(2));
    return g;
  }();
  return gens;
}

const std::array<int, 7>& sigma(int i) {
  if (i == 1) return kSigma1;
  if (i == 2) return kSigma2;
  throw ConfigError("automorphism index must be 1 or 2");
}

RatMat7 identity_matrix7() {
  RatMat7 m{};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) m[i][j] = Rat(i == j ? 1 : 0);
  return m;
}

RatMat7 multiply(const RatMat7& a, const RatMat7& b) {
  RatMat7 c{};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      Rat acc(0);
      for (int k = 0; k < 7; ++k) acc += a[i][k] * b[k][j];
      c[i][j] = acc;
    }
  return c;
}

RatMat7 generator_matrix(const Generator& g) {
  // Row j of M gives alpha'_j, matching apply_generator_params.
  RatMat7 m = identity_matrix7();
  if (g.kind == Generator::Kind::Reflection) {
    const int i = g.index;
    for (int j = 0; j < 7; ++j) m[j][i] -= Rat(kCartanE6[i][j]);
  } else {
    const auto& sg = sigma(g.index);
    m = RatMat7{};
    for (int j = 0; j < 7; ++j) m[sg[j]][j] = Rat(1);
  }
  return m;
}

RatMat7 word_matrix(const WeylWord& w) {
  RatMat7 m = identity_matrix7();
  for (const auto& g : w) m = multiply(generator_matrix(g), m);
  return m;
}

Rat determinant(RatMat7 m) {
  Rat det(1);
  for (int col = 0; col < 7; ++col) {
    int pivot = -1;
    for (int row = col; row < 7; ++row)
      if (sgn(m[row][col]) != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) return Rat(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rat inv = Rat(1) / m[col][col];
    for (int row = col + 1; row < 7; ++row) {
      if (sgn(m[row][col]) == 0) continue;
      Rat f = m[row][col] * inv;
      for (int j = col; j < 7; ++j) m[row][j] -= f * m[col][j];
    }
  }
  return det;
}

const std::vector<Relation>& relation_catalogue() {
  static const std::vector<Relation> cat = [] {
    std::vector<Relation> rels;
    auto rw = [](std::initializer_list<Generator> gs) { return WeylWord(gs); };
    for (int i = 0; i < 7; ++i)
      rels.push_back({"r" + std::to_string(i) + "^2",
                      rw({Generator::r(i), Generator::r(i)}), {}});
    for (int i = 0; i < 7; ++i)
      for (int j = i + 1; j < 7; ++j) {
        int m = 2 - kCartanE6[i][j];  // order of r_i r_j: 2 if disconnected, 3 if joined
        WeylWord w;
        for (int k = 0; k < m; ++k) {
          w.push_back(Generator::r(i));
          w.push_back(Generator::r(j));
        }
        rels.push_back({"(r" + std::to_string(i) + " r" + std::to_string(j) + ")^" +
                            std::to_string(m),
                        w,
                        {}});
      }
    rels.push_back({"pi1^2", rw({Generator::pi(1), Generator::pi(1)}), {}});
    rels.push_back({"pi2^2", rw({Generator::pi(2), Generator::pi(2)}), {}});
    {
      WeylWord w;
      for (int k = 0; k < 3; ++k) {
        w.push_back(Generator::pi(1));
        w.push_back(Generator::pi(2));
      }
      rels.push_back({"(pi1 pi2)^3", w, {}});
    }
    // pi_i r_j = r_{sigma_i(j)} pi_i; as left-to-right words the lhs applies
    // r_j first, the rhs applies pi_i first.
    for (int i = 1; i <= 2; ++i)
      for (int j = 0; j < 7; ++j) {
        int sj = sigma(i)[j];
        rels.push_back({"pi" + std::to_string(i) + " r" + std::to_string(j) + " = r" +
                            std::to_string(sj) + " pi" + std::to_string(i),
                        rw({Generator::r(j), Generator::pi(i)}),
                        rw({Generator::pi(i), Generator::r(sj)})});
      }
    return rels;
  }();
  return cat;
}

VerificationReport verify_parameter_relations(std::uint64_t seed, long trials, long bound) {
  VerificationReport rep;
  rep.claim = "relations:parameters";
  rep.seed = seed;
  rep.pass = true;

  const auto& cat = relation_catalogue();
  for (const auto& rel : cat) {
    RatMat7 lhs = word_matrix(rel.lhs);
    RatMat7 rhs = rel.rhs.empty() ? identity_matrix7() : word_matrix(rel.rhs);
    ++rep.trials;
    if (!(lhs == rhs)) {
      rep.pass = false;
      Counterexample ce;
      ce.trial = -1;
      ce.mismatch = "matrix identity fails for relation " + rel.name;
      rep.counterexample = ce;
      return rep;
    }
  }

  for (long t = 0; t < trials; ++t) {
    SplitMix64 rng = trial_stream(seed, t);
    ParameterVector<Rat> a;
    for (auto& x : a) x = sample_rational(rng, bound);
    for (const auto& rel : cat) {
      ++rep.trials;
      auto lhs = apply_word_params(rel.lhs, a);
      auto rhs = rel.rhs.empty() ? a : apply_word_params(rel.rhs, a);
      if (lhs != rhs) {
        rep.pass = false;
        Counterexample ce;
        ce.trial = t;
        ce.mismatch = "parameter action differs for relation " + rel.name;
        for (const auto& x : a) ce.alpha.push_back(x.get_str());
        rep.counterexample = ce;
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace pvi6
