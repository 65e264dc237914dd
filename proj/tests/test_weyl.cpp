#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "pvi6/errors.hpp"
#include "pvi6/rng.hpp"
#include "pvi6/weyl.hpp"

using namespace pvi6;

namespace {

ParameterVector<Rat> sample_params(SplitMix64& rng, long bound) {
  ParameterVector<Rat> a;
  for (auto& x : a) x = sample_rational(rng, bound);
  return a;
}

WeylWord random_word(SplitMix64& rng, int len) {
  WeylWord w;
  for (int k = 0; k < len; ++k)
    w.push_back(all_generators()[static_cast<std::size_t>(rng.below(9))]);
  return w;
}

}  // namespace

TEST_CASE("Cartan matrix is symmetric with diagonal 2 and marks in its kernel") {
  for (int i = 0; i < 7; ++i) {
    CHECK(kCartanE6[i][i] == 2);
    for (int j = 0; j < 7; ++j) {
      CHECK(kCartanE6[i][j] == kCartanE6[j][i]);
      if (i != j) CHECK((kCartanE6[i][j] == 0 || kCartanE6[i][j] == -1));
    }
  }
  for (int i = 0; i < 7; ++i) {
    long acc = 0;
    for (int j = 0; j < 7; ++j) acc += static_cast<long>(kCartanE6[i][j]) * kMarks[j];
    CHECK(acc == 0);
  }
}

TEST_CASE("diagram shape: A5 chain 1-2-3-4-5, branch 3-6, affine node on 6") {
  auto degree = [](int i) {
    int d = 0;
    for (int j = 0; j < 7; ++j)
      if (j != i && kCartanE6[i][j] == -1) ++d;
    return d;
  };
  CHECK(degree(0) == 1);
  CHECK(degree(1) == 1);
  CHECK(degree(5) == 1);
  CHECK(degree(2) == 2);
  CHECK(degree(4) == 2);
  CHECK(degree(6) == 2);
  CHECK(degree(3) == 3);
  CHECK(kCartanE6[0][6] == -1);
  CHECK(kCartanE6[6][3] == -1);
  CHECK(kCartanE6[0][3] == 0);
}

TEST_CASE("generator names round-trip; words parse tolerantly") {
  CHECK(all_generators().size() == 9);
  for (const auto& g : all_generators()) CHECK(parse_generator(generator_name(g)) == g);
  CHECK(parse_word("").empty());
  CHECK(parse_word("r1,r2,pi1").size() == 3);
  CHECK(parse_word("r1, r2") == parse_word("r1 r2"));
  CHECK(parse_word("r0,pi2")[1] == Generator::pi(2));
  CHECK_THROWS_AS(parse_generator("r7"), ConfigError);
  CHECK_THROWS_AS(parse_generator("pi3"), ConfigError);
  CHECK_THROWS_AS(parse_generator("x1"), ConfigError);
  CHECK_THROWS_AS(parse_word("r1,bogus"), ConfigError);
}

TEST_CASE("sigma permutations are the advertised involutions") {
  for (int i = 1; i <= 2; ++i) {
    const auto& sg = sigma(i);
    for (int j = 0; j < 7; ++j) CHECK(sg[sg[j]] == j);
  }
  CHECK(sigma(1)[0] == 1);
  CHECK(sigma(1)[2] == 6);
  CHECK(sigma(1)[3] == 3);
  CHECK(sigma(2)[0] == 5);
  CHECK(sigma(2)[4] == 6);
  CHECK(sigma(2)[2] == 2);
  // each sigma is a diagram automorphism: it preserves the Cartan matrix
  for (int i = 1; i <= 2; ++i) {
    const auto& sg = sigma(i);
    for (int a = 0; a < 7; ++a)
      for (int b = 0; b < 7; ++b) CHECK(kCartanE6[sg[a]][sg[b]] == kCartanE6[a][b]);
  }
}

TEST_CASE("reflections have determinant -1, automorphisms +1") {
  for (int i = 0; i < 7; ++i) CHECK(determinant(generator_matrix(Generator::r(i))) == Rat(-1));
  CHECK(determinant(generator_matrix(Generator::pi(1))) == Rat(1));
  CHECK(determinant(generator_matrix(Generator::pi(2))) == Rat(1));
  CHECK(determinant(identity_matrix7()) == Rat(1));
}

TEST_CASE("r2 acts on parameters by its closed form") {
  SplitMix64 rng(7);
  for (int t = 0; t < 20; ++t) {
    auto a = sample_params(rng, 30);
    auto b = apply_generator_params(Generator::r(2), a);
    CHECK(b[2] == -a[2]);
    CHECK(b[1] == a[1] + a[2]);
    CHECK(b[3] == a[3] + a[2]);
    CHECK(b[0] == a[0]);
    CHECK(b[4] == a[4]);
    CHECK(b[5] == a[5]);
    CHECK(b[6] == a[6]);
  }
}

TEST_CASE("r3 spreads alpha_3 to all three neighbours") {
  ParameterVector<Rat> a{Rat(1), Rat(2), Rat(3), Rat(5), Rat(7), Rat(11), Rat(13)};
  auto b = apply_generator_params(Generator::r(3), a);
  CHECK(b[3] == Rat(-5));
  CHECK(b[2] == Rat(8));
  CHECK(b[4] == Rat(12));
  CHECK(b[6] == Rat(18));
  CHECK(b[0] == Rat(1));
  CHECK(b[1] == Rat(2));
  CHECK(b[5] == Rat(11));
}

TEST_CASE("automorphisms permute parameters by sigma") {
  SplitMix64 rng(8);
  auto a = sample_params(rng, 30);
  auto b = apply_generator_params(Generator::pi(1), a);
  CHECK(b[0] == a[1]);
  CHECK(b[1] == a[0]);
  CHECK(b[2] == a[6]);
  CHECK(b[6] == a[2]);
  CHECK(b[3] == a[3]);
  CHECK(b[4] == a[4]);
  CHECK(b[5] == a[5]);
  auto c = apply_generator_params(Generator::pi(2), a);
  CHECK(c[0] == a[5]);
  CHECK(c[5] == a[0]);
  CHECK(c[4] == a[6]);
  CHECK(c[6] == a[4]);
  CHECK(c[1] == a[1]);
  CHECK(c[2] == a[2]);
  CHECK(c[3] == a[3]);
}

TEST_CASE("matrix action agrees with the direct action on random words") {
  SplitMix64 rng(9);
  for (int t = 0; t < 12; ++t) {
    auto a = sample_params(rng, 20);
    WeylWord w = random_word(rng, static_cast<int>(rng.below(9)));
    auto direct = apply_word_params(w, a);
    RatMat7 m = word_matrix(w);
    for (int j = 0; j < 7; ++j) {
      Rat acc(0);
      for (int k = 0; k < 7; ++k) acc += m[j][k] * a[k];
      CHECK(acc == direct[j]);
    }
  }
}

TEST_CASE("the marks-weighted level is invariant under every word") {
  SplitMix64 rng(10);
  for (int t = 0; t < 12; ++t) {
    auto a = sample_params(rng, 20);
    WeylWord w = random_word(rng, 12);
    CHECK(level(apply_word_params(w, a)) == level(a));
  }
  // and under each generator singly
  auto a = sample_params(rng, 20);
  for (const auto& g : all_generators())
    CHECK(level(apply_generator_params(g, a)) == level(a));
}

TEST_CASE("relation catalogue: 45 relations, all exact on matrices") {
  const auto& cat = relation_catalogue();
  CHECK(cat.size() == 45);
  int identity_rels = 0, exchange_rels = 0;
  for (const auto& rel : cat) {
    CHECK(!rel.name.empty());
    RatMat7 lhs = word_matrix(rel.lhs);
    RatMat7 rhs = rel.rhs.empty() ? identity_matrix7() : word_matrix(rel.rhs);
    CHECK(lhs == rhs);
    if (rel.rhs.empty())
      ++identity_rels;
    else
      ++exchange_rels;
  }
  CHECK(identity_rels == 31);  // 7 squares + 21 braids + pi1^2, pi2^2, (pi1 pi2)^3
  CHECK(exchange_rels == 14);  // pi_i r_j = r_{sigma_i(j)} pi_i
}

TEST_CASE("braid relations have the order dictated by the diagram") {
  // adjacent nodes: (r_i r_j)^3 = 1, non-adjacent: (r_i r_j)^2 = 1
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) {
      WeylWord pair{Generator::r(i), Generator::r(j)};
      int order = kCartanE6[i][j] == -1 ? 3 : 2;
      WeylWord w;
      for (int k = 0; k < order; ++k) {
        w.push_back(pair[0]);
        w.push_back(pair[1]);
      }
      CHECK(word_matrix(w) == identity_matrix7());
      // and the lower power is not the identity
      WeylWord shorter(w.begin(), w.end() - 2);
      CHECK(word_matrix(shorter) != identity_matrix7());
    }
}

TEST_CASE("randomized parameter-level verification passes") {
  VerificationReport rep = verify_parameter_relations(123, 5, 10);
  CHECK(rep.pass);
  CHECK(rep.claim == "relations:parameters");
  CHECK(!rep.counterexample.has_value());
  CHECK(rep.seed == 123);
}
