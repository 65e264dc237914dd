#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdint>
#include <set>

#include "pvi6/dual.hpp"
#include "pvi6/errors.hpp"
#include "pvi6/prime_field.hpp"
#include "pvi6/rational.hpp"
#include "pvi6/rng.hpp"

using namespace pvi6;

TEST_CASE("rational parsing canonicalizes and round-trips") {
  CHECK(rational_to_string(parse_rational("2/4")) == "1/2");
  CHECK(rational_to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(rational_to_string(parse_rational("6/-4")) == "-3/2");
  CHECK(rational_to_string(parse_rational("7")) == "7");
  CHECK(rational_to_string(parse_rational("-0")) == "0");
  CHECK(rational_to_string(parse_rational("+3")) == "3");
  CHECK(rational_to_string(parse_rational("+1/+2")) == "1/2");
  CHECK(parse_rational("123456789012345678901234567890/2") ==
        parse_rational("61728394506172839450617283945"));
}

TEST_CASE("rational parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_rational("abc"), ConfigError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), ConfigError);
  CHECK_THROWS_AS(parse_rational(""), ConfigError);
  CHECK_THROWS_AS(parse_rational("   "), ConfigError);
  CHECK_THROWS_AS(parse_rational("1.5"), ConfigError);
  CHECK_THROWS_AS(parse_rational("1e3"), ConfigError);
  CHECK_THROWS_AS(parse_rational(" 3/5 "), ConfigError);  // strict: no padding
  CHECK_THROWS_AS(parse_rational("2 /3"), ConfigError);
  CHECK_THROWS_AS(parse_rational("--2"), ConfigError);
  CHECK_THROWS_AS(parse_rational("/3"), ConfigError);
  CHECK_THROWS_AS(parse_rational("3/"), ConfigError);
}

TEST_CASE("dual numbers differentiate polynomial and quotient expressions") {
  using D = Dual<Rat, 2>;
  D x = D::variable(Rat(3), 0);
  D y = D::variable(Rat(5), 1);

  D f = x * x * y;  // d/dx = 2xy, d/dy = x^2
  CHECK(f.val == Rat(45));
  CHECK(f.der[0] == Rat(30));
  CHECK(f.der[1] == Rat(9));

  D g = x / y;  // d/dx = 1/y, d/dy = -x/y^2
  CHECK(g.val == Rat(3, 5));
  CHECK(g.der[0] == Rat(1, 5));
  CHECK(g.der[1] == Rat(-3, 25));

  D h = (x + y) * (x - y);  // x^2 - y^2
  CHECK(h.val == Rat(-16));
  CHECK(h.der[0] == Rat(6));
  CHECK(h.der[1] == Rat(-10));
}

TEST_CASE("nested duals expose second derivatives") {
  using Inner = Dual<Rat, 1>;
  using Outer = Dual<Inner, 1>;
  // x as a doubly-seeded variable: outer and inner slots both carry dx.
  Outer x = Outer::variable(Inner::variable(Rat(3), 0), 0);
  Outer f = x * x * x;  // f'' = 6x = 18 at x = 3
  CHECK(f.val.val == Rat(27));
  CHECK(f.val.der[0] == Rat(27));   // f' via the inner slot
  CHECK(f.der[0].val == Rat(27));   // f' via the outer slot
  CHECK(f.der[0].der[0] == Rat(18));
}

TEST_CASE("dual seeding and comparison semantics") {
  using D = Dual<Rat, 3>;
  D c(Rat(4));  // lifted constant: zero derivative
  for (int k = 0; k < 3; ++k) CHECK(c.der[k] == 0);

  std::array<Rat, 3> seed{Rat(1), Rat(-2), Rat(1, 2)};
  D s = D::seeded(Rat(7), seed);
  D lin = s * D(Rat(3));
  CHECK(lin.val == Rat(21));
  CHECK(lin.der[0] == Rat(3));
  CHECK(lin.der[1] == Rat(-6));
  CHECK(lin.der[2] == Rat(3, 2));

  CHECK(D::variable(Rat(1), 0) != D(Rat(1)));
  CHECK(D(Rat(1)) == D(Rat(1)));
}

TEST_CASE("prime field arithmetic satisfies the field axioms") {
  const std::uint64_t p = Fp61::p;
  CHECK(p == 2305843009213693951ull);

  CHECK(Fp61(-1) == Fp61::from_raw(p - 1));
  CHECK(Fp61(-1) + Fp61(1) == Fp61(0));
  CHECK(Fp61::from_raw(p) == Fp61(0));
  CHECK(Fp61(7) * Fp61(-3) == Fp61(-21));

  Fp61 a = Fp61::from_raw(0x123456789ABCDEFull);
  Fp61 b = Fp61::from_raw(0xFEDCBA987654321ull);
  CHECK(a * b == b * a);
  CHECK((a + b) * a == a * a + b * a);
  CHECK(a * a.inverse() == Fp61(1));
  CHECK(a.pow(p - 1) == Fp61(1));  // Fermat
  CHECK(a / b * b == a);
  CHECK(-Fp61(0) == Fp61(0));

  CHECK_THROWS_AS(Fp61(0).inverse(), ConfigError);
}

TEST_CASE("prime field embeds rationals when the denominator is a unit") {
  Fp61 half = Fp61::from_rational(Rat(1, 2));
  CHECK(half * Fp61(2) == Fp61(1));
  CHECK(Fp61::from_rational(Rat(-3, 7)) * Fp61(7) == Fp61(-3));
  // denominator divisible by p has no inverse
  CHECK_THROWS_AS(Fp61::from_rational(Rat(1, 2305843009213693951L)), ConfigError);
}

TEST_CASE("splitmix64 reproduces its reference stream") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFull);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ull);
  CHECK(rng.next() == 0x06C45D188009454Full);
}

TEST_CASE("trial streams are deterministic and pairwise distinct") {
  auto first = [](std::uint64_t seed, long t) { return trial_stream(seed, t).next(); };
  CHECK(first(42, 0) == first(42, 0));
  std::set<std::uint64_t> seen;
  for (long t = 0; t < 200; ++t) seen.insert(first(42, t));
  CHECK(seen.size() == 200);
  CHECK(first(42, 0) != first(43, 0));
}

TEST_CASE("sampled rationals are canonical and bounded") {
  SplitMix64 rng(7);
  for (int t = 0; t < 500; ++t) {
    Rat r = sample_rational(rng, 20);
    CHECK(r.get_den() > 0);
    CHECK(r.get_den() <= 20);
    CHECK(abs(r.get_num()) <= 20);
    Rat copy = r;
    copy.canonicalize();
    CHECK(copy == r);
    CHECK(copy.get_den() == r.get_den());
  }
  for (int t = 0; t < 100; ++t) CHECK(sgn(sample_nonzero_rational(rng, 5)) != 0);
}

TEST_CASE("uniform draws stay in range") {
  SplitMix64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    double u = rng.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    long n = rng.range(-3, 3);
    CHECK(n >= -3);
    CHECK(n <= 3);
  }
}
