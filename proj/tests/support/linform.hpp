#pragma once
// Affine-linear forms c0 + sum_i c_i alpha_i over exact rationals: a scalar
// type just rich enough to push a symbolic parameter vector through the
// beta-block plumbing. A product of two non-constant forms would leave the
// affine-linear world, so it throws: any expression under test that triggers
// it is not the affine-linear identity it claims to be.

#include <array>
#include <stdexcept>

#include "pvi6/rational.hpp"
#include "pvi6/scalar.hpp"

namespace pvi6_test {

struct LinForm {
  std::array<pvi6::Rat, 8> c{};  // c[0] constant, c[1+i] multiplies alpha_i

  LinForm() = default;
  explicit LinForm(const pvi6::Rat& k) { c[0] = k; }
  static LinForm var(int i) {
    LinForm f;
    f.c[1 + i] = 1;
    return f;
  }
  bool constant() const {
    for (int i = 1; i < 8; ++i)
      if (sgn(c[i]) != 0) return false;
    return true;
  }
  bool operator==(const LinForm&) const = default;
};

inline LinForm operator+(LinForm a, const LinForm& b) {
  for (int i = 0; i < 8; ++i) a.c[i] += b.c[i];
  return a;
}

inline LinForm operator-(LinForm a, const LinForm& b) {
  for (int i = 0; i < 8; ++i) a.c[i] -= b.c[i];
  return a;
}

inline LinForm operator-(LinForm a) {
  for (auto& x : a.c) x = -x;
  return a;
}

inline LinForm operator*(const LinForm& a, const LinForm& b) {
  const LinForm* k = a.constant() ? &a : (b.constant() ? &b : nullptr);
  if (!k) throw std::logic_error("LinForm: product of two non-constant forms");
  const LinForm& v = (k == &a) ? b : a;
  LinForm out;
  for (int i = 0; i < 8; ++i) out.c[i] = k->c[0] * v.c[i];
  return out;
}

inline LinForm operator/(LinForm a, const LinForm& b) {
  if (!b.constant() || sgn(b.c[0]) == 0)
    throw std::logic_error("LinForm: division by a non-constant or zero form");
  for (auto& x : a.c) x /= b.c[0];
  return a;
}

}  // namespace pvi6_test

namespace pvi6 {

template <>
struct ScalarTraits<pvi6_test::LinForm> {
  static constexpr bool exact = true;
  static pvi6_test::LinForm from_long(long n) { return pvi6_test::LinForm(Rat(n)); }
  static pvi6_test::LinForm from_rational(const Rat& r) { return pvi6_test::LinForm(r); }
};

}  // namespace pvi6
