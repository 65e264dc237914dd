#pragma once
#include <cmath>
#include <cstdio>
#include <string>

#include "pvi6/dual.hpp"
#include "pvi6/prime_field.hpp"
#include "pvi6/rational.hpp"

namespace pvi6 {

/// Uniform interface over the scalar types the laboratory runs on:
/// exact rationals, doubles, the Mersenne prime field, and duals over any of
/// them. Generic code obtains constants through from_long / from_rational and
/// never relies on implicit int conversions.
template <typename S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rat> {
  static constexpr bool exact = true;
  static Rat from_long(long n) { return Rat(n); }
  static Rat from_rational(const Rat& r) { return r; }
  static bool near_zero(const Rat& x, double /*thr*/) { return sgn(x) == 0; }
  static bool is_long(const Rat& x, long n) { return x == n; }
  static std::string to_string(const Rat& x) { return x.get_str(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double from_long(long n) { return static_cast<double>(n); }
  static double from_rational(const Rat& r) { return r.get_d(); }
  static bool near_zero(double x, double thr) { return std::fabs(x) < thr; }
  static bool is_long(double x, long n) { return x == static_cast<double>(n); }
  static std::string to_string(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
};

template <>
struct ScalarTraits<Fp61> {
  static constexpr bool exact = true;
  static Fp61 from_long(long n) { return Fp61(n); }
  static Fp61 from_rational(const Rat& r) { return Fp61::from_rational(r); }
  static bool near_zero(Fp61 x, double /*thr*/) { return x.is_zero(); }
  static bool is_long(Fp61 x, long n) { return x == Fp61(n); }
  static std::string to_string(Fp61 x) { return x.to_string(); }
};

template <typename T, int N>
struct ScalarTraits<Dual<T, N>> {
  static constexpr bool exact = ScalarTraits<T>::exact;
  static Dual<T, N> from_long(long n) { return Dual<T, N>(ScalarTraits<T>::from_long(n)); }
  static Dual<T, N> from_rational(const Rat& r) {
    return Dual<T, N>(ScalarTraits<T>::from_rational(r));
  }
  /// Singularity is a property of the evaluation point, i.e. the value part.
  static bool near_zero(const Dual<T, N>& x, double thr) {
    return ScalarTraits<T>::near_zero(x.val, thr);
  }
  static bool is_long(const Dual<T, N>& x, long n) {
    return ScalarTraits<T>::is_long(x.val, n);
  }
  static std::string to_string(const Dual<T, N>& x) {
    std::string s = ScalarTraits<T>::to_string(x.val) + " + eps*[";
    for (int k = 0; k < N; ++k) {
      if (k) s += ", ";
      s += ScalarTraits<T>::to_string(x.der[k]);
    }
    return s + "]";
  }
};

}  // namespace pvi6
