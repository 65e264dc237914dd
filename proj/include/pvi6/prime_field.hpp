#pragma once
#include <cstdint>
#include <string>

#include "pvi6/rational.hpp"

namespace pvi6 {

/// Prime field F_p for the Mersenne prime p = 2^61 - 1. Used as a fast exact
/// arithmetic mode for randomized identity checking: a polynomial identity
/// false over Q is false mod p except on a vanishing fraction of samples.
class Fp61 {
 public:
  static constexpr std::uint64_t p = (std::uint64_t(1) << 61) - 1;

  constexpr Fp61() : v_(0) {}
  /// Signed embedding: -1 maps to p-1. Intentionally implicit so generic
  /// scalar code can write T(1).
  Fp61(long n) {
    long m = n % static_cast<long>(p);
    if (m < 0) m += static_cast<long>(p);
    v_ = static_cast<std::uint64_t>(m);
  }

  static constexpr Fp61 from_raw(std::uint64_t reduced) {
    Fp61 r;
    r.v_ = reduced % p;
    return r;
  }

  /// Embed num/den as num * den^{-1} mod p. Throws if den = 0 mod p.
  static Fp61 from_rational(const Rat& r) {
    Fp61 num = from_mpz(r.get_num());
    Fp61 den = from_mpz(r.get_den());
    if (den.v_ == 0) throw ConfigError("rational denominator vanishes mod 2^61-1");
    return num * den.inverse();
  }

  std::uint64_t raw() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  friend Fp61 operator+(Fp61 a, Fp61 b) {
    std::uint64_t s = a.v_ + b.v_;  // < 2^62, no overflow
    if (s >= p) s -= p;
    return from_raw(s);
  }
  friend Fp61 operator-(Fp61 a, Fp61 b) {
    std::uint64_t s = a.v_ + (p - b.v_);
    if (s >= p) s -= p;
    return from_raw(s);
  }
  friend Fp61 operator*(Fp61 a, Fp61 b) {
    unsigned __int128 t = static_cast<unsigned __int128>(a.v_) * b.v_;
    std::uint64_t lo = static_cast<std::uint64_t>(t) & p;
    std::uint64_t hi = static_cast<std::uint64_t>(t >> 61);
    std::uint64_t s = lo + hi;
    if (s >= p) s -= p;
    return from_raw(s);
  }
  friend Fp61 operator/(Fp61 a, Fp61 b) { return a * b.inverse(); }
  Fp61 operator-() const { return v_ == 0 ? *this : from_raw(p - v_); }

  Fp61& operator+=(Fp61 o) { return *this = *this + o; }
  Fp61& operator-=(Fp61 o) { return *this = *this - o; }
  Fp61& operator*=(Fp61 o) { return *this = *this * o; }
  Fp61& operator/=(Fp61 o) { return *this = *this / o; }

  friend bool operator==(Fp61 a, Fp61 b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp61 a, Fp61 b) { return a.v_ != b.v_; }

  Fp61 pow(std::uint64_t e) const {
    Fp61 base = *this, acc = from_raw(1);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }
  Fp61 inverse() const {
    if (v_ == 0) throw ConfigError("inverse of 0 in F_p");
    return pow(p - 2);
  }

  std::string to_string() const { return std::to_string(v_); }

 private:
  static Fp61 from_mpz(const mpz_class& z) {
    mpz_class m = z % static_cast<unsigned long>(p);
    if (m < 0) m += static_cast<unsigned long>(p);
    return from_raw(m.get_ui());
  }
  std::uint64_t v_;
};

}  // namespace pvi6
