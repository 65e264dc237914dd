#pragma once
#include <array>
#include <cstddef>

namespace pvi6 {

/// Forward-mode dual number with N derivative slots over an arbitrary scalar T.
/// Nests (T may itself be a Dual), which is how second-order data like Poisson
/// brackets of transformed coordinates are obtained without symbolic algebra.
template <typename T, int N>
struct Dual {
  T val{};
  std::array<T, N> der{};  // value-initialized: all slots zero

  Dual() = default;
  Dual(const T& v) : val(v) {}  // lift a constant (zero derivative)

  /// An independent variable: value v, unit seed in the given slot.
  static Dual variable(const T& v, int slot) {
    Dual d(v);
    d.der[slot] = T(1);
    return d;
  }
  /// Value v with an arbitrary seed vector (directional derivative input).
  static Dual seeded(const T& v, const std::array<T, N>& seed) {
    Dual d(v);
    d.der = seed;
    return d;
  }

  Dual operator-() const {
    Dual r(-val);
    for (int k = 0; k < N; ++k) r.der[k] = -der[k];
    return r;
  }

  friend Dual operator+(const Dual& a, const Dual& b) {
    Dual r(a.val + b.val);
    for (int k = 0; k < N; ++k) r.der[k] = a.der[k] + b.der[k];
    return r;
  }
  friend Dual operator-(const Dual& a, const Dual& b) {
    Dual r(a.val - b.val);
    for (int k = 0; k < N; ++k) r.der[k] = a.der[k] - b.der[k];
    return r;
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.val * b.val);
    for (int k = 0; k < N; ++k) r.der[k] = a.der[k] * b.val + a.val * b.der[k];
    return r;
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    T q = a.val / b.val;
    Dual r(q);
    for (int k = 0; k < N; ++k) r.der[k] = (a.der[k] - q * b.der[k]) / b.val;
    return r;
  }

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend bool operator==(const Dual& a, const Dual& b) {
    return a.val == b.val && a.der == b.der;
  }
  friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }
};

}  // namespace pvi6
