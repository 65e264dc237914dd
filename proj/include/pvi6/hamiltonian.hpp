#pragma once
#include <array>

#include "pvi6/dual.hpp"
#include "pvi6/errors.hpp"
#include "pvi6/scalar.hpp"
#include "pvi6/weyl.hpp"

namespace pvi6 {

/// A point of the sixth-order phase space, together with the independent
/// variable s (the common singular-time of the three blocks).
template <typename S>
struct PhasePoint {
  std::array<S, 3> q{}, p{};
  S s{};
  bool operator==(const PhasePoint&) const = default;
};

/// One scalar Painleve VI Hamiltonian. Argument order (p, q) follows the
/// classical convention for this family. beta = (beta0, beta1, beta3, beta4);
/// beta2 is not independent and is eliminated via beta2_eliminated().
template <typename S>
S beta2_eliminated(const std::array<S, 4>& beta) {
  S one = ScalarTraits<S>::from_long(1);
  S two = ScalarTraits<S>::from_long(2);
  return (one - beta[0] - beta[1] - beta[2] - beta[3]) / two;
}

template <typename S>
S h_vi(const S& p, const S& q, const S& s, const std::array<S, 4>& beta) {
  S one = ScalarTraits<S>::from_long(1);
  S b2 = beta2_eliminated(beta);
  S kinetic = q * (q - one) * (q - s) * p * p;
  S drift = ((beta[1] - one) * q * (q - one) + beta[2] * q * (q - s) +
             beta[3] * (q - one) * (q - s)) *
            p;
  S potential = b2 * (beta[0] + b2) * q;
  return kinetic - drift + potential;
}

/// Parameters (beta0, beta1, beta3, beta4) of block b in {0,1,2} as affine
/// functions of the root-parameter vector alpha.
template <typename S>
std::array<S, 4> block_betas(int b, const ParameterVector<S>& a) {
  S one = ScalarTraits<S>::from_long(1);
  S two = ScalarTraits<S>::from_long(2);
  switch (b) {
    case 0: return {a[3], one - a[1] - two * a[2] - two * a[3], a[1], a[3]};
    case 1: return {a[3], one - two * a[3] - two * a[4] - a[5], a[5], a[3]};
    default: return {a[3], one - a[0] - two * a[3] - two * a[6], a[0], a[3]};
  }
}

/// Coupling factor F_b = (q_b - 1) p_b + alpha_{2(b+1)}; the relevant alpha
/// indices are 2, 4, 6 for blocks 0, 1, 2.
template <typename S>
S coupling_factor(int b, const PhasePoint<S>& z, const ParameterVector<S>& a) {
  S one = ScalarTraits<S>::from_long(1);
  return (z.q[b] - one) * z.p[b] + a[2 * (b + 1)];
}

/// The coupled Hamiltonian: three Painleve VI blocks sharing the same s plus
/// the pairwise coupling sum_{i<j} F_i F_j (q_i q_j + s).
template <typename S>
S coupled_h(const PhasePoint<S>& z, const ParameterVector<S>& a) {
  S h = ScalarTraits<S>::from_long(0);
  for (int b = 0; b < 3; ++b) h += h_vi(z.p[b], z.q[b], z.s, block_betas(b, a));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      h += coupling_factor(i, z, a) * coupling_factor(j, z, a) * (z.q[i] * z.q[j] + z.s);
  return h;
}

/// Partial derivatives of the coupled Hamiltonian at a point. Slot order in
/// Jacobian-style contexts is (q1, q2, q3, p1, p2, p3).
template <typename S>
struct Gradient {
  std::array<S, 3> dq{}, dp{};
};

template <typename S>
Gradient<S> grad_h(const PhasePoint<S>& z, const ParameterVector<S>& a) {
  using D = Dual<S, 6>;
  PhasePoint<D> dz;
  for (int i = 0; i < 3; ++i) {
    dz.q[i] = D::variable(z.q[i], i);
    dz.p[i] = D::variable(z.p[i], 3 + i);
  }
  dz.s = D(z.s);
  ParameterVector<D> da;
  for (int i = 0; i < 7; ++i) da[i] = D(a[i]);
  D h = coupled_h(dz, da);
  Gradient<S> g;
  for (int i = 0; i < 3; ++i) {
    g.dq[i] = h.der[i];
    g.dp[i] = h.der[3 + i];
  }
  return g;
}

/// Time derivatives along the non-autonomous flow.
template <typename S>
struct Velocity {
  std::array<S, 3> qdot{}, pdot{};
};

/// dq_i/ds = (dH/dp_i) / (s(s-1)), dp_i/ds = -(dH/dq_i) / (s(s-1)).
/// The bracket convention in force is {f,g} = sum_k (f_{p_k} g_{q_k} - f_{q_k} g_{p_k}),
/// so {H, q_i} = dH/dp_i and {H, p_i} = -dH/dq_i.
template <typename S>
Velocity<S> vector_field(const PhasePoint<S>& z, const ParameterVector<S>& a) {
  if (ScalarTraits<S>::is_long(z.s, 0) || ScalarTraits<S>::is_long(z.s, 1))
    throw SingularIndependentVariable("vector field evaluated at s in {0,1}");
  S one = ScalarTraits<S>::from_long(1);
  S denom = z.s * (z.s - one);
  Gradient<S> g = grad_h(z, a);
  Velocity<S> v;
  for (int i = 0; i < 3; ++i) {
    v.qdot[i] = g.dp[i] / denom;
    v.pdot[i] = -g.dq[i] / denom;
  }
  return v;
}

}  // namespace pvi6
