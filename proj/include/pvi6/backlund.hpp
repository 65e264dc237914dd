#pragma once
#include <array>

#include "pvi6/dual.hpp"
#include "pvi6/errors.hpp"
#include "pvi6/hamiltonian.hpp"
#include "pvi6/scalar.hpp"
#include "pvi6/weyl.hpp"

namespace pvi6 {

/// A phase point together with its parameter vector: the object the extended
/// Weyl group acts on birationally.
template <typename S>
struct TransformedState {
  PhasePoint<S> point;
  ParameterVector<S> alpha{};
  bool operator==(const TransformedState&) const = default;
};

struct TransformOptions {
  /// In floating modes a transformation is rejected when its divisor |phi_i|
  /// falls below this; exact modes test phi_i = 0 and ignore it.
  double singular_threshold = 1e-12;
};

/// The seven affine coordinates the group action is written in. phi_3 is the
/// only one depending on s.
template <typename S>
S phi(int i, const PhasePoint<S>& z) {
  S one = ScalarTraits<S>::from_long(1);
  switch (i) {
    case 0: return z.q[2] - one;
    case 1: return z.q[0] - one;
    case 2: return z.p[0];
    case 3: return z.q[0] * z.q[1] * z.q[2] - z.s;
    case 4: return z.p[1];
    case 5: return z.q[1] - one;
    default: return z.p[2];
  }
}

/// Lift the phase coordinates to dual variables (q in slots 0..2, p in slots
/// 3..5); s rides along as a constant.
template <typename S>
PhasePoint<Dual<S, 6>> lift_phase(const PhasePoint<S>& z) {
  using D = Dual<S, 6>;
  PhasePoint<D> dz;
  for (int i = 0; i < 3; ++i) {
    dz.q[i] = D::variable(z.q[i], i);
    dz.p[i] = D::variable(z.p[i], 3 + i);
  }
  dz.s = D(z.s);
  return dz;
}

/// {f, g} = sum_k (f_{p_k} g_{q_k} - f_{q_k} g_{p_k}), evaluated by forward
/// differentiation of the two callables at z. With this sign, {p_i, q_j} =
/// delta_ij and the flow of H reads {H, .}.
template <typename S, typename F, typename G>
S poisson_bracket(F&& f, G&& g, const PhasePoint<S>& z) {
  using D = Dual<S, 6>;
  PhasePoint<D> dz = lift_phase(z);
  D fv = f(dz), gv = g(dz);
  S acc = ScalarTraits<S>::from_long(0);
  for (int k = 0; k < 3; ++k)
    acc += fv.der[3 + k] * gv.der[k] - fv.der[k] * gv.der[3 + k];
  return acc;
}

/// {phi_i, phi_j} on demand; no stored bracket table.
template <typename S>
S poisson_phi(int i, int j, const PhasePoint<S>& z) {
  using D = Dual<S, 6>;
  return poisson_bracket(
      [i](const PhasePoint<D>& w) { return phi(i, w); },
      [j](const PhasePoint<D>& w) { return phi(j, w); }, z);
}

/// Inverse of the phi chart: six of the seven coordinates determine the point;
/// phi_3 is determined by the rest together with s (its coherence is a
/// property of the group action, checked in tests, not re-imposed here).
template <typename S>
PhasePoint<S> reconstruct_phase(const std::array<S, 7>& ph, const S& s) {
  S one = ScalarTraits<S>::from_long(1);
  PhasePoint<S> z;
  z.q = {ph[1] + one, ph[5] + one, ph[0] + one};
  z.p = {ph[2], ph[4], ph[6]};
  z.s = s;
  return z;
}

/// r_i: phi_j -> phi_j + (alpha_i / phi_i) {phi_i, phi_j}; alpha -> r_i(alpha);
/// s is fixed. Throws SingularTransformation on the divisor's zero locus.
template <typename S>
TransformedState<S> apply_reflection(int i, const TransformedState<S>& st,
                                     const TransformOptions& opt = {}, int word_pos = 0) {
  using D = Dual<S, 6>;
  const PhasePoint<S>& z = st.point;
  PhasePoint<D> dz = lift_phase(z);
  std::array<D, 7> ph;
  for (int j = 0; j < 7; ++j) ph[j] = phi(j, dz);
  if (ScalarTraits<S>::near_zero(ph[i].val, opt.singular_threshold))
    throw SingularTransformation(i, word_pos,
                                 "reflection r" + std::to_string(i) + " hit phi_" +
                                     std::to_string(i) + " = 0");
  S scale = st.alpha[i] / ph[i].val;
  std::array<S, 7> nph;
  for (int j = 0; j < 7; ++j) {
    // same summation order as poisson_phi, so the two paths agree bit for bit
    S br = ScalarTraits<S>::from_long(0);
    for (int k = 0; k < 3; ++k)
      br += ph[i].der[3 + k] * ph[j].der[k] - ph[i].der[k] * ph[j].der[3 + k];
    nph[j] = ph[j].val + scale * br;
  }
  TransformedState<S> out;
  out.point = reconstruct_phase(nph, z.s);
  out.alpha = apply_generator_params(Generator::r(i), st.alpha);
  return out;
}

/// pi_i: phi_j -> phi_{sigma_i(j)}, alpha -> pi_i(alpha); s is fixed.
template <typename S>
TransformedState<S> apply_automorphism(int i, const TransformedState<S>& st) {
  const auto& sg = sigma(i);
  std::array<S, 7> ph;
  for (int j = 0; j < 7; ++j) ph[j] = phi(j, st.point);
  std::array<S, 7> nph;
  for (int j = 0; j < 7; ++j) nph[j] = ph[sg[j]];
  TransformedState<S> out;
  out.point = reconstruct_phase(nph, st.point.s);
  out.alpha = apply_generator_params(Generator::pi(i), st.alpha);
  return out;
}

template <typename S>
TransformedState<S> apply_generator(const Generator& g, const TransformedState<S>& st,
                                    const TransformOptions& opt = {}, int word_pos = 0) {
  if (g.kind == Generator::Kind::Reflection) return apply_reflection(g.index, st, opt, word_pos);
  return apply_automorphism(g.index, st);
}

template <typename S>
TransformedState<S> apply_word(const WeylWord& w, TransformedState<S> st,
                               const TransformOptions& opt = {}) {
  for (std::size_t k = 0; k < w.size(); ++k)
    st = apply_generator(w[k], st, opt, static_cast<int>(k));
  return st;
}

}  // namespace pvi6
