#pragma once
#include <array>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "pvi6/rational.hpp"
#include "pvi6/report.hpp"

namespace pvi6 {

/// A root written in simple-root coordinates, finite nodes 1..6 (index 0 of
/// the array is node 1).
using Root = std::array<int, 6>;

/// The finite root system underlying the affine algebra: 72 roots, simply
/// laced. Node 6 attaches to node 3 of the A5 chain 1-2-3-4-5.
class RootSystemE6 {
 public:
  RootSystemE6();

  const std::vector<Root>& all() const { return roots_; }
  const std::vector<Root>& positive() const { return positive_; }
  bool is_root(const Root& r) const;
  static Root simple(int i);  // i in 1..6
  const Root& highest() const { return highest_; }
  /// Finite Cartan pairing <alpha_i, alpha_j^vee>, i, j in 1..6.
  static int cartan(int i, int j);
  /// <gamma, alpha_i^vee> for an arbitrary root gamma.
  static int pairing(const Root& gamma, int i);
  static int height(const Root& r);

  /// Bimultiplicative asymmetry sign: epsilon(a,b) * epsilon(b,a) =
  /// (-1)^{(a|b)} and epsilon(a,a) = (-1)^{(a|a)/2}. Fixes every structure
  /// constant of the Chevalley basis.
  static int epsilon(const Root& a, const Root& b);

 private:
  std::vector<Root> roots_, positive_;
  Root highest_{};
};

/// Basis label of the affinized algebra: e_gamma t^n, alpha_i^vee t^n, the
/// central element K, or the scaling element d. Ordering is the deterministic
/// serialization order.
struct BasisLabel {
  enum class Kind { RootVector, Coroot, Central, Scaling };
  Kind kind = Kind::Central;
  Root root{};    // RootVector only
  int index = 0;  // Coroot only, 1..6
  int n = 0;      // loop degree (RootVector, Coroot)

  auto operator<=>(const BasisLabel&) const = default;
};

/// Sparse exact element: label -> rational coefficient, zero coefficients
/// never stored.
using LieElement = std::map<BasisLabel, Rat>;

LieElement operator+(const LieElement& a, const LieElement& b);
LieElement operator-(const LieElement& a, const LieElement& b);
LieElement operator*(const Rat& c, const LieElement& x);
bool is_zero(const LieElement& x);

/// The affine algebra truncated to loop degrees |n| <= truncation. Brackets
/// that would leave the window throw TruncationOverflow rather than silently
/// dropping terms.
class AffineE6 {
 public:
  explicit AffineE6(int truncation = 3);

  int truncation() const { return trunc_; }
  const RootSystemE6& roots() const { return rs_; }

  // Chevalley-Serre generators, affine labels 0..6.
  LieElement e(int i) const;
  LieElement f(int i) const;
  LieElement coroot(int i) const;  // alpha_i^vee; index 0 gives K - theta^vee
  LieElement central() const;      // K
  LieElement scaling() const;      // d

  LieElement bracket(const LieElement& x, const LieElement& y) const;
  /// Invariant bilinear form: loop pairing plus (K|d) = 1.
  Rat form(const LieElement& x, const LieElement& y) const;

  /// The grading element: [theta_el, e_i] = s_i e_i with s = (1,1,0,1,0,1,0).
  LieElement theta_element() const;
  /// Integer eigenvalue of ad theta_el; throws NotHomogeneous when the
  /// element mixes grades (or is zero).
  int grade(const LieElement& x) const;
  static int label_grade(const BasisLabel& l);

  /// All basis labels of a given grade within the truncation window.
  std::vector<BasisLabel> graded_basis(int k) const;

  /// e_{i1 i2 ... im j} = ad e_{i1} ad e_{i2} ... ad e_{im} (e_j),
  /// indices affine 0..6, applied right to left.
  LieElement nested(const std::vector<int>& idx) const;

  LieElement lambda1() const;
  LieElement lambda2() const;

  /// One line per basis label in label order: "(root=[...], n=...) c",
  /// "(coroot=i, n=...) c", "K c", "d c"; "0" for the zero element.
  std::string dump(const LieElement& x) const;

 private:
  int trunc_;
  RootSystemE6 rs_;
  std::array<Rat, 6> theta_h_;  // finite coordinates of the grading element
  Rat theta_d_;
};

/// Multiplicity of degree k in the exponent sequence of the principal-type
/// Heisenberg: residues (1,2,3,4,5,0) mod 6 carry (2,1,0,1,2,0) each period.
int degree_multiplicity(int k);

/// dim { x in g_k : [x, Lambda1] in C K } for k = 0..5.
std::vector<int> heisenberg_kernel_dims(const AffineE6& alg);

/// Grades of the printed Lambda elements, their commutativity, and the
/// centralizer dimensions against the degree table.
VerificationReport check_heisenberg(const AffineE6& alg);

}  // namespace pvi6
