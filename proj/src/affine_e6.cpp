#include "pvi6/affine_e6.hpp"

#include <algorithm>
#include <set>

#include "pvi6/errors.hpp"

namespace pvi6 {
namespace {

// Finite Cartan matrix, nodes 1..6 (A5 chain 1-2-3-4-5, node 6 on node 3).
constexpr int kFinite[6][6] = {
    {2, -1, 0, 0, 0, 0},  //
    {-1, 2, -1, 0, 0, 0}, //
    {0, -1, 2, -1, 0, -1},//
    {0, 0, -1, 2, -1, 0}, //
    {0, 0, 0, -1, 2, 0},  //
    {0, 0, -1, 0, 0, 2},
};

/// Gradation type (s_0, ..., s_6) = (1,1,0,1,0,1,0); finite part only.
constexpr int kGradeWeight[6] = {1, 0, 1, 0, 1, 0};

Root negate(const Root& r) {
  Root o;
  for (int i = 0; i < 6; ++i) o[i] = -r[i];
  return o;
}

Root add(const Root& a, const Root& b) {
  Root o;
  for (int i = 0; i < 6; ++i) o[i] = a[i] + b[i];
  return o;
}

bool is_zero_root(const Root& r) {
  return std::all_of(r.begin(), r.end(), [](int c) { return c == 0; });
}

}  // namespace

RootSystemE6::RootSystemE6() {
  std::set<Root> closed;
  std::vector<Root> queue;
  for (int i = 1; i <= 6; ++i) {
    Root r = simple(i);
    closed.insert(r);
    queue.push_back(r);
  }
  while (!queue.empty()) {
    Root r = queue.back();
    queue.pop_back();
    for (int i = 1; i <= 6; ++i) {
      Root s = r;
      s[i - 1] -= pairing(r, i);
      if (closed.insert(s).second) queue.push_back(s);
    }
  }
  roots_.assign(closed.begin(), closed.end());
  int best = 0;
  for (const auto& r : roots_) {
    if (height(r) > 0) positive_.push_back(r);
    if (height(r) > best) {
      best = height(r);
      highest_ = r;
    }
  }
}

bool RootSystemE6::is_root(const Root& r) const {
  return std::binary_search(roots_.begin(), roots_.end(), r);
}

Root RootSystemE6::simple(int i) {
  Root r{};
  r[i - 1] = 1;
  return r;
}

int RootSystemE6::cartan(int i, int j) { return kFinite[i - 1][j - 1]; }

int RootSystemE6::pairing(const Root& gamma, int i) {
  int acc = 0;
  for (int j = 0; j < 6; ++j) acc += kFinite[i - 1][j] * gamma[j];
  return acc;
}

int RootSystemE6::height(const Root& r) {
  int acc = 0;
  for (int c : r) acc += c;
  return acc;
}

int RootSystemE6::epsilon(const Root& a, const Root& b) {
  // M is the "upper half" of the symmetrized Cartan matrix: M_ii = 1,
  // M_ij = a_ij mod 2 for i < j, 0 below the diagonal.
  int acc = 0;
  for (int i = 0; i < 6; ++i) {
    acc += a[i] * b[i];  // M_ii = 1
    for (int j = i + 1; j < 6; ++j)
      if (kFinite[i][j] & 1) acc += a[i] * b[j];
  }
  return (acc & 1) ? -1 : 1;
}

// ------------------------------------------------------------- LieElement ops

namespace {

void add_term(LieElement& x, const BasisLabel& l, const Rat& c) {
  if (sgn(c) == 0) return;
  auto it = x.find(l);
  if (it == x.end()) {
    x.emplace(l, c);
    return;
  }
  it->second += c;
  if (sgn(it->second) == 0) x.erase(it);
}

}  // namespace

LieElement operator+(const LieElement& a, const LieElement& b) {
  LieElement out = a;
  for (const auto& [l, c] : b) add_term(out, l, c);
  return out;
}

LieElement operator-(const LieElement& a, const LieElement& b) {
  LieElement out = a;
  for (const auto& [l, c] : b) add_term(out, l, -c);
  return out;
}

LieElement operator*(const Rat& c, const LieElement& x) {
  LieElement out;
  if (sgn(c) == 0) return out;
  for (const auto& [l, v] : x) out.emplace(l, c * v);
  return out;
}

bool is_zero(const LieElement& x) { return x.empty(); }

// ------------------------------------------------------------------ AffineE6

AffineE6::AffineE6(int truncation) : trunc_(truncation) {
  if (trunc_ < 1) throw ConfigError("loop truncation must be at least 1");
  // Solve sum_j a_ij x_j = s_i for the finite part of the grading element.
  std::array<std::array<Rat, 7>, 6> m;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) m[i][j] = Rat(kFinite[i][j]);
    m[i][6] = Rat(kGradeWeight[i]);
  }
  for (int c = 0; c < 6; ++c) {
    int piv = c;
    while (sgn(m[piv][c]) == 0) ++piv;
    std::swap(m[piv], m[c]);
    Rat inv = Rat(1) / m[c][c];
    for (int j = c; j < 7; ++j) m[c][j] *= inv;
    for (int i = 0; i < 6; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      Rat f = m[i][c];
      for (int j = c; j < 7; ++j) m[i][j] -= f * m[c][j];
    }
  }
  for (int i = 0; i < 6; ++i) theta_h_[i] = m[i][6];
  // [theta_el, e_0] = (c_d - theta(h)) e_0 = s_0 e_0 = e_0
  Rat theta_of_h(0);
  for (int j = 0; j < 6; ++j)
    theta_of_h += theta_h_[j] * Rat(RootSystemE6::pairing(rs_.highest(), j + 1));
  theta_d_ = Rat(1) + theta_of_h;
}

LieElement AffineE6::e(int i) const {
  BasisLabel l;
  l.kind = BasisLabel::Kind::RootVector;
  if (i == 0) {
    l.root = negate(rs_.highest());
    l.n = 1;
  } else {
    l.root = RootSystemE6::simple(i);
    l.n = 0;
  }
  return {{l, Rat(1)}};
}

LieElement AffineE6::f(int i) const {
  BasisLabel l;
  l.kind = BasisLabel::Kind::RootVector;
  if (i == 0) {
    l.root = rs_.highest();
    l.n = -1;
  } else {
    l.root = negate(RootSystemE6::simple(i));
    l.n = 0;
  }
  return {{l, Rat(-1)}};
}

LieElement AffineE6::coroot(int i) const {
  if (i == 0) {
    // alpha_0^vee = K - theta^vee
    LieElement out = central();
    const Root& th = rs_.highest();
    for (int j = 1; j <= 6; ++j) {
      BasisLabel l;
      l.kind = BasisLabel::Kind::Coroot;
      l.index = j;
      add_term(out, l, Rat(-th[j - 1]));
    }
    return out;
  }
  BasisLabel l;
  l.kind = BasisLabel::Kind::Coroot;
  l.index = i;
  return {{l, Rat(1)}};
}

LieElement AffineE6::central() const {
  BasisLabel l;
  l.kind = BasisLabel::Kind::Central;
  return {{l, Rat(1)}};
}

LieElement AffineE6::scaling() const {
  BasisLabel l;
  l.kind = BasisLabel::Kind::Scaling;
  return {{l, Rat(1)}};
}

Rat AffineE6::form(const LieElement& x, const LieElement& y) const {
  Rat acc(0);
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      using K = BasisLabel::Kind;
      // loop part pairs only at opposite degrees; (K|d) = (d|K) = 1
      if ((a.kind == K::Central && b.kind == K::Scaling) ||
          (a.kind == K::Scaling && b.kind == K::Central)) {
        acc += ca * cb;
        continue;
      }
      if (a.kind == K::Coroot && b.kind == K::Coroot && a.n + b.n == 0)
        acc += ca * cb * Rat(RootSystemE6::cartan(a.index, b.index));
      if (a.kind == K::RootVector && b.kind == K::RootVector && a.n + b.n == 0 &&
          is_zero_root(add(a.root, b.root)))
        acc += ca * cb * Rat(-1);
    }
  return acc;
}

LieElement AffineE6::bracket(const LieElement& x, const LieElement& y) const {
  using K = BasisLabel::Kind;
  LieElement out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      Rat c = ca * cb;
      if (a.kind == K::Central || b.kind == K::Central) continue;
      if (a.kind == K::Scaling && b.kind == K::Scaling) continue;
      if (a.kind == K::Scaling) {  // [d, y t^n] = n y t^n
        if (b.n != 0) add_term(out, b, Rat(b.n) * c);
        continue;
      }
      if (b.kind == K::Scaling) {
        if (a.n != 0) add_term(out, a, Rat(-a.n) * c);
        continue;
      }
      const int t = a.n + b.n;
      auto emit = [&](const BasisLabel& lbl0, const Rat& coeff) {
        if (sgn(coeff) == 0) return;
        if (t > trunc_ || t < -trunc_)
          throw TruncationOverflow("bracket term at loop degree " + std::to_string(t) +
                                   " leaves the |n| <= " + std::to_string(trunc_) +
                                   " window");
        BasisLabel l = lbl0;
        l.n = t;
        add_term(out, l, coeff);
      };
      if (a.kind == K::Coroot && b.kind == K::Coroot) {
        // finite bracket vanishes; only the central pairing survives
      } else if (a.kind == K::Coroot && b.kind == K::RootVector) {
        BasisLabel l = b;
        emit(l, c * Rat(RootSystemE6::pairing(b.root, a.index)));
      } else if (a.kind == K::RootVector && b.kind == K::Coroot) {
        BasisLabel l = a;
        emit(l, -c * Rat(RootSystemE6::pairing(a.root, b.index)));
      } else {
        // two root vectors
        Root sum = add(a.root, b.root);
        if (is_zero_root(sum)) {
          // [e_g, e_{-g}] = -g^vee
          for (int j = 1; j <= 6; ++j) {
            if (a.root[j - 1] == 0) continue;
            BasisLabel l;
            l.kind = K::Coroot;
            l.index = j;
            emit(l, c * Rat(-a.root[j - 1]));
          }
        } else if (rs_.is_root(sum)) {
          BasisLabel l;
          l.kind = K::RootVector;
          l.root = sum;
          emit(l, c * Rat(RootSystemE6::epsilon(a.root, b.root)));
        }
      }
      // central extension term
      if (t == 0 && a.n != 0) {
        Rat pair(0);
        if (a.kind == K::Coroot && b.kind == K::Coroot)
          pair = Rat(RootSystemE6::cartan(a.index, b.index));
        else if (a.kind == K::RootVector && b.kind == K::RootVector &&
                 is_zero_root(add(a.root, b.root)))
          pair = Rat(-1);
        if (sgn(pair) != 0) {
          BasisLabel l;
          l.kind = K::Central;
          add_term(out, l, c * Rat(a.n) * pair);
        }
      }
    }
  return out;
}

LieElement AffineE6::theta_element() const {
  LieElement out;
  for (int i = 1; i <= 6; ++i) {
    BasisLabel l;
    l.kind = BasisLabel::Kind::Coroot;
    l.index = i;
    add_term(out, l, theta_h_[i - 1]);
  }
  BasisLabel d;
  d.kind = BasisLabel::Kind::Scaling;
  add_term(out, d, theta_d_);
  return out;
}

int AffineE6::label_grade(const BasisLabel& l) {
  switch (l.kind) {
    case BasisLabel::Kind::Central:
    case BasisLabel::Kind::Scaling: return 0;
    case BasisLabel::Kind::Coroot: return 6 * l.n;
    default: {
      int acc = 6 * l.n;
      for (int i = 0; i < 6; ++i) acc += kGradeWeight[i] * l.root[i];
      return acc;
    }
  }
}

int AffineE6::grade(const LieElement& x) const {
  if (x.empty()) throw NotHomogeneous("the zero element carries no grade");
  int g = label_grade(x.begin()->first);
  for (const auto& [l, c] : x) {
    (void)c;
    if (label_grade(l) != g)
      throw NotHomogeneous("element mixes grades " + std::to_string(g) + " and " +
                           std::to_string(label_grade(l)));
  }
  return g;
}

std::vector<BasisLabel> AffineE6::graded_basis(int k) const {
  std::vector<BasisLabel> out;
  for (int n = -trunc_; n <= trunc_; ++n) {
    for (const auto& r : rs_.all()) {
      BasisLabel l;
      l.kind = BasisLabel::Kind::RootVector;
      l.root = r;
      l.n = n;
      if (label_grade(l) == k) out.push_back(l);
    }
    for (int i = 1; i <= 6; ++i) {
      BasisLabel l;
      l.kind = BasisLabel::Kind::Coroot;
      l.index = i;
      l.n = n;
      if (label_grade(l) == k) out.push_back(l);
    }
  }
  if (k == 0) {
    BasisLabel kk;
    kk.kind = BasisLabel::Kind::Central;
    out.push_back(kk);
    BasisLabel d;
    d.kind = BasisLabel::Kind::Scaling;
    out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

LieElement AffineE6::nested(const std::vector<int>& idx) const {
  if (idx.empty()) throw ConfigError("nested generator needs at least one index");
  LieElement acc = e(idx.back());
  for (std::size_t k = idx.size() - 1; k-- > 0;) acc = bracket(e(idx[k]), acc);
  return acc;
}

LieElement AffineE6::lambda1() const {
  struct Term {
    std::vector<int> idx;
    long c;
  };
  static const std::vector<Term> terms = {
      {{1}, 1},       {{3}, 2},       {{5}, 1},       {{2, 1}, 1},
      {{6, 0}, 1},    {{2, 3}, 1},    {{4, 3}, 1},    {{6, 3}, 1},
      {{2, 3, 4}, 1}, {{2, 3, 6}, 1}, {{4, 3, 6}, 1}, {{6, 2, 3, 4}, 2},
  };
  LieElement out;
  for (const auto& t : terms) out = out + Rat(t.c) * nested(t.idx);
  return out;
}

LieElement AffineE6::lambda2() const {
  struct Term {
    std::vector<int> idx;
    long c;
  };
  static const std::vector<Term> terms = {
      {{0}, 2},        {{3}, -2},      {{5}, -2},       {{2, 1}, -2},
      {{4, 5}, -2},    {{2, 3}, 2},    {{4, 3}, 2},     {{6, 3}, -7},
      {{2, 3, 4}, -4}, {{2, 3, 6}, 5}, {{4, 3, 6}, -4}, {{6, 2, 3, 4}, -2},
  };
  LieElement out;
  for (const auto& t : terms) out = out + Rat(t.c) * nested(t.idx);
  return out;
}

std::string AffineE6::dump(const LieElement& x) const {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& [l, c] : x) {
    if (!out.empty()) out += "\n";
    switch (l.kind) {
      case BasisLabel::Kind::Central: out += "K"; break;
      case BasisLabel::Kind::Scaling: out += "d"; break;
      case BasisLabel::Kind::Coroot:
        out += "(coroot=" + std::to_string(l.index) + ", n=" + std::to_string(l.n) + ")";
        break;
      default: {
        out += "(root=[";
        for (int i = 0; i < 6; ++i) {
          if (i) out += ",";
          out += std::to_string(l.root[i]);
        }
        out += "], n=" + std::to_string(l.n) + ")";
      }
    }
    out += " " + c.get_str();
  }
  return out;
}

// -------------------------------------------------------- Heisenberg checks

int degree_multiplicity(int k) {
  if (k <= 0) return 0;
  switch (k % 6) {
    case 1: return 2;
    case 2: return 1;
    case 4: return 1;
    case 5: return 2;
    default: return 0;
  }
}

namespace {

int rat_rank(std::vector<std::vector<Rat>> m) {
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (sgn(m[i][c]) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (int i = r + 1; i < rows; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      Rat f = m[i][c] * inv;
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

std::vector<int> heisenberg_kernel_dims(const AffineE6& alg) {
  const LieElement l1 = alg.lambda1();
  std::vector<int> dims;
  for (int k = 0; k <= 5; ++k) {
    const auto dom = alg.graded_basis(k);
    const auto cod = alg.graded_basis(k + 1);
    std::map<BasisLabel, int> cidx;
    for (std::size_t i = 0; i < cod.size(); ++i) cidx[cod[i]] = static_cast<int>(i);
    std::vector<std::vector<Rat>> mat(cod.size(), std::vector<Rat>(dom.size(), Rat(0)));
    for (std::size_t j = 0; j < dom.size(); ++j) {
      LieElement img = alg.bracket(LieElement{{dom[j], Rat(1)}}, l1);
      // centralizer condition is modulo the center: drop any K component
      BasisLabel kl;
      kl.kind = BasisLabel::Kind::Central;
      img.erase(kl);
      for (const auto& [lbl, c] : img) mat[cidx.at(lbl)][j] = c;
    }
    dims.push_back(static_cast<int>(dom.size()) - rat_rank(std::move(mat)));
  }
  return dims;
}

VerificationReport check_heisenberg(const AffineE6& alg) {
  VerificationReport rep;
  rep.claim = "heisenberg";
  rep.pass = true;
  rep.seed = 0;
  auto fail = [&](const std::string& why) {
    rep.pass = false;
    if (!rep.counterexample) {
      Counterexample ce;
      ce.trial = rep.trials;
      ce.mismatch = why;
      rep.counterexample = ce;
    }
  };

  const LieElement l1 = alg.lambda1();
  const LieElement l2 = alg.lambda2();

  for (const auto* l : {&l1, &l2}) {
    ++rep.trials;
    try {
      if (alg.grade(*l) != 1)
        fail("printed generator is homogeneous of grade " + std::to_string(alg.grade(*l)) +
             ", expected 1");
    } catch (const NotHomogeneous& e) {
      fail(std::string("printed generator is not homogeneous: ") + e.what());
    }
  }

  ++rep.trials;
  if (!is_zero(alg.bracket(l1, l2))) fail("the two degree-1 generators do not commute");

  const std::vector<int> dims = heisenberg_kernel_dims(alg);
  for (int k = 0; k <= 5; ++k) {
    ++rep.trials;
    const int expected = k == 0 ? 1 : degree_multiplicity(k);
    if (dims[k] != expected)
      fail("centralizer dimension in grade " + std::to_string(k) + " is " +
           std::to_string(dims[k]) + ", expected " + std::to_string(expected));
  }

  ++rep.trials;
  if (!is_zero(alg.bracket(alg.central(), l1)))
    fail("the center fails to centralize the degree-1 generator");

  return rep;
}

}  // namespace pvi6
