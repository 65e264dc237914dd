#include "pvi6/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "pvi6/errors.hpp"

namespace pvi6 {
namespace {

using Vec6 = std::array<double, 6>;

// Dormand–Prince 5(4) tableau (FSAL).
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// b - bhat (embedded error weights)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafe = 0.9, kBeta = 0.04, kExpo1 = 0.2 - kBeta * 0.75;
constexpr double kFacc1 = 5.0, kFacc2 = 0.1;  // step never shrinks below /5 or grows past x10

Vec6 pack(const Velocity<double>& v) {
  return {v.qdot[0], v.qdot[1], v.qdot[2], v.pdot[0], v.pdot[1], v.pdot[2]};
}

Vec6 field(double s, const Vec6& y, const ParameterVector<double>& alpha) {
  PhasePoint<double> z;
  z.q = {y[0], y[1], y[2]};
  z.p = {y[3], y[4], y[5]};
  z.s = s;
  return pack(vector_field(z, alpha));
}

/// 0: s < 0, 1: 0 < s < 1, 2: s > 1, -1: on a singular point
int window_class(double s) {
  if (s == 0.0 || s == 1.0) return -1;
  if (s < 0.0) return 0;
  return s < 1.0 ? 1 : 2;
}

double rms_err(const Vec6& e, const Vec6& y0, const Vec6& y1, double atol, double rtol) {
  double acc = 0;
  for (int i = 0; i < 6; ++i) {
    double sc = atol + rtol * std::max(std::fabs(y0[i]), std::fabs(y1[i]));
    double r = e[i] / sc;
    acc += r * r;
  }
  return std::sqrt(acc / 6.0);
}

double initial_step_guess(double s0, double s_end, const Vec6& y0, const Vec6& f0,
                          const ParameterVector<double>& alpha, double atol, double rtol,
                          double dir) {
  double span = std::fabs(s_end - s0);
  double d0 = 0, dd1 = 0;
  for (int i = 0; i < 6; ++i) {
    double sc = atol + rtol * std::fabs(y0[i]);
    d0 += (y0[i] / sc) * (y0[i] / sc);
    dd1 += (f0[i] / sc) * (f0[i] / sc);
  }
  d0 = std::sqrt(d0 / 6.0);
  dd1 = std::sqrt(dd1 / 6.0);
  double h0 = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * (d0 / dd1);
  h0 = std::min(h0, span);
  Vec6 y1;
  for (int i = 0; i < 6; ++i) y1[i] = y0[i] + dir * h0 * f0[i];
  Vec6 f1 = field(s0 + dir * h0, y1, alpha);
  double d2 = 0;
  for (int i = 0; i < 6; ++i) {
    double sc = atol + rtol * std::fabs(y0[i]);
    double df = (f1[i] - f0[i]) / sc;
    d2 += df * df;
  }
  d2 = std::sqrt(d2 / 6.0) / h0;
  double dm = std::max(dd1, d2);
  double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
  return dir * std::min({100 * h0, h1, span});
}

}  // namespace

Trajectory integrate(const PhasePoint<double>& z0, const ParameterVector<double>& alpha,
                     double s_end, const IntegrationConfig& cfg) {
  const double s0 = z0.s;
  int w0 = window_class(s0), w1 = window_class(s_end);
  if (w0 < 0 || w1 < 0 || w0 != w1)
    throw ConfigError("integration window must stay on one side of the singular points 0 and 1");

  if (s_end == s0) throw ConfigError("empty integration window");
  if (!(cfg.rtol >= 0) || !(cfg.atol >= 0) || (cfg.rtol == 0 && cfg.atol == 0))
    throw ConfigError("tolerances must be nonnegative and not both zero");

  Trajectory tr;
  Vec6 y = {z0.q[0], z0.q[1], z0.q[2], z0.p[0], z0.p[1], z0.p[2]};
  double s = s0;
  tr.s.push_back(s);
  tr.y.push_back(y);

  const double dir = s_end > s0 ? 1.0 : -1.0;
  const double uround = std::numeric_limits<double>::epsilon();

  Vec6 k1 = field(s, y, alpha);
  double h = cfg.initial_step != 0
                 ? dir * std::min(std::fabs(cfg.initial_step), std::fabs(s_end - s0))
                 : initial_step_guess(s0, s_end, y, k1, alpha, cfg.atol, cfg.rtol, dir);

  double facold = 1e-4;
  bool reject = false;
  long steps = 0;

  for (;;) {
    if (++steps > cfg.max_steps)
      throw MaxStepsExceeded("no convergence within " + std::to_string(cfg.max_steps) +
                             " steps");
    if (0.1 * std::fabs(h) <= std::fabs(s) * uround)
      throw StepUnderflow("step size underflow at s = " + std::to_string(s));

    bool last = false;
    if ((s + 1.01 * h - s_end) * dir > 0) {
      h = s_end - s;
      last = true;
    }

    Vec6 k2, k3, k4, k5, k6, k7, y5;
    auto stage = [&](double cc, const Vec6& arg) { return field(s + cc * h, arg, alpha); };
    Vec6 tmp;
    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    k2 = stage(c2, tmp);
    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = stage(c3, tmp);
    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = stage(c4, tmp);
    for (int i = 0; i < 6; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = stage(c5, tmp);
    for (int i = 0; i < 6; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = stage(1.0, tmp);
    for (int i = 0; i < 6; ++i)
      y5[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    k7 = field(s + h, y5, alpha);

    Vec6 errv;
    for (int i = 0; i < 6; ++i)
      errv[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                     e7 * k7[i]);
    double err = rms_err(errv, y, y5, cfg.atol, cfg.rtol);

    double fac11 = std::pow(err, kExpo1);
    if (err <= 1.0) {
      // accepted
      facold = std::max(err, 1e-4);
      double fac = fac11 / std::pow(facold, kBeta);
      fac = std::max(kFacc2, std::min(kFacc1, fac / kSafe));
      double hnew = h / fac;

      if (cfg.dense) {
        DenseSegment seg;
        seg.s0 = s;
        seg.h = h;
        for (int i = 0; i < 6; ++i) {
          double ydiff = y5[i] - y[i];
          double bspl = h * k1[i] - ydiff;
          seg.c[0][i] = y[i];
          seg.c[1][i] = ydiff;
          seg.c[2][i] = bspl;
          seg.c[3][i] = ydiff - h * k7[i] - bspl;
          seg.c[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                             d7 * k7[i]);
        }
        tr.segments.push_back(seg);
      }

      s = last ? s_end : s + h;
      y = y5;
      k1 = k7;  // FSAL
      ++tr.accepted;
      tr.last_error = err;
      tr.s.push_back(s);
      tr.y.push_back(y);
      if (last) return tr;

      if (reject) hnew = dir * std::min(std::fabs(hnew), std::fabs(h));
      reject = false;
      h = hnew;
    } else {
      ++tr.rejected;
      h = h / std::min(kFacc1, fac11 / kSafe);
      reject = true;
    }
  }
}

std::array<double, 6> Trajectory::eval(double si) const {
  if (segments.empty()) throw ConfigError("trajectory carries no dense output");
  // segments are ordered along the direction of integration
  const double dir = segments.front().h > 0 ? 1.0 : -1.0;
  std::size_t lo = 0, hi = segments.size() - 1;
  auto starts_after = [&](const DenseSegment& seg) { return (si - seg.s0) * dir < 0; };
  if (!starts_after(segments[lo])) {
    while (lo < hi) {
      std::size_t mid = (lo + hi + 1) / 2;
      if (starts_after(segments[mid]))
        hi = mid - 1;
      else
        lo = mid;
    }
  }
  const DenseSegment& seg = segments[lo];
  double theta = (si - seg.s0) / seg.h;
  double theta1 = 1.0 - theta;
  std::array<double, 6> out;
  for (int i = 0; i < 6; ++i)
    out[i] = seg.c[0][i] +
             theta * (seg.c[1][i] +
                      theta1 * (seg.c[2][i] +
                                theta * (seg.c[3][i] + theta1 * seg.c[4][i])));
  return out;
}

std::string trajectory_to_csv(const Trajectory& tr) {
  std::string out = "s,q1,p1,q2,p2,q3,p3\n";
  char buf[40];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
    out += sep;
  };
  for (std::size_t k = 0; k < tr.s.size(); ++k) {
    const auto& y = tr.y[k];
    put(tr.s[k], ',');
    put(y[0], ',');
    put(y[3], ',');
    put(y[1], ',');
    put(y[4], ',');
    put(y[2], ',');
    put(y[5], '\n');
  }
  return out;
}

Trajectory trajectory_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "s,q1,p1,q2,p2,q3,p3")
    throw ConfigError("bad trajectory CSV header");
  Trajectory tr;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 7> vals;
    const char* ptr = line.c_str();
    for (int i = 0; i < 7; ++i) {
      char* end = nullptr;
      vals[i] = std::strtod(ptr, &end);
      if (end == ptr) throw ConfigError("bad trajectory CSV row: '" + line + "'");
      ptr = end;
      if (i < 6) {
        if (*ptr != ',') throw ConfigError("bad trajectory CSV row: '" + line + "'");
        ++ptr;
      }
    }
    tr.s.push_back(vals[0]);
    tr.y.push_back({vals[1], vals[3], vals[5], vals[2], vals[4], vals[6]});
  }
  tr.accepted = tr.s.empty() ? 0 : static_cast<long>(tr.s.size()) - 1;
  return tr;
}

CovarianceResult covariance_experiment(const Generator& g, const PhasePoint<double>& z0,
                                       const ParameterVector<double>& alpha, double s_end,
                                       const IntegrationConfig& cfg,
                                       const TransformOptions& topt) {
  Trajectory ref = integrate(z0, alpha, s_end, cfg);

  TransformedState<double> start{z0, alpha};
  TransformedState<double> gstart = apply_generator(g, start, topt);
  IntegrationConfig dcfg = cfg;
  dcfg.dense = true;
  Trajectory direct = integrate(gstart.point, gstart.alpha, s_end, dcfg);

  CovarianceResult res;
  res.g = g;
  res.transported.s = ref.s;
  for (std::size_t k = 0; k < ref.s.size(); ++k) {
    PhasePoint<double> z;
    z.q = {ref.y[k][0], ref.y[k][1], ref.y[k][2]};
    z.p = {ref.y[k][3], ref.y[k][4], ref.y[k][5]};
    z.s = ref.s[k];
    TransformedState<double> w = apply_generator(g, TransformedState<double>{z, alpha}, topt);
    Vec6 wv = {w.point.q[0], w.point.q[1], w.point.q[2],
               w.point.p[0], w.point.p[1], w.point.p[2]};
    res.transported.y.push_back(wv);
    Vec6 dv = k + 1 == ref.s.size() ? direct.y.back() : direct.eval(ref.s[k]);
    for (int i = 0; i < 6; ++i)
      res.max_deviation = std::max(res.max_deviation, std::fabs(wv[i] - dv[i]));
    ++res.compared_points;
  }
  res.direct = std::move(direct);
  return res;
}

}  // namespace pvi6
