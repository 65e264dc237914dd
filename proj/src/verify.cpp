#include "pvi6/verify.hpp"

#include <atomic>
#include <climits>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "pvi6/backlund.hpp"
#include "pvi6/hamiltonian.hpp"
#include "pvi6/rng.hpp"

namespace pvi6 {
namespace {

// ---------------------------------------------------------------- trial pool

/// Runs cfg.trials independent trials (each seeding its own stream from the
/// master seed) and aggregates deterministically: the reported counterexample
/// is always the one with the smallest trial index, and an exception beats a
/// counterexample only if it occurred at a smaller index. This makes reports
/// byte-identical across --jobs settings.
VerificationReport run_trials(const std::string& claim, const TrialConfig& cfg,
                              const std::function<std::optional<Counterexample>(long)>& trial) {
  VerificationReport rep;
  rep.claim = claim;
  rep.pass = true;
  rep.trials = cfg.trials > 0 ? cfg.trials : 0;
  rep.seed = cfg.seed;
  if (cfg.trials <= 0) return rep;

  const int jobs = cfg.jobs > 1 ? cfg.jobs : 1;
  if (jobs == 1) {
    for (long t = 0; t < cfg.trials; ++t) {
      auto ce = trial(t);
      if (ce) {
        rep.pass = false;
        rep.counterexample = std::move(ce);
        break;
      }
    }
    return rep;
  }

  std::atomic<long> next{0};
  std::atomic<long> found_at{LONG_MAX};
  std::atomic<long> exc_at{LONG_MAX};
  std::mutex mu;
  std::optional<Counterexample> best;
  std::exception_ptr exc;

  auto worker = [&] {
    for (;;) {
      long t = next.fetch_add(1);
      if (t >= cfg.trials) return;
      if (t >= found_at.load(std::memory_order_relaxed) &&
          t >= exc_at.load(std::memory_order_relaxed))
        continue;  // cannot improve on an earlier-indexed outcome
      try {
        auto ce = trial(t);
        if (ce) {
          std::lock_guard lk(mu);
          if (!best || ce->trial < best->trial) {
            best = std::move(ce);
            found_at.store(best->trial, std::memory_order_relaxed);
          }
        }
      } catch (...) {
        std::lock_guard lk(mu);
        if (t < exc_at.load(std::memory_order_relaxed)) {
          exc = std::current_exception();
          exc_at.store(t, std::memory_order_relaxed);
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  if (exc && (!best || exc_at.load() < best->trial)) std::rethrow_exception(exc);
  if (best) {
    rep.pass = false;
    rep.counterexample = std::move(best);
  }
  return rep;
}

VerificationReport merge_reports(const std::string& claim, std::uint64_t seed,
                                 const std::vector<VerificationReport>& parts) {
  VerificationReport rep;
  rep.claim = claim;
  rep.pass = true;
  rep.seed = seed;
  for (const auto& p : parts) {
    rep.trials += p.trials;
    if (!p.pass && rep.pass) {
      rep.pass = false;
      rep.counterexample = p.counterexample;
    }
  }
  return rep;
}

// ------------------------------------------------------------------ sampling

struct RatSample {
  ParameterVector<Rat> alpha;
  PhasePoint<Rat> z;
};

/// Fixed draw order (alpha 0,1,2,4,5,6; then q1..q3, p1..p3, s) is part of the
/// reproducibility contract. alpha_3 is solved from the level normalization
/// sum_i marks_i alpha_i = 1.
RatSample draw_candidate(SplitMix64& rng, long bound) {
  RatSample rs;
  for (int i : {0, 1, 2, 4, 5, 6}) rs.alpha[i] = sample_rational(rng, bound);
  rs.alpha[3] = (Rat(1) - rs.alpha[0] - rs.alpha[1] - Rat(2) * rs.alpha[2] -
                 Rat(2) * rs.alpha[4] - rs.alpha[5] - Rat(2) * rs.alpha[6]) /
                Rat(3);
  for (int i = 0; i < 3; ++i) rs.z.q[i] = sample_rational(rng, bound);
  for (int i = 0; i < 3; ++i) rs.z.p[i] = sample_rational(rng, bound);
  rs.z.s = sample_rational(rng, bound);
  return rs;
}

template <typename F>
TransformedState<F> embed(const RatSample& rs) {
  TransformedState<F> st;
  for (int i = 0; i < 7; ++i) st.alpha[i] = ScalarTraits<F>::from_rational(rs.alpha[i]);
  for (int i = 0; i < 3; ++i) {
    st.point.q[i] = ScalarTraits<F>::from_rational(rs.z.q[i]);
    st.point.p[i] = ScalarTraits<F>::from_rational(rs.z.p[i]);
  }
  st.point.s = ScalarTraits<F>::from_rational(rs.z.s);
  return st;
}

void fill_witness(Counterexample& ce, const RatSample& rs) {
  for (int i = 0; i < 7; ++i) ce.alpha.push_back(rs.alpha[i].get_str());
  for (int i = 0; i < 3; ++i) ce.q.push_back(rs.z.q[i].get_str());
  for (int i = 0; i < 3; ++i) ce.p.push_back(rs.z.p[i].get_str());
  ce.s = rs.z.s.get_str();
}

template <typename F>
struct Drawn {
  RatSample rat;
  TransformedState<F> st;
};

/// Admissibility is decided in the arithmetic the check runs in: s notin
/// {0,1} and all seven phi != 0 over F.
template <typename F>
std::optional<Drawn<F>> try_draw_nonsingular(SplitMix64& rng, long bound) {
  RatSample rs = draw_candidate(rng, bound);
  TransformedState<F> st = embed<F>(rs);
  if (ScalarTraits<F>::is_long(st.point.s, 0) || ScalarTraits<F>::is_long(st.point.s, 1))
    return std::nullopt;
  for (int j = 0; j < 7; ++j)
    if (ScalarTraits<F>::near_zero(phi(j, st.point), 0.0)) return std::nullopt;
  return Drawn<F>{std::move(rs), std::move(st)};
}

template <typename F>
Drawn<F> draw_nonsingular(SplitMix64& rng, const TrialConfig& cfg, const std::string& what,
                          long trial) {
  for (long attempt = 0; attempt < cfg.resample_cap; ++attempt) {
    auto d = try_draw_nonsingular<F>(rng, cfg.bound);
    if (d) return std::move(*d);
  }
  throw ResampleExhausted("no admissible sample for " + what + " (trial " +
                          std::to_string(trial) + ")");
}

// ------------------------------------------------------- solution invariance

template <typename F>
std::optional<Counterexample> theorem1_trial(const Generator& g, const TrialConfig& cfg,
                                             long t) {
  SplitMix64 rng = trial_stream(cfg.seed, t);
  Drawn<F> d = draw_nonsingular<F>(rng, cfg, "theorem1:" + generator_name(g), t);
  const TransformedState<F>& st = d.st;

  // Direction of the flow at the sampled point; s itself moves with speed 1.
  Velocity<F> V = vector_field(st.point, st.alpha);
  using D1 = Dual<F, 1>;
  TransformedState<D1> lifted;
  for (int i = 0; i < 3; ++i) {
    lifted.point.q[i] = D1::seeded(st.point.q[i], {V.qdot[i]});
    lifted.point.p[i] = D1::seeded(st.point.p[i], {V.pdot[i]});
  }
  lifted.point.s = D1::seeded(st.point.s, {ScalarTraits<F>::from_long(1)});
  for (int j = 0; j < 7; ++j) lifted.alpha[j] = D1(st.alpha[j]);

  TransformedState<D1> out = apply_generator(g, lifted);

  PhasePoint<F> gz;
  ParameterVector<F> ga;
  for (int i = 0; i < 3; ++i) {
    gz.q[i] = out.point.q[i].val;
    gz.p[i] = out.point.p[i].val;
  }
  gz.s = out.point.s.val;
  for (int j = 0; j < 7; ++j) ga[j] = out.alpha[j].val;

  Velocity<F> W = vector_field(gz, ga);
  for (int i = 0; i < 3; ++i) {
    bool qok = out.point.q[i].der[0] == W.qdot[i];
    bool pok = out.point.p[i].der[0] == W.pdot[i];
    if (!qok || !pok) {
      Counterexample ce;
      ce.trial = t;
      ce.mismatch = "total derivative along the flow differs from the transformed field at " +
                    std::string(qok ? "p" : "q") + std::to_string(i + 1) + " under " +
                    generator_name(g);
      fill_witness(ce, d.rat);
      return ce;
    }
  }
  return std::nullopt;
}

// ------------------------------------------------------------ canonical maps

template <typename F>
std::optional<Counterexample> canonicity_trial(const Generator& g, const TrialConfig& cfg,
                                               long t) {
  SplitMix64 rng = trial_stream(cfg.seed, t);
  Drawn<F> d = draw_nonsingular<F>(rng, cfg, "canonicity:" + generator_name(g), t);

  using D = Dual<F, 6>;
  TransformedState<D> lifted;
  lifted.point = lift_phase(d.st.point);
  for (int j = 0; j < 7; ++j) lifted.alpha[j] = D(d.st.alpha[j]);
  TransformedState<D> out = apply_generator(g, lifted);

  // Rows of J in (q1,q2,q3,p1,p2,p3) order.
  std::array<std::array<F, 6>, 6> J;
  for (int i = 0; i < 3; ++i)
    for (int b = 0; b < 6; ++b) {
      J[i][b] = out.point.q[i].der[b];
      J[3 + i][b] = out.point.p[i].der[b];
    }

  // (J^T Omega J)[a][b] = sum_i J[3+i][a] J[i][b] - J[i][a] J[3+i][b]
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      F acc = ScalarTraits<F>::from_long(0);
      for (int i = 0; i < 3; ++i) acc += J[3 + i][a] * J[i][b] - J[i][a] * J[3 + i][b];
      long want = 0;
      if (a < 3 && b == a + 3) want = -1;
      if (a >= 3 && b == a - 3) want = 1;
      if (!(acc == ScalarTraits<F>::from_long(want))) {
        Counterexample ce;
        ce.trial = t;
        ce.mismatch = "J^T Omega J deviates from Omega at entry (" + std::to_string(a) + "," +
                      std::to_string(b) + ") under " + generator_name(g);
        fill_witness(ce, d.rat);
        return ce;
      }
    }
  return std::nullopt;
}

// -------------------------------------------------------------- relations

template <typename F>
std::optional<Counterexample> relation_trial(const Relation& rel, const TrialConfig& cfg,
                                             long t) {
  SplitMix64 rng = trial_stream(cfg.seed, t);
  for (long attempt = 0; attempt < cfg.resample_cap; ++attempt) {
    auto cand = try_draw_nonsingular<F>(rng, cfg.bound);
    if (!cand) continue;
    try {
      TransformedState<F> lhs = apply_word(rel.lhs, cand->st);
      TransformedState<F> rhs = rel.rhs.empty() ? cand->st : apply_word(rel.rhs, cand->st);
      if (!(lhs == rhs)) {
        Counterexample ce;
        ce.trial = t;
        ce.mismatch = "phase-space action violates relation " + rel.name;
        fill_witness(ce, cand->rat);
        return ce;
      }
      return std::nullopt;
    } catch (const SingularTransformation&) {
      // word passed through a divisor zero: resample
    }
  }
  throw ResampleExhausted("no admissible sample for relation " + rel.name + " (trial " +
                          std::to_string(t) + ")");
}

// ------------------------------------------------------------- degeneration

template <typename F>
std::optional<Counterexample> degeneration_trial(const TrialConfig& cfg, long t) {
  SplitMix64 rng = trial_stream(cfg.seed, t);
  const int survivor = static_cast<int>(t % 3);
  for (long attempt = 0; attempt < cfg.resample_cap; ++attempt) {
    RatSample rs = draw_candidate(rng, cfg.bound);
    bool ok = true;
    for (int b = 0; b < 3 && ok; ++b) {
      if (b == survivor) continue;
      if (rs.z.q[b] == 1) ok = false;  // need q_b - 1 invertible to place the block on F_b = 0
    }
    if (!ok) continue;
    for (int b = 0; b < 3; ++b) {
      if (b == survivor) continue;
      rs.z.p[b] = -rs.alpha[2 * (b + 1)] / (rs.z.q[b] - Rat(1));
    }
    TransformedState<F> st = embed<F>(rs);
    if (ScalarTraits<F>::is_long(st.point.s, 0) || ScalarTraits<F>::is_long(st.point.s, 1))
      continue;

    Gradient<F> full = grad_h(st.point, st.alpha);

    std::array<F, 4> betas = block_betas(survivor, st.alpha);
    using D2 = Dual<F, 2>;
    D2 qd = D2::variable(st.point.q[survivor], 0);
    D2 pd = D2::variable(st.point.p[survivor], 1);
    D2 sd(st.point.s);
    std::array<D2, 4> bd;
    for (int k = 0; k < 4; ++k) bd[k] = D2(betas[k]);
    D2 hs = h_vi(pd, qd, sd, bd);

    bool same_value = [&] {
      F total = ScalarTraits<F>::from_long(0);
      for (int b = 0; b < 3; ++b)
        total += h_vi(st.point.p[b], st.point.q[b], st.point.s, block_betas(b, st.alpha));
      return coupled_h(st.point, st.alpha) == total;
    }();
    bool same_dq = full.dq[survivor] == hs.der[0];
    bool same_dp = full.dp[survivor] == hs.der[1];
    if (!(same_value && same_dq && same_dp)) {
      Counterexample ce;
      ce.trial = t;
      ce.mismatch = "coupled Hamiltonian does not reduce to the scalar block " +
                    std::to_string(survivor + 1) + " on the two-factor degeneration locus (" +
                    (same_value ? "" : "value ") + (same_dq ? "" : "dH/dq ") +
                    (same_dp ? "" : "dH/dp ") + "differ)";
      fill_witness(ce, rs);
      return ce;
    }
    return std::nullopt;
  }
  throw ResampleExhausted("no admissible sample for degeneration (trial " + std::to_string(t) +
                          ")");
}

// --------------------------------------------------------------- dispatchers

template <typename Fn>
VerificationReport dispatch(const std::string& claim, const TrialConfig& cfg, Fn&& make) {
  if (cfg.mode == ArithmeticMode::ExactRational)
    return run_trials(claim, cfg, make(Rat{}));
  return run_trials(claim, cfg, make(Fp61{}));
}

}  // namespace

VerificationReport check_theorem1(const Generator& g, const TrialConfig& cfg) {
  return dispatch("theorem1:" + generator_name(g), cfg, [&](auto field) {
    using F = decltype(field);
    return [&cfg, g](long t) { return theorem1_trial<F>(g, cfg, t); };
  });
}

VerificationReport check_theorem1_all(const TrialConfig& cfg) {
  std::vector<VerificationReport> parts;
  for (const auto& g : all_generators()) parts.push_back(check_theorem1(g, cfg));
  return merge_reports("theorem1", cfg.seed, parts);
}

VerificationReport check_phase_relation(const Relation& rel, const TrialConfig& cfg) {
  return dispatch("relations:phase:" + rel.name, cfg, [&](auto field) {
    using F = decltype(field);
    return [&cfg, &rel](long t) { return relation_trial<F>(rel, cfg, t); };
  });
}

VerificationReport check_phase_relations(const TrialConfig& cfg) {
  std::vector<VerificationReport> parts;
  for (const auto& rel : relation_catalogue()) parts.push_back(check_phase_relation(rel, cfg));
  return merge_reports("relations:phase", cfg.seed, parts);
}

VerificationReport check_relations(const TrialConfig& cfg) {
  std::vector<VerificationReport> parts;
  parts.push_back(verify_parameter_relations(cfg.seed, cfg.trials, cfg.bound));
  parts.push_back(check_phase_relations(cfg));
  return merge_reports("relations", cfg.seed, parts);
}

VerificationReport check_canonicity(const Generator& g, const TrialConfig& cfg) {
  return dispatch("canonicity:" + generator_name(g), cfg, [&](auto field) {
    using F = decltype(field);
    return [&cfg, g](long t) { return canonicity_trial<F>(g, cfg, t); };
  });
}

VerificationReport check_canonicity_all(const TrialConfig& cfg) {
  std::vector<VerificationReport> parts;
  for (const auto& g : all_generators()) parts.push_back(check_canonicity(g, cfg));
  return merge_reports("canonicity", cfg.seed, parts);
}

VerificationReport check_degeneration(const TrialConfig& cfg) {
  return dispatch("degeneration", cfg, [&](auto field) {
    using F = decltype(field);
    return [&cfg](long t) { return degeneration_trial<F>(cfg, t); };
  });
}

}  // namespace pvi6
