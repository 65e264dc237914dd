#include <CLI11.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "pvi6/affine_e6.hpp"
#include "pvi6/backlund.hpp"
#include "pvi6/errors.hpp"
#include "pvi6/flow.hpp"
#include "pvi6/json_io.hpp"
#include "pvi6/verify.hpp"
#include "pvi6/weyl.hpp"

namespace {

using namespace pvi6;

// Exit codes: 0 pass, 1 claim failed, 2 usage/config error, 3 runtime failure.

std::uint64_t default_seed() {
  const char* env = std::getenv("PVI_E6_SEED");
  if (!env || !*env) return 0xE6;
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 0);
  if (errno != 0 || end == env || *end != '\0')
    throw ConfigError("PVI_E6_SEED must be an unsigned integer");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(std::string text, const std::string& path) {
  if (text.empty() || text.back() != '\n') text.push_back('\n');
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << text;
}

// The start used when covariance runs without an explicit state file:
// generic (nonsingular for every generator) and normalized on the
// parameter side, sitting inside the (0,1) window.
StateFile builtin_start() {
  StateFile st;
  st.mode = NumberMode::Exact;
  st.alpha = {Rat(1, 4), Rat(-1, 8), Rat(1, 6), Rat(5, 27), Rat(2, 9), Rat(-1, 8), Rat(-1, 6)};
  st.point.q = {Rat(2), Rat(5, 4), Rat(3, 2)};
  st.point.p = {Rat(-2, 11), Rat(-2, 5), Rat(1, 3)};
  st.point.s = Rat(3, 10);
  for (int i = 0; i < 7; ++i) st.alpha_f[i] = to_double(st.alpha[i]);
  for (int i = 0; i < 3; ++i) {
    st.point_f.q[i] = to_double(st.point.q[i]);
    st.point_f.p[i] = to_double(st.point.p[i]);
  }
  st.point_f.s = to_double(st.point.s);
  return st;
}

int run_cartan(bool check_sym, bool null_vec) {
  if (check_sym) {
    bool sym = true;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        if (kCartanE6[i][j] != kCartanE6[j][i]) sym = false;
    std::puts(sym ? "true" : "false");
    return sym ? 0 : 1;
  }
  if (null_vec) {
    for (int i = 0; i < 7; ++i) {
      long acc = 0;
      for (int j = 0; j < 7; ++j) acc += long{kCartanE6[i][j]} * kMarks[j];
      if (acc != 0) throw std::logic_error("marks fail to annihilate the Cartan matrix");
    }
    std::string out = "[";
    for (int j = 0; j < 7; ++j) {
      if (j) out += ',';
      out += std::to_string(kMarks[j]);
    }
    out += ']';
    std::puts(out.c_str());
    return 0;
  }
  emit(cartan_to_json(), "");
  return 0;
}

int run_weyl(const std::string& word_text, const std::string& params_path) {
  WeylWord w = parse_word(word_text);
  if (params_path.empty()) {
    emit(matrix_to_json(word_matrix(w)), "");
    return 0;
  }
  ParamsFile pf = params_from_json(read_file(params_path));
  if (pf.mode == NumberMode::Exact)
    emit(params_to_json(apply_word_params(w, pf.alpha)), "");
  else
    emit(params_to_json(apply_word_params(w, pf.alpha_f)), "");
  return 0;
}

int run_transform(const std::string& state_path, const std::string& word_text,
                  double threshold, const std::string& out_path) {
  WeylWord w = parse_word(word_text);
  StateFile st = state_from_json(read_file(state_path));
  TransformOptions opt;
  opt.singular_threshold = threshold;
  if (st.mode == NumberMode::Exact) {
    TransformedState<Rat> ts{st.point, st.alpha};
    ts = apply_word(w, ts, opt);
    emit(state_to_json(ts.alpha, ts.point), out_path);
  } else {
    TransformedState<double> ts{st.point_f, st.alpha_f};
    ts = apply_word(w, ts, opt);
    emit(state_to_json(ts.alpha, ts.point), out_path);
  }
  return 0;
}

int run_verify(const std::string& claim, const TrialConfig& cfg, int truncation) {
  if (cfg.trials < 1) throw ConfigError("--trials must be at least 1");
  if (cfg.bound < 2) throw ConfigError("--bound must be at least 2");
  if (cfg.jobs < 1) throw ConfigError("--jobs must be at least 1");
  VerificationReport rep;
  if (claim == "theorem1") {
    rep = check_theorem1_all(cfg);
  } else if (claim.rfind("theorem1:", 0) == 0) {
    rep = check_theorem1(parse_generator(claim.substr(9)), cfg);
  } else if (claim == "relations") {
    rep = check_relations(cfg);
  } else if (claim == "canonicity") {
    rep = check_canonicity_all(cfg);
  } else if (claim.rfind("canonicity:", 0) == 0) {
    rep = check_canonicity(parse_generator(claim.substr(11)), cfg);
  } else if (claim == "degeneration") {
    rep = check_degeneration(cfg);
  } else if (claim == "heisenberg") {
    AffineE6 alg(truncation);
    rep = check_heisenberg(alg);
  } else {
    throw ConfigError("unknown claim: " + claim);
  }
  emit(report_to_json(rep), "");
  return rep.pass ? 0 : 1;
}

int run_integrate(const std::string& state_path, double s_end, const IntegrationConfig& cfg,
                  const std::string& out_path) {
  StateFile st = state_from_json(read_file(state_path));
  Trajectory tr = integrate(st.point_f, st.alpha_f, s_end, cfg);
  emit(trajectory_to_csv(tr), out_path);
  return 0;
}

int run_covariance(const std::string& gen_name, const std::string& state_path, double s_end,
                   const IntegrationConfig& cfg, double threshold, double max_dev) {
  Generator g = parse_generator(gen_name);
  StateFile st = state_path.empty() ? builtin_start() : state_from_json(read_file(state_path));
  TransformOptions opt;
  opt.singular_threshold = threshold;
  CovarianceResult res = covariance_experiment(g, st.point_f, st.alpha_f, s_end, cfg, opt);
  std::printf("%.17g\n", res.max_deviation);
  return res.max_deviation <= max_dev ? 0 : 1;
}

int run_lie_dump(const std::string& what, int truncation, bool show_grade) {
  AffineE6 alg(truncation);
  auto gen_index = [&]() -> int {
    if (what.size() != 2 || what[1] < '0' || what[1] > '6')
      throw ConfigError("unknown element: " + what);
    return what[1] - '0';
  };
  LieElement x;
  if (what == "lambda1")
    x = alg.lambda1();
  else if (what == "lambda2")
    x = alg.lambda2();
  else if (what == "theta")
    x = alg.theta_element();
  else if (what == "K")
    x = alg.central();
  else if (what == "d")
    x = alg.scaling();
  else if (!what.empty() && what[0] == 'e')
    x = alg.e(gen_index());
  else if (!what.empty() && what[0] == 'f')
    x = alg.f(gen_index());
  else if (!what.empty() && what[0] == 'h')
    x = alg.coroot(gen_index());
  else
    throw ConfigError("unknown element: " + what);
  if (show_grade)
    std::printf("%d\n", alg.grade(x));
  else
    emit(alg.dump(x), "");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 0xE6;
  try {
    seed = default_seed();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  CLI::App app{
      "pvi6 - exact and numerical laboratory for a coupled Painleve VI system\n"
      "with extended affine Weyl symmetry of type E6"};
  app.require_subcommand(1);

  auto* cartan = app.add_subcommand("cartan", "Print the generalized Cartan matrix as JSON");
  bool check_sym = false, null_vec = false;
  auto* sym_opt = cartan->add_flag("--check-symmetric", check_sym, "print whether the matrix is symmetric");
  cartan->add_flag("--null-vector", null_vec, "print the primitive positive null vector (the marks)")
      ->excludes(sym_opt);

  auto* weyl = app.add_subcommand("weyl", "Word action on the root-lattice parameters");
  std::string weyl_word, weyl_params;
  weyl->add_option("--word", weyl_word, "comma-separated generators, e.g. r1,r2,pi1");
  weyl->add_option("--params", weyl_params, "parameter file {\"alpha\": [...]} to transform; omit to print the word's 7x7 matrix");

  auto* transform = app.add_subcommand("transform", "Apply a Backlund word to a state file");
  std::string tr_state, tr_word, tr_out;
  double tr_threshold = 1e-12;
  transform->add_option("--state", tr_state, "state file {\"alpha\", \"q\", \"p\", \"s\"}")->required();
  transform->add_option("--word", tr_word, "comma-separated generators (empty word = identity)");
  transform->add_option("--threshold", tr_threshold, "float-mode singularity threshold on |phi_i|")
      ->capture_default_str();
  transform->add_option("-o,--output", tr_out, "write the transformed state here instead of stdout");

  auto* verify = app.add_subcommand("verify", "Randomized exact verification of one claim");
  std::string vf_claim, vf_mode = "exact";
  TrialConfig vf_cfg;
  vf_cfg.seed = seed;
  int vf_truncation = 3;
  verify->add_option("claim", vf_claim,
                     "theorem1[:GEN] | relations | canonicity[:GEN] | degeneration | heisenberg")
      ->required();
  verify->add_option("--trials", vf_cfg.trials, "sample points per claim")->capture_default_str();
  verify->add_option("--seed", vf_cfg.seed, "RNG seed (default 0xE6; PVI_E6_SEED overrides)")
      ->capture_default_str();
  verify->add_option("--bound", vf_cfg.bound, "max |numerator|, denominator of sampled rationals")
      ->capture_default_str();
  verify->add_option("--mode", vf_mode, "exact | fp61 (prime field 2^61-1)")
      ->check(CLI::IsMember({"exact", "fp61"}))
      ->capture_default_str();
  verify->add_option("--jobs", vf_cfg.jobs, "worker threads (result independent of the value)")
      ->capture_default_str();
  verify->add_option("--resample-cap", vf_cfg.resample_cap, "retries per trial on singular loci")
      ->capture_default_str();
  verify->add_option("--truncation", vf_truncation, "loop-degree window for heisenberg")
      ->capture_default_str();

  auto* integrate_cmd = app.add_subcommand("integrate", "Integrate the Hamiltonian flow, CSV output");
  std::string in_state, in_out;
  double in_send = 0;
  IntegrationConfig in_cfg;
  integrate_cmd->add_option("--state", in_state, "start state file")->required();
  integrate_cmd->add_option("--s-end", in_send, "end of the integration window")->required();
  integrate_cmd->add_option("--rtol", in_cfg.rtol, "relative tolerance")->capture_default_str();
  integrate_cmd->add_option("--atol", in_cfg.atol, "absolute tolerance")->capture_default_str();
  integrate_cmd->add_option("--initial-step", in_cfg.initial_step, "0 = automatic")
      ->capture_default_str();
  integrate_cmd->add_option("--max-steps", in_cfg.max_steps)->capture_default_str();
  integrate_cmd->add_option("-o,--output", in_out, "write the CSV here instead of stdout");

  auto* covariance = app.add_subcommand("covariance",
                                        "Deviation between transform-then-integrate and integrate-then-transform");
  std::string cv_gen, cv_state;
  double cv_send = 0.7, cv_threshold = 1e-12, cv_maxdev = 1e-6;
  IntegrationConfig cv_cfg;
  covariance->add_option("--generator", cv_gen, "r0..r6, pi1, pi2")->required();
  covariance->add_option("--state", cv_state, "start state file (default: built-in generic start at s=3/10)");
  covariance->add_option("--s-end", cv_send)->capture_default_str();
  covariance->add_option("--rtol", cv_cfg.rtol)->capture_default_str();
  covariance->add_option("--atol", cv_cfg.atol)->capture_default_str();
  covariance->add_option("--max-steps", cv_cfg.max_steps)->capture_default_str();
  covariance->add_option("--threshold", cv_threshold, "float-mode singularity threshold")
      ->capture_default_str();
  covariance->add_option("--max-dev", cv_maxdev, "largest acceptable deviation")->capture_default_str();

  auto* lie = app.add_subcommand("lie-dump", "Print a distinguished loop-algebra element");
  std::string ld_what;
  int ld_truncation = 3;
  bool ld_grade = false;
  lie->add_option("what", ld_what, "lambda1 | lambda2 | theta | K | d | e0..e6 | f0..f6 | h0..h6")
      ->required();
  lie->add_option("--truncation", ld_truncation, "loop-degree window")->capture_default_str();
  lie->add_flag("--grade", ld_grade, "print the element's gradation degree instead of its expansion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cartan->parsed()) return run_cartan(check_sym, null_vec);
    if (weyl->parsed()) return run_weyl(weyl_word, weyl_params);
    if (transform->parsed()) return run_transform(tr_state, tr_word, tr_threshold, tr_out);
    if (verify->parsed()) {
      vf_cfg.mode = vf_mode == "exact" ? ArithmeticMode::ExactRational : ArithmeticMode::PrimeField;
      return run_verify(vf_claim, vf_cfg, vf_truncation);
    }
    if (integrate_cmd->parsed()) return run_integrate(in_state, in_send, in_cfg, in_out);
    if (covariance->parsed())
      return run_covariance(cv_gen, cv_state, cv_send, cv_cfg, cv_threshold, cv_maxdev);
    if (lie->parsed()) return run_lie_dump(ld_what, ld_truncation, ld_grade);
  } catch (const SingularTransformation& e) {
    std::fprintf(stderr, "error: singular transformation at word step %d (phi_%d vanished)\n",
                 e.word_position, e.generator_phi);
    return 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
