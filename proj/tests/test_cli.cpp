#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "pvi6/flow.hpp"
#include "pvi6/json_io.hpp"
#include "pvi6/rational.hpp"

using namespace pvi6;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

// PVI6_CLI_PATH is injected by the build; commands run through the shell.
RunResult run(const std::string& args, const std::string& env = "") {
  const std::string err_path = "/tmp/pvi6_cli_stderr.txt";
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(PVI6_CLI_PATH) + " " + args +
                    " 2>" + err_path;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = out;
  std::ifstream err(err_path);
  std::ostringstream ss;
  ss << err.rdbuf();
  r.err = ss.str();
  return r;
}

// runs during static init, before any doctest context exists: no assertions
bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) return false;
  out << text;
  return out.good();
}

const char* kStatePath = "/tmp/pvi6_test_state.json";
const char* kFloatStatePath = "/tmp/pvi6_test_state_float.json";
const char* kSingularStatePath = "/tmp/pvi6_test_state_singular.json";
const char* kParamsPath = "/tmp/pvi6_test_params.json";

bool write_fixtures() {
  bool ok = write_file(kStatePath,
                       R"({"alpha":["1/4","-1/8","1/6","5/27","2/9","-1/8","-1/6"],)"
                       R"("q":["2","5/4","3/2"],"p":["-2/11","-2/5","1/3"],"s":"3/10"})");
  ok = write_file(kFloatStatePath,
                  R"({"alpha":[0.25,-0.125,0.16,0.18,0.22,-0.125,-0.16],)"
                  R"("q":[2.0,1.25,1.5],"p":[-0.18,-0.4,0.33],"s":0.3})") &&
       ok;
  // p1 = 0 makes phi_2 vanish: r2 must refuse
  ok = write_file(kSingularStatePath,
                  R"({"alpha":["1/4","-1/8","1/6","5/27","2/9","-1/8","-1/6"],)"
                  R"("q":["2","5/4","3/2"],"p":["0","-2/5","1/3"],"s":"3/10"})") &&
       ok;
  ok = write_file(kParamsPath,
                  R"({"alpha":["1/4","-1/8","1/6","5/27","2/9","-1/8","-1/6"]})") &&
       ok;
  return ok;
}

const bool kFixturesReady = write_fixtures();

}  // namespace

TEST_CASE("cartan subcommand prints the matrix and its structural facts") {
  REQUIRE(kFixturesReady);

  auto r = run("cartan");
  CHECK(r.code == 0);
  RatMat7 m = matrix_from_json(r.out);
  CHECK(m[0][0] == 2);
  CHECK(m[0][6] == -1);

  auto sym = run("cartan --check-symmetric");
  CHECK(sym.code == 0);
  CHECK(sym.out == "true\n");

  auto nv = run("cartan --null-vector");
  CHECK(nv.code == 0);
  CHECK(nv.out == "[1,1,2,3,2,1,2]\n");

  auto both = run("cartan --check-symmetric --null-vector");
  CHECK(both.code == 2);
}

TEST_CASE("weyl subcommand: matrices and parameter transforms") {
  auto mat = run("weyl --word r2,r3");
  CHECK(mat.code == 0);
  RatMat7 m = matrix_from_json(mat.out);
  CHECK(determinant(m) == Rat(1));  // product of two reflections
  CHECK(m == word_matrix(parse_word("r2,r3")));

  auto par = run(std::string("weyl --word r2 --params ") + kParamsPath);
  CHECK(par.code == 0);
  ParamsFile pf = params_from_json(par.out);
  // closed form of r2 on the fixture parameters
  CHECK(pf.alpha[2] == Rat(-1, 6));
  CHECK(pf.alpha[1] == Rat(-1, 8) + Rat(1, 6));
  CHECK(pf.alpha[3] == Rat(5, 27) + Rat(1, 6));
  CHECK(pf.alpha[0] == Rat(1, 4));

  auto id = run("weyl --word \"\"");
  CHECK(id.code == 0);
  CHECK(matrix_from_json(id.out) == identity_matrix7());

  CHECK(run("weyl --word r9").code == 2);
}

TEST_CASE("transform applies words to exact states and round-trips involutions") {
  auto once = run(std::string("transform --state ") + kStatePath + " --word r2");
  CHECK(once.code == 0);
  StateFile st = state_from_json(once.out);
  CHECK(st.mode == NumberMode::Exact);
  // r2 moves q1 by alpha2/p1 = (1/6)/(-2/11) = -11/12
  CHECK(st.point.q[0] == Rat(2) - Rat(11, 12));
  CHECK(st.point.s == Rat(3, 10));

  // an involution word echoes the input file byte for byte
  auto twice = run(std::string("transform --state ") + kStatePath + " --word r2,r2");
  CHECK(twice.code == 0);
  auto ident = run(std::string("transform --state ") + kStatePath + " --word \"\"");
  CHECK(ident.code == 0);
  CHECK(twice.out == ident.out);

  // float states stay float: the output carries JSON numbers, not strings
  auto fl = run(std::string("transform --state ") + kFloatStatePath + " --word r2");
  CHECK(fl.code == 0);
  StateFile fst = state_from_json(fl.out);
  CHECK(fst.mode == NumberMode::Float);
}

TEST_CASE("transform reports singular words on stderr with the step index") {
  auto r = run(std::string("transform --state ") + kSingularStatePath + " --word pi2,r2");
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("singular transformation") != std::string::npos);
  CHECK(r.err.find("word step 1") != std::string::npos);
  CHECK(r.err.find("phi_2") != std::string::npos);

  // exact zero is caught even at word step 0
  auto r0 = run(std::string("transform --state ") + kSingularStatePath + " --word r2");
  CHECK(r0.code == 2);
  CHECK(r0.err.find("word step 0") != std::string::npos);
}

TEST_CASE("verify emits a parseable report and honors seeds") {
  auto r = run("verify theorem1:r2 --trials 3");
  CHECK(r.code == 0);
  VerificationReport rep = report_from_json(r.out);
  CHECK(rep.pass);
  CHECK(rep.claim == "theorem1:r2");
  CHECK(rep.trials == 3);
  CHECK(rep.seed == 0xE6);

  auto env_seed = run("verify theorem1:r2 --trials 3", "PVI_E6_SEED=99");
  CHECK(report_from_json(env_seed.out).seed == 99);

  auto flag_beats_env = run("verify theorem1:r2 --trials 3 --seed 7", "PVI_E6_SEED=99");
  CHECK(report_from_json(flag_beats_env.out).seed == 7);

  auto bad_env = run("verify theorem1:r2 --trials 3", "PVI_E6_SEED=banana");
  CHECK(bad_env.code == 2);

  // reruns are byte-identical, whatever the worker count
  auto a = run("verify relations --trials 4 --seed 11");
  auto b = run("verify relations --trials 4 --seed 11");
  auto c = run("verify relations --trials 4 --seed 11 --jobs 2");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);

  auto fp = run("verify theorem1:pi1 --trials 5 --mode fp61");
  CHECK(fp.code == 0);
  CHECK(report_from_json(fp.out).pass);

  CHECK(run("verify canonicity:r4 --trials 4").code == 0);
  CHECK(run("verify degeneration --trials 4").code == 0);
  CHECK(run("verify heisenberg").code == 0);

  CHECK(run("verify nonsense --trials 3").code == 2);
  CHECK(run("verify theorem1:r2 --trials 0").code == 2);
  CHECK(run("verify theorem1:r2 --trials 3 --bound 1").code == 2);
  CHECK(run("verify theorem1:r2 --trials 3 --mode float").code == 2);
}

TEST_CASE("integrate writes CSV trajectories the library can read back") {
  auto r = run(std::string("integrate --state ") + kStatePath + " --s-end 0.7");
  CHECK(r.code == 0);
  Trajectory tr = trajectory_from_csv(r.out);
  CHECK(tr.s.front() == 0.3);
  CHECK(tr.s.back() == 0.7);
  CHECK(tr.y.size() == tr.s.size());

  const char* out_path = "/tmp/pvi6_test_traj.csv";
  auto r2 = run(std::string("integrate --state ") + kStatePath + " --s-end 0.7 -o " + out_path);
  CHECK(r2.code == 0);
  CHECK(r2.out.empty());
  std::ifstream in(out_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == r.out);

  CHECK(run(std::string("integrate --state ") + kStatePath + " --s-end 1.5").code == 2);
  CHECK(run(std::string("integrate --state ") + kStatePath + " --s-end 0.3").code == 2);
  CHECK(run(std::string("integrate --state ") + kStatePath +
            " --s-end 0.7 --max-steps 2")
            .code == 3);
}

TEST_CASE("covariance prints the deviation and gates on it") {
  auto r = run("covariance --generator r2");
  CHECK(r.code == 0);
  double dev = std::strtod(r.out.c_str(), nullptr);
  CHECK(dev >= 0);
  CHECK(dev <= 1e-6);

  auto tight = run("covariance --generator r2 --max-dev 1e-20");
  CHECK(tight.code == 1);  // the measured deviation cannot be that small

  auto pi = run("covariance --generator pi1");
  CHECK(pi.code == 0);

  CHECK(run("covariance --generator bogus").code == 2);
}

TEST_CASE("lie-dump prints elements and grades") {
  auto l1 = run("lie-dump lambda1 --grade");
  CHECK(l1.code == 0);
  CHECK(l1.out == "1\n");

  auto k = run("lie-dump K");
  CHECK(k.code == 0);
  CHECK(k.out == "K 1\n");

  auto e3 = run("lie-dump e3");
  CHECK(e3.code == 0);
  CHECK(e3.out == "(root=[0,0,1,0,0,0], n=0) 1\n");

  auto theta = run("lie-dump theta --grade");
  CHECK(theta.code == 0);
  CHECK(theta.out == "0\n");

  CHECK(run("lie-dump lambda1 --truncation 0").code == 2);
  CHECK(run("lie-dump q5").code == 2);
}

TEST_CASE("usage errors exit with the configuration code") {
  CHECK(run("").code == 2);            // a subcommand is required
  CHECK(run("--help").code == 0);      // help is not an error
  CHECK(run("frobnicate").code == 2);  // unknown subcommand
  CHECK(run("transform").code == 2);   // missing required --state
  CHECK(run(std::string("transform --state /nonexistent.json")).code == 2);
}
