#include "pvi6/json_io.hpp"

#include <json.hpp>

#include "pvi6/errors.hpp"

namespace pvi6 {
namespace {

using json = nlohmann::ordered_json;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad JSON: ") + e.what());
  }
}

// Reads one leaf while enforcing a uniform leaf kind across the whole file.
Rat read_leaf(const json& v, NumberMode& mode, bool& seen, const char* where) {
  NumberMode kind;
  Rat r;
  if (v.is_string()) {
    kind = NumberMode::Exact;
    r = parse_rational(v.get<std::string>());
  } else if (v.is_number()) {
    kind = NumberMode::Float;
    r = Rat(v.get<double>());  // binary64 -> exact rational, no rounding
  } else {
    throw ConfigError(std::string(where) + ": values must be rational strings or numbers");
  }
  if (seen && kind != mode)
    throw ConfigError(std::string(where) +
                      ": rational strings and numbers mixed within one file");
  mode = kind;
  seen = true;
  return r;
}

const json& want_array(const json& obj, const char* key, std::size_t len) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_array() || it->size() != len)
    throw ConfigError(std::string("expected \"") + key + "\" as an array of " +
                      std::to_string(len) + " values");
  return *it;
}

}  // namespace

ParamsFile params_from_json(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) throw ConfigError("expected a JSON object");
  const json& arr = want_array(j, "alpha", 7);
  ParamsFile out;
  bool seen = false;
  for (int i = 0; i < 7; ++i) out.alpha[i] = read_leaf(arr[i], out.mode, seen, "alpha");
  for (int i = 0; i < 7; ++i) out.alpha_f[i] = to_double(out.alpha[i]);
  return out;
}

std::string params_to_json(const ParameterVector<Rat>& alpha) {
  json arr = json::array();
  for (const Rat& a : alpha) arr.push_back(rational_to_string(a));
  json j;
  j["alpha"] = std::move(arr);
  return j.dump();
}

std::string params_to_json(const ParameterVector<double>& alpha) {
  json arr = json::array();
  for (double a : alpha) arr.push_back(a);
  json j;
  j["alpha"] = std::move(arr);
  return j.dump();
}

StateFile state_from_json(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) throw ConfigError("expected a JSON object");
  const json& aa = want_array(j, "alpha", 7);
  const json& qq = want_array(j, "q", 3);
  const json& pp = want_array(j, "p", 3);
  auto it = j.find("s");
  if (it == j.end()) throw ConfigError("expected an \"s\" value");

  StateFile out;
  bool seen = false;
  for (int i = 0; i < 7; ++i) out.alpha[i] = read_leaf(aa[i], out.mode, seen, "alpha");
  for (int i = 0; i < 3; ++i) out.point.q[i] = read_leaf(qq[i], out.mode, seen, "q");
  for (int i = 0; i < 3; ++i) out.point.p[i] = read_leaf(pp[i], out.mode, seen, "p");
  out.point.s = read_leaf(*it, out.mode, seen, "s");

  for (int i = 0; i < 7; ++i) out.alpha_f[i] = to_double(out.alpha[i]);
  for (int i = 0; i < 3; ++i) {
    out.point_f.q[i] = to_double(out.point.q[i]);
    out.point_f.p[i] = to_double(out.point.p[i]);
  }
  out.point_f.s = to_double(out.point.s);
  return out;
}

std::string state_to_json(const ParameterVector<Rat>& alpha, const PhasePoint<Rat>& z) {
  json j;
  json aa = json::array();
  for (const Rat& a : alpha) aa.push_back(rational_to_string(a));
  j["alpha"] = std::move(aa);
  json qq = json::array(), pp = json::array();
  for (int i = 0; i < 3; ++i) {
    qq.push_back(rational_to_string(z.q[i]));
    pp.push_back(rational_to_string(z.p[i]));
  }
  j["q"] = std::move(qq);
  j["p"] = std::move(pp);
  j["s"] = rational_to_string(z.s);
  return j.dump();
}

std::string state_to_json(const ParameterVector<double>& alpha, const PhasePoint<double>& z) {
  json j;
  json aa = json::array();
  for (double a : alpha) aa.push_back(a);
  j["alpha"] = std::move(aa);
  json qq = json::array(), pp = json::array();
  for (int i = 0; i < 3; ++i) {
    qq.push_back(z.q[i]);
    pp.push_back(z.p[i]);
  }
  j["q"] = std::move(qq);
  j["p"] = std::move(pp);
  j["s"] = z.s;
  return j.dump();
}

std::string report_to_json(const VerificationReport& rep) {
  json j;
  j["claim"] = rep.claim;
  j["pass"] = rep.pass;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  if (rep.counterexample) {
    const Counterexample& ce = *rep.counterexample;
    json c;
    c["trial"] = ce.trial;
    c["mismatch"] = ce.mismatch;
    c["alpha"] = ce.alpha;
    c["q"] = ce.q;
    c["p"] = ce.p;
    c["s"] = ce.s;
    j["counterexample"] = std::move(c);
  } else {
    j["counterexample"] = nullptr;
  }
  return j.dump();
}

VerificationReport report_from_json(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) throw ConfigError("expected a JSON object");
  VerificationReport rep;
  try {
    rep.claim = j.at("claim").get<std::string>();
    rep.pass = j.at("pass").get<bool>();
    rep.trials = j.at("trials").get<long>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    const json& c = j.at("counterexample");
    if (!c.is_null()) {
      Counterexample ce;
      ce.trial = c.at("trial").get<long>();
      ce.mismatch = c.at("mismatch").get<std::string>();
      ce.alpha = c.at("alpha").get<std::vector<std::string>>();
      ce.q = c.at("q").get<std::vector<std::string>>();
      ce.p = c.at("p").get<std::vector<std::string>>();
      ce.s = c.at("s").get<std::string>();
      rep.counterexample = std::move(ce);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad report JSON: ") + e.what());
  }
  return rep;
}

std::string matrix_to_json(const RatMat7& m) {
  json rows = json::array();
  for (int i = 0; i < 7; ++i) {
    json row = json::array();
    for (int k = 0; k < 7; ++k) {
      const Rat& e = m[i][k];
      if (e.get_den() == 1 && e.get_num().fits_slong_p())
        row.push_back(e.get_num().get_si());
      else
        row.push_back(rational_to_string(e));
    }
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

RatMat7 matrix_from_json(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_array() || j.size() != 7) throw ConfigError("expected a 7x7 matrix");
  RatMat7 m;
  for (int i = 0; i < 7; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != 7) throw ConfigError("expected a 7x7 matrix");
    for (int k = 0; k < 7; ++k) {
      const json& v = row[k];
      if (v.is_number_integer())
        m[i][k] = Rat(static_cast<long>(v.get<long long>()));
      else if (v.is_string())
        m[i][k] = parse_rational(v.get<std::string>());
      else
        throw ConfigError("matrix entries must be integers or rational strings");
    }
  }
  return m;
}

std::string cartan_to_json() {
  json rows = json::array();
  for (int i = 0; i < 7; ++i) {
    json row = json::array();
    for (int k = 0; k < 7; ++k) row.push_back(kCartanE6[i][k]);
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

}  // namespace pvi6
