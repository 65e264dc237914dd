#pragma once
#include <gmpxx.h>

#include <string>

#include "pvi6/errors.hpp"

namespace pvi6 {

/// Exact rational scalar. GMP's canonical mpq_class: arithmetic results are
/// always reduced, comparisons are exact.
using Rat = mpq_class;

/// Parse "num/den" or "num" (optional sign, decimal digits). Throws ConfigError on junk.
inline Rat parse_rational(const std::string& text) {
  if (text.empty()) throw ConfigError("empty rational literal");
  std::size_t slash = text.find('/');
  auto check_int = [&](const std::string& part) {
    if (part.empty()) throw ConfigError("bad rational literal: '" + text + "'");
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) throw ConfigError("bad rational literal: '" + text + "'");
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9')
        throw ConfigError("bad rational literal: '" + text + "'");
  };
  auto strip_plus = [](const std::string& part) {
    return part[0] == '+' ? part.substr(1) : part;
  };
  if (slash == std::string::npos) {
    check_int(text);
    return Rat(strip_plus(text));
  }
  std::string num = text.substr(0, slash), den = text.substr(slash + 1);
  check_int(num);
  check_int(den);
  Rat r(strip_plus(num) + "/" + strip_plus(den));
  if (r.get_den() == 0) throw ConfigError("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

/// Format canonically: "num" when the denominator is 1, else "num/den".
inline std::string rational_to_string(const Rat& r) { return r.get_str(); }

inline double to_double(const Rat& r) { return r.get_d(); }

}  // namespace pvi6
