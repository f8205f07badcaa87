#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace torushh {

// mpq_class keeps values canonical (lowest terms, positive denominator)
// after every arithmetic operation.
using Rational = mpq_class;
using Vec = std::vector<Rational>;

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational parse_rational(const std::string& s) {
  Rational r(s);
  r.canonicalize();
  return r;
}

inline bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

}  // namespace torushh
