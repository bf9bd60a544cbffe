#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sdg {

/// Exact scalar field used everywhere in the library.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "7", "-3/4". Throws std::invalid_argument on malformed input.
inline Rational parse_rational(std::string_view text) {
  Rational r;
  if (text.empty() || r.set_str(std::string(text), 10) != 0)
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  if (r.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace sdg
