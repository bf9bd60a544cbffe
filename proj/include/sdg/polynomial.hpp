#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdg/rational.hpp"

namespace sdg {

/// Exponent vector of up to eight variables packed one byte per variable,
/// variable 0 in the most significant byte (so integer order is lex order).
class Monomial {
 public:
  static constexpr std::size_t kMaxVariables = 8;
  static constexpr unsigned kMaxExponent = 255;

  constexpr Monomial() = default;

  static Monomial variable(std::size_t i, unsigned power = 1) {
    Monomial m;
    m.set(i, power);
    return m;
  }

  static Monomial from_exponents(std::span<const unsigned> exps) {
    if (exps.size() > kMaxVariables) throw std::invalid_argument("too many polynomial variables");
    Monomial m;
    for (std::size_t i = 0; i < exps.size(); ++i) m.set(i, exps[i]);
    return m;
  }

  unsigned exponent(std::size_t i) const {
    return static_cast<unsigned>((bits_ >> shift(i)) & 0xffu);
  }

  unsigned degree() const {
    unsigned d = 0;
    for (std::size_t i = 0; i < kMaxVariables; ++i) d += exponent(i);
    return d;
  }

  /// Highest variable index with a nonzero exponent, plus one.
  std::size_t span() const {
    for (std::size_t i = kMaxVariables; i > 0; --i)
      if (exponent(i - 1)) return i;
    return 0;
  }

  Monomial operator*(Monomial o) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVariables; ++i) m.set(i, exponent(i) + o.exponent(i));
    return m;
  }

  std::uint64_t bits() const { return bits_; }

  friend constexpr auto operator<=>(Monomial, Monomial) = default;

 private:
  static constexpr unsigned shift(std::size_t i) { return static_cast<unsigned>(8 * (kMaxVariables - 1 - i)); }

  void set(std::size_t i, unsigned e) {
    if (i >= kMaxVariables) throw std::invalid_argument("polynomial variable index out of range");
    if (e > kMaxExponent) throw std::overflow_error("polynomial exponent overflow");
    bits_ &= ~(std::uint64_t{0xff} << shift(i));
    bits_ |= std::uint64_t{e} << shift(i);
  }

  std::uint64_t bits_ = 0;
};

/// Multivariate polynomial with exact rational coefficients in x0, x1, ...
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;

  static Polynomial constant(const Rational& c) {
    Polynomial p;
    p.add_term(Monomial{}, c);
    return p;
  }
  static Polynomial variable(std::size_t i) {
    Polynomial p;
    p.add_term(Monomial::variable(i), Rational(1));
    return p;
  }
  static Polynomial term(const Rational& c, Monomial m) {
    Polynomial p;
    p.add_term(m, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Total degree; the zero polynomial has degree 0.
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  /// Number of variables actually referenced.
  std::size_t variable_span() const {
    std::size_t s = 0;
    for (const auto& [m, c] : terms_) s = std::max(s, m.span());
    return s;
  }

  void add_term(Monomial m, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, Rational(-c));
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial out;
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
    return out;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [m, x] : a.terms_)
      for (const auto& [n, y] : b.terms_) out.add_term(m * n, Rational(x * y));
    return out;
  }
  friend Polynomial operator*(const Polynomial& a, const Rational& r) {
    Polynomial out;
    if (sgn(r) == 0) return out;
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, c * r);
    return out;
  }
  friend Polynomial operator*(const Rational& r, const Polynomial& a) { return a * r; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Partial derivative with respect to x_i.
  Polynomial derivative(std::size_t i) const {
    Polynomial out;
    for (const auto& [m, c] : terms_) {
      const unsigned e = m.exponent(i);
      if (e == 0) continue;
      std::array<unsigned, Monomial::kMaxVariables> exps{};
      for (std::size_t v = 0; v < Monomial::kMaxVariables; ++v) exps[v] = m.exponent(v);
      exps[i] = e - 1;
      out.add_term(Monomial::from_exponents(exps), Rational(c * e));
    }
    return out;
  }

  /// Evaluates the polynomial in any ring R that accepts right scaling by
  /// rationals. `one` is the unit of R.
  template <class R>
  R evaluate(std::span<const R> args, const R& one) const {
    const std::size_t nvars = variable_span();
    if (args.size() < nvars) throw std::invalid_argument("too few arguments for polynomial evaluation");
    std::vector<std::vector<R>> powers(nvars);
    std::vector<unsigned> max_exp(nvars, 0);
    for (const auto& [m, c] : terms_)
      for (std::size_t v = 0; v < nvars; ++v) max_exp[v] = std::max(max_exp[v], m.exponent(v));
    for (std::size_t v = 0; v < nvars; ++v) {
      powers[v].reserve(max_exp[v] + 1);
      powers[v].push_back(one);
      for (unsigned e = 1; e <= max_exp[v]; ++e) powers[v].push_back(powers[v].back() * args[v]);
    }
    R sum = one * Rational(0);
    for (const auto& [m, c] : terms_) {
      R t = one * c;
      for (std::size_t v = 0; v < nvars; ++v)
        if (const unsigned e = m.exponent(v)) t = t * powers[v][e];
      sum = sum + t;
    }
    return sum;
  }

  Rational evaluate(std::span<const Rational> point) const {
    Rational sum(0);
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (std::size_t v = 0; v < m.span(); ++v)
        for (unsigned e = 0; e < m.exponent(v); ++e) t *= point[v];
      sum += t;
    }
    return sum;
  }

  /// Renders with the vector-field grammar: "x0^2*x1 - 3*x1", "0" for zero.
  std::string to_string(std::string_view var = "x") const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Monomial, Rational>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
      if (a.first.degree() != b.first.degree()) return a.first.degree() > b.first.degree();
      return a.first > b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : ordered) {
      const Rational mag = abs(c);
      if (first)
        os << (sgn(c) < 0 ? "-" : "");
      else
        os << (sgn(c) < 0 ? " - " : " + ");
      first = false;
      const bool unit = mag == 1;
      if (m.degree() == 0 || !unit) os << mag.get_str();
      bool need_star = m.degree() != 0 && !unit;
      for (std::size_t v = 0; v < m.span(); ++v) {
        const unsigned e = m.exponent(v);
        if (!e) continue;
        if (need_star) os << '*';
        os << var << v;
        if (e > 1) os << '^' << e;
        need_star = true;
      }
    }
    return os.str();
  }

 private:
  Terms terms_;
};

inline bool is_zero(const Polynomial& p) { return p.is_zero(); }

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

/// A polynomial map R^n -> R^n (or a vector field), one polynomial per component.
using PolynomialMap = std::vector<Polynomial>;

inline unsigned degree(const PolynomialMap& f) {
  unsigned d = 0;
  for (const auto& p : f) d = std::max(d, p.degree());
  return d;
}

inline std::string to_string(const PolynomialMap& f) {
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += "; ";
    out += f[i].to_string();
  }
  return out;
}

}  // namespace sdg
