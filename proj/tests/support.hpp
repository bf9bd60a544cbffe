#pragma once

// Shared helpers for the unit tests: terse constructors and oracles that
// do not go through the code under test.

#include <initializer_list>
#include <utility>
#include <vector>

#include "sdg/harness/rng.hpp"
#include "sdg/polynomial.hpp"
#include "sdg/weil.hpp"

namespace test {

using sdg::DomainRef;
using sdg::Mask;
using sdg::Rational;
using sdg::WeilElement;

inline Rational q(long n, long d = 1) { return sdg::make_rational(n, d); }

/// W(dom, {{0, 2}, {1, 3}}) = 2 + 3 d1.
inline WeilElement W(const DomainRef& dom, std::initializer_list<std::pair<Mask, long>> terms) {
  WeilElement::Terms t;
  for (auto [m, c] : terms) t[m] += Rational(c);
  return WeilElement(dom, std::move(t));
}

inline WeilElement random_element(sdg::harness::Rng& rng, const DomainRef& dom) {
  WeilElement::Terms t;
  for (Mask m : dom->allowed_monomials()) t.emplace(m, Rational(rng.uniform(-5, 5)));
  return WeilElement(dom, std::move(t));
}

/// Product via ordinary polynomial multiplication in the generators,
/// followed by deletion of every term with a square or a zero monomial.
inline WeilElement product_oracle(const WeilElement& a, const WeilElement& b) {
  const std::size_t n = a.domain()->generator_count();
  auto poly = [n](const WeilElement& w) {
    sdg::Polynomial p;
    for (const auto& [m, c] : w.terms()) {
      sdg::Polynomial term = sdg::Polynomial::constant(c);
      for (std::size_t g = 0; g < n; ++g)
        if (m >> g & 1u) term = term * sdg::Polynomial::variable(g);
      p += term;
    }
    return p;
  };
  WeilElement::Terms out;
  const sdg::Polynomial prod = poly(a) * poly(b);
  for (const auto& [mono, c] : prod.terms()) {
    Mask m = 0;
    bool dead = false;
    for (std::size_t g = 0; g < n; ++g) {
      if (mono.exponent(g) >= 2) dead = true;
      if (mono.exponent(g) == 1) m |= Mask{1} << g;
    }
    if (!dead && !a.domain()->is_zero_monomial(m)) out[m] += c;
  }
  return WeilElement(a.domain(), std::move(out));
}

/// d/dx_i by lowering exponents term by term.
inline sdg::Polynomial differentiate(const sdg::Polynomial& p, std::size_t i) {
  sdg::Polynomial out;
  for (const auto& [mono, c] : p.terms()) {
    const unsigned e = mono.exponent(i);
    if (e == 0) continue;
    std::vector<unsigned> exps(sdg::Monomial::kMaxVariables);
    for (std::size_t v = 0; v < exps.size(); ++v) exps[v] = mono.exponent(v);
    exps[i] -= 1;
    out.add_term(sdg::Monomial::from_exponents(exps), c * Rational(e));
  }
  return out;
}

/// (D eta) xi - (D xi) eta.
inline sdg::PolynomialMap jacobian_bracket(const sdg::PolynomialMap& xi, const sdg::PolynomialMap& eta) {
  const std::size_t n = xi.size();
  sdg::PolynomialMap out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out[i] += differentiate(eta[i], j) * xi[j];
      out[i] -= differentiate(xi[i], j) * eta[j];
    }
  return out;
}

}  // namespace test
