#pragma once

// Random exact data for the suites. Integer coefficients in [-3, 3]
// throughout; invertibility is obtained by redrawing.

#include <array>
#include <numeric>
#include <vector>

#include "sdg/groupoids.hpp"
#include "sdg/harness/config.hpp"
#include "sdg/harness/rng.hpp"
#include "sdg/spaces.hpp"

namespace sdg::harness {

inline Rational small(Rng& rng) { return Rational(rng.uniform(-kCoefficientBound, kCoefficientBound)); }

inline Rational small_nonzero(Rng& rng) {
  for (;;)
    if (Rational r = small(rng); sgn(r) != 0) return r;
}

/// Dense polynomial in n variables of total degree <= deg.
inline Polynomial random_polynomial(Rng& rng, std::size_t n, unsigned deg) {
  const PairChart chart(n, deg);
  Polynomial p;
  for (const Monomial& m : chart.monomials()) p.add_term(m, small(rng));
  return p;
}

inline Matrix random_matrix(Rng& rng, std::size_t k) {
  Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m(i, j) = small(rng);
  return m;
}

inline Matrix random_invertible_matrix(Rng& rng, std::size_t k) {
  for (;;)
    if (Matrix m = random_matrix(rng, k); m.inverse()) return m;
}

inline std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[static_cast<std::size_t>(rng.uniform(0, long(i) - 1))]);
  return p;
}

/// Random element with a coefficient on every allowed monomial.
inline WeilElement random_weil(Rng& rng, const DomainRef& d) {
  WeilElement::Terms t;
  for (Mask m : d->allowed_monomials())
    if (Rational r = small(rng); sgn(r) != 0) t.emplace(m, r);
  return WeilElement(d, std::move(t));
}

/// Per-groupoid generators of fields, bisections and sections.
template <class G>
struct Generator;

template <>
struct Generator<PairGroupoid> {
  PairGroupoid g;
  unsigned degree;

  AGSection<PairGroupoid> field(Rng& rng) const {
    PolynomialMap xi;
    for (std::size_t i = 0; i < g.dimension(); ++i) xi.push_back(random_polynomial(rng, g.dimension(), degree));
    return AGSection<PairGroupoid>(g, std::move(xi));
  }

  /// x -> M x + b with M invertible, no infinitesimal part.
  WBisection<PairGroupoid> scalar_bisection(Rng& rng, const DomainRef& d) const {
    const std::size_t n = g.dimension();
    const Matrix m = random_invertible_matrix(rng, n);
    PairGroupoid::Arrows f;
    for (std::size_t i = 0; i < n; ++i) {
      Polynomial p = Polynomial::constant(small(rng));
      for (std::size_t j = 0; j < n; ++j) p += Polynomial::variable(j) * m(i, j);
      f.push_back(WeilPolynomial::constant(d, std::move(p)));
    }
    return WBisection<PairGroupoid>(g, d, std::move(f));
  }

  /// Scalar bisection plus a nilpotent polynomial perturbation.
  WBisection<PairGroupoid> bisection(Rng& rng, const DomainRef& d) const {
    auto f = scalar_bisection(rng, d).data();
    perturb(rng, d, f);
    return WBisection<PairGroupoid>(g, d, std::move(f));
  }

  /// Any section: a quadratic target map plus an affine perturbation.
  /// Degrees are kept low since they multiply under composition.
  WSection<PairGroupoid> section(Rng& rng, const DomainRef& d) const {
    PairGroupoid::Arrows f;
    for (std::size_t i = 0; i < g.dimension(); ++i)
      f.push_back(WeilPolynomial::constant(d, random_polynomial(rng, g.dimension(), 2)));
    perturb(rng, d, f, 1);
    return WSection<PairGroupoid>(g, d, std::move(f));
  }

 private:
  /// Nilpotent layers of degree <= min(field degree, 2).
  void perturb(Rng& rng, const DomainRef& d, PairGroupoid::Arrows& f) const {
    perturb(rng, d, f, std::min(degree, 2u));
  }

  void perturb(Rng& rng, const DomainRef& d, PairGroupoid::Arrows& f, unsigned deg) const {
    for (auto& c : f)
      for (Mask m : d->allowed_monomials())
        if (m != 0) c += WeilPolynomial::monomial(d, m, random_polynomial(rng, g.dimension(), deg));
  }
};

template <>
struct Generator<TrivialGaugeGroupoid> {
  TrivialGaugeGroupoid g;

  AGSection<TrivialGaugeGroupoid> field(Rng& rng) const {
    std::vector<Matrix> table;
    for (std::size_t x = 0; x < g.base_size(); ++x) table.push_back(random_matrix(rng, g.fiber_size()));
    return AGSection<TrivialGaugeGroupoid>(g, std::move(table));
  }

  WBisection<TrivialGaugeGroupoid> scalar_bisection(Rng& rng, const DomainRef& d) const {
    TrivialGaugeGroupoid::Arrows a;
    a.target = random_permutation(rng, g.base_size());
    for (std::size_t x = 0; x < g.base_size(); ++x)
      a.fiber.push_back(WeilMatrix::constant(d, random_invertible_matrix(rng, g.fiber_size())));
    return WBisection<TrivialGaugeGroupoid>(g, d, std::move(a));
  }

  WBisection<TrivialGaugeGroupoid> bisection(Rng& rng, const DomainRef& d) const {
    auto a = scalar_bisection(rng, d).data();
    perturb(rng, d, a);
    return WBisection<TrivialGaugeGroupoid>(g, d, std::move(a));
  }

  /// Target map need not be a permutation.
  WSection<TrivialGaugeGroupoid> section(Rng& rng, const DomainRef& d) const {
    TrivialGaugeGroupoid::Arrows a;
    for (std::size_t x = 0; x < g.base_size(); ++x) {
      a.target.push_back(static_cast<std::size_t>(rng.uniform(0, long(g.base_size()) - 1)));
      a.fiber.push_back(WeilMatrix::constant(d, random_invertible_matrix(rng, g.fiber_size())));
    }
    perturb(rng, d, a);
    return WSection<TrivialGaugeGroupoid>(g, d, std::move(a));
  }

 private:
  void perturb(Rng& rng, const DomainRef& d, TrivialGaugeGroupoid::Arrows& a) const {
    for (auto& h : a.fiber)
      for (Mask m : d->allowed_monomials())
        if (m != 0) h += WeilMatrix::monomial(d, m, random_matrix(rng, g.fiber_size()));
  }
};

// ---------------------------------------------------------------------------
// Engine data

/// Domains the ring laws are exercised on.
inline std::vector<DomainRef> engine_domains() {
  return {domain::first_order(), domain::power(2),          domain::first_neighbourhood(2),
          domain::power(3),      domain::cube_without_13_23(), domain::first_neighbourhood(3)};
}

/// A valid substitution: images of the source generators in `target`.
struct Substitution {
  DomainRef source;
  DomainRef target;
  std::vector<WeilElement> images;
};

inline Substitution random_substitution(Rng& rng) {
  const long which = rng.uniform(0, 3);
  Substitution s;
  if (which == 0) {  // D -> D(2)
    s.source = domain::first_order();
    s.target = domain::first_neighbourhood(2);
    s.images = {generator(s.target, 0) * small(rng) + generator(s.target, 1) * small(rng)};
  } else if (which == 1) {  // D^2 -> D^3
    s.source = domain::power(2);
    s.target = domain::power(3);
    const auto e1 = generator(s.target, 0), e2 = generator(s.target, 1), e3 = generator(s.target, 2);
    s.images = {e1 * small(rng) + e1 * e2 * small(rng), e2 * small(rng) + e2 * e3 * small(rng)};
  } else if (which == 2) {  // D^3{(1,3),(2,3)} -> D^2
    s.source = domain::cube_without_13_23();
    s.target = domain::power(2);
    const auto e1 = generator(s.target, 0), e2 = generator(s.target, 1);
    s.images = {e1 * small(rng), e2 * small(rng), e1 * e2 * small(rng)};
  } else {  // D^2 -> D
    s.source = domain::power(2);
    s.target = domain::first_order();
    const auto e = generator(s.target, 0);
    s.images = {e * small(rng), e * small(rng)};
  }
  return s;
}

/// Microsquares in `space` agreeing on D(2): shared 1, d1, d2 terms and
/// independent d1 d2 terms.
inline std::vector<WPoint> compatible_microsquares(Rng& rng, const Space& space, std::size_t count) {
  const DomainRef sq = domain::power(2);
  const std::size_t n = arity(space);
  std::vector<Rational> base(n);
  if (const auto* mg = std::get_if<MatrixGroup>(&space))
    base = random_invertible_matrix(rng, mg->size).entries();
  else
    for (auto& b : base) b = small(rng);
  std::vector<Rational> c1(n), c2(n);
  for (auto& c : c1) c = small(rng);
  for (auto& c : c2) c = small(rng);
  const WeilElement d1 = generator(sq, 0), d2 = generator(sq, 1);
  std::vector<WPoint> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<WeilElement> coords;
    for (std::size_t i = 0; i < n; ++i) coords.push_back(scalar(sq, base[i]) + d1 * c1[i] + d2 * c2[i] + d1 * d2 * small(rng));
    out.emplace_back(space, sq, std::move(coords));
  }
  return out;
}

/// Six microcubes in AffineSpace(n) meeting every precondition of the
/// general Jacobi identity. They share the 1, d1, d2, d3 terms; the
/// pairwise terms come in two values each:
///   d1d2: A on g123, g132, g312 and B on g213, g231, g321
///   d1d3: C on g123, g132, g213 and D on g231, g312, g321
///   d2d3: E on g123, g213, g231 and F on g132, g312, g321
/// and every cube gets its own d1d2d3 term.
inline SixMicrocubes<WPoint> compatible_six_cubes(Rng& rng, std::size_t n) {
  const DomainRef cube = domain::power(3);
  const auto draw = [&] {
    std::vector<Rational> v(n);
    for (auto& x : v) x = small(rng);
    return v;
  };
  const auto c0 = draw(), c1 = draw(), c2 = draw(), c3 = draw();
  const auto A = draw(), B = draw(), C = draw(), D = draw(), E = draw(), F = draw();
  const WeilElement e1 = generator(cube, 0), e2 = generator(cube, 1), e3 = generator(cube, 2);
  const auto make = [&](const std::vector<Rational>& v12, const std::vector<Rational>& v13,
                        const std::vector<Rational>& v23) {
    std::vector<WeilElement> coords;
    for (std::size_t i = 0; i < n; ++i)
      coords.push_back(scalar(cube, c0[i]) + e1 * c1[i] + e2 * c2[i] + e3 * c3[i] + e1 * e2 * v12[i] +
                       e1 * e3 * v13[i] + e2 * e3 * v23[i] + e1 * e2 * e3 * small(rng));
    return WPoint(AffineSpace{n}, cube, std::move(coords));
  };
  return {make(A, C, E), make(A, C, F), make(B, C, E), make(B, D, E), make(A, D, F), make(B, D, F)};
}

/// A random cube and a second one differing from it only on monomials that
/// contain both axes other than i.
inline std::pair<WPoint, WPoint> compatible_cube_pair(Rng& rng, int i, std::size_t n) {
  const DomainRef cube = domain::power(3);
  const auto [j, k] = std::array<std::pair<std::size_t, std::size_t>, 3>{{{1, 2}, {0, 2}, {0, 1}}}[i - 1];
  const Mask jk = generator_mask(j) | generator_mask(k);
  std::vector<WeilElement> plus, minus;
  for (std::size_t c = 0; c < n; ++c) {
    WeilElement p = random_weil(rng, cube);
    WeilElement q = p;
    q += WeilElement::monomial(cube, jk, small(rng));
    q += WeilElement::monomial(cube, 7, small(rng));
    plus.push_back(std::move(p));
    minus.push_back(std::move(q));
  }
  return {WPoint(AffineSpace{n}, cube, std::move(plus)), WPoint(AffineSpace{n}, cube, std::move(minus))};
}

}  // namespace sdg::harness
