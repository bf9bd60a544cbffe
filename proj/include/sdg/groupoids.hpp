#pragma once

// Concrete groupoids, their Weil-parametrized sections and bisections, the
// * product and bisection inversion, and sections of the Lie algebroid
// (flows X_d).
//
// Two instances are provided:
//   PairGroupoid(n):           arrows (y, x) of R^n x R^n; a section is
//                              x -> (f(x), x) for a polynomial map f.
//   TrivialGaugeGroupoid(m,k): arrows (y, h, x) with y, x in {0..m-1} and h
//                              an invertible k x k matrix; a section is
//                              x -> (f(x), h(x), x).

#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdg/matrix.hpp"
#include "sdg/polynomial.hpp"
#include "sdg/spaces.hpp"
#include "sdg/weil.hpp"

namespace sdg {

using WeilPolynomial = Weil<Polynomial>;
using WeilMatrix = Weil<Matrix>;

/// Raised when the invertibility witness of a bisection fails.
struct NotABisection : std::domain_error {
  using std::domain_error::domain_error;
};

class PairGroupoid {
 public:
  /// Target map f with Weil coefficients.
  using Arrows = std::vector<WeilPolynomial>;
  /// Polynomial vector field.
  using Field = PolynomialMap;

  explicit PairGroupoid(std::size_t dimension) : dim_(dimension) {
    if (dim_ == 0 || dim_ > Monomial::kMaxVariables)
      throw std::invalid_argument("pair groupoid dimension must be between 1 and 8");
  }

  std::size_t dimension() const { return dim_; }
  std::string to_string() const { return "pair:dim=" + std::to_string(dim_); }
  friend bool operator==(const PairGroupoid&, const PairGroupoid&) = default;

 private:
  std::size_t dim_;
};

class TrivialGaugeGroupoid {
 public:
  struct Arrows {
    std::vector<std::size_t> target;
    std::vector<WeilMatrix> fiber;
    friend bool operator==(const Arrows&, const Arrows&) = default;
  };
  /// One k x k matrix per base point.
  using Field = std::vector<Matrix>;

  TrivialGaugeGroupoid(std::size_t base_size, std::size_t fiber_size) : base_(base_size), k_(fiber_size) {
    if (base_ == 0 || k_ == 0) throw std::invalid_argument("gauge groupoid needs a nonempty base and fiber");
  }

  std::size_t base_size() const { return base_; }
  std::size_t fiber_size() const { return k_; }
  std::string to_string() const { return "gauge:base=" + std::to_string(base_) + ":k=" + std::to_string(k_); }
  friend bool operator==(const TrivialGaugeGroupoid&, const TrivialGaugeGroupoid&) = default;

 private:
  std::size_t base_;
  std::size_t k_;
};

namespace detail {

inline void validate(const PairGroupoid& g, const DomainRef& domain, const PairGroupoid::Arrows& f) {
  if (f.size() != g.dimension()) throw std::invalid_argument("section needs one component per coordinate");
  for (const auto& c : f) {
    if (!same_domain(c.domain(), domain)) throw DomainMismatch("section component lives in a different algebra");
    for (const auto& [m, p] : c.terms())
      if (p.variable_span() > g.dimension())
        throw std::invalid_argument("section refers to a variable beyond x" + std::to_string(g.dimension() - 1));
  }
}

inline void validate(const TrivialGaugeGroupoid& g, const DomainRef& domain, const TrivialGaugeGroupoid::Arrows& a) {
  const std::size_t m = g.base_size();
  const std::size_t k = g.fiber_size();
  if (a.target.size() != m || a.fiber.size() != m)
    throw std::invalid_argument("gauge section needs one arrow per base point");
  for (auto t : a.target)
    if (t >= m) throw std::invalid_argument("gauge section target outside the base");
  for (const auto& h : a.fiber) {
    if (!same_domain(h.domain(), domain)) throw DomainMismatch("fiber matrix lives in a different algebra");
    for (const auto& [mask, mat] : h.terms())
      if (mat.rows() != k || mat.cols() != k) throw std::invalid_argument("fiber matrix has the wrong shape");
    const Matrix* base = h.find(0);
    if (!base || !base->inverse()) throw std::invalid_argument("fiber arrow is not an invertible matrix");
  }
}

inline void validate_field(const PairGroupoid& g, const PolynomialMap& xi) {
  if (xi.size() != g.dimension()) throw std::invalid_argument("vector field needs one component per coordinate");
  for (const auto& p : xi)
    if (p.variable_span() > g.dimension())
      throw std::invalid_argument("vector field refers to a variable beyond x" + std::to_string(g.dimension() - 1));
}

inline void validate_field(const TrivialGaugeGroupoid& g, const std::vector<Matrix>& table) {
  if (table.size() != g.base_size()) throw std::invalid_argument("matrix table needs one entry per base point");
  for (const auto& a : table)
    if (a.rows() != g.fiber_size() || a.cols() != g.fiber_size())
      throw std::invalid_argument("matrix table entry has the wrong shape");
}

}  // namespace detail

/// A section of the source map with Weil parameters.
template <class G>
class WSection {
 public:
  using Groupoid = G;
  using Arrows = typename G::Arrows;

  WSection(G groupoid, DomainRef domain, Arrows data)
      : groupoid_(std::move(groupoid)), domain_(std::move(domain)), data_(std::move(data)) {
    detail::validate(groupoid_, domain_, data_);
  }

  const G& groupoid() const { return groupoid_; }
  const DomainRef& domain() const { return domain_; }
  const Arrows& data() const { return data_; }

  friend bool operator==(const WSection& a, const WSection& b) {
    return a.groupoid_ == b.groupoid_ && same_domain(a.domain_, b.domain_) && a.data_ == b.data_;
  }

 private:
  G groupoid_;
  DomainRef domain_;
  Arrows data_;
};

/// Section of the Lie algebroid, as exact finite data.
template <class G>
class AGSection {
 public:
  using Groupoid = G;
  using Field = typename G::Field;

  AGSection(G groupoid, Field data) : groupoid_(std::move(groupoid)), data_(std::move(data)) {
    detail::validate_field(groupoid_, data_);
  }

  static AGSection zero(const G& g);

  const G& groupoid() const { return groupoid_; }
  const Field& data() const { return data_; }

  bool is_zero() const {
    for (const auto& c : data_)
      if (!sdg::is_zero(c)) return false;
    return true;
  }

  friend bool operator==(const AGSection&, const AGSection&) = default;

 private:
  G groupoid_;
  Field data_;
};

template <>
inline AGSection<PairGroupoid> AGSection<PairGroupoid>::zero(const PairGroupoid& g) {
  return AGSection(g, PolynomialMap(g.dimension()));
}

template <>
inline AGSection<TrivialGaugeGroupoid> AGSection<TrivialGaugeGroupoid>::zero(const TrivialGaugeGroupoid& g) {
  return AGSection(g, std::vector<Matrix>(g.base_size(), Matrix(g.fiber_size(), g.fiber_size())));
}

// ---------------------------------------------------------------------------
// Pair groupoid machinery

/// x_i as a constant Weil polynomial.
inline WeilPolynomial coordinate(const DomainRef& domain, std::size_t i) {
  return WeilPolynomial::constant(domain, Polynomial::variable(i));
}

inline std::vector<WeilPolynomial> identity_map(const DomainRef& domain, std::size_t n) {
  std::vector<WeilPolynomial> id;
  for (std::size_t i = 0; i < n; ++i) id.push_back(coordinate(domain, i));
  return id;
}

namespace detail {

/// Image of `w` in the quotient by the annihilator of d^S: keeps monomials T
/// with d^S * d^T != 0. Multiplication by d^S factors through it.
inline WeilPolynomial truncate_for(const WeilPolynomial& w, Mask s) {
  WeilPolynomial::Terms kept;
  for (const auto& [t, p] : w.terms())
    if ((t & s) == 0 && !w.domain()->is_zero_monomial(s | t)) kept.emplace(t, p);
  return WeilPolynomial(w.domain(), std::move(kept));
}

}  // namespace detail

/// f o g for polynomial maps with Weil coefficients in one domain.
inline std::vector<WeilPolynomial> compose(const std::vector<WeilPolynomial>& f,
                                           const std::vector<WeilPolynomial>& g, const DomainRef& domain) {
  const WeilPolynomial one = WeilPolynomial::constant(domain, Polynomial::constant(1));
  std::vector<WeilPolynomial> out;
  out.reserve(f.size());
  std::map<Mask, std::vector<WeilPolynomial>> truncated;
  for (const auto& fi : f) {
    WeilPolynomial sum(domain);
    for (const auto& [s, p] : fi.terms()) {
      if (s == 0) {
        sum += p.evaluate<WeilPolynomial>(g, one);
        continue;
      }
      auto it = truncated.find(s);
      if (it == truncated.end()) {
        std::vector<WeilPolynomial> args;
        for (const auto& gj : g) args.push_back(detail::truncate_for(gj, s));
        it = truncated.emplace(s, std::move(args)).first;
      }
      const WeilPolynomial value = p.evaluate<WeilPolynomial>(it->second, detail::truncate_for(one, s));
      sum += WeilPolynomial::monomial(domain, s, Polynomial::constant(1)) * value;
    }
    out.push_back(std::move(sum));
  }
  return out;
}

namespace detail {

struct AffinePart {
  Matrix linear;
  std::vector<Rational> offset;
};

/// Scalar part of f as x -> M x + b; throws when f's scalar part is not an
/// invertible affine map.
inline AffinePart invertible_affine_part(const std::vector<WeilPolynomial>& f) {
  const std::size_t n = f.size();
  AffinePart a{Matrix(n, n), std::vector<Rational>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const Polynomial* p = f[i].find(0);
    if (!p) continue;
    for (const auto& [m, c] : p->terms()) {
      if (m.degree() > 1) throw NotABisection("scalar part of the target map is not affine");
      if (m.degree() == 0) {
        a.offset[i] = c;
        continue;
      }
      for (std::size_t j = 0; j < n; ++j)
        if (m.exponent(j)) a.linear(i, j) = c;
    }
  }
  if (!a.linear.inverse()) throw NotABisection("scalar part of the target map is not invertible");
  return a;
}

}  // namespace detail

/// Two-sided compositional inverse of f, where f's scalar part is an
/// invertible affine map x -> Mx + b and the rest is nilpotent. Iterates
/// g <- g - M^{-1} (f o g - id) from the scalar inverse; each step fixes one
/// more order of nilpotency, so at most (generator count + 1) steps.
inline std::vector<WeilPolynomial> formal_inverse(const std::vector<WeilPolynomial>& f, const DomainRef& domain) {
  const std::size_t n = f.size();
  const auto affine = detail::invertible_affine_part(f);
  const Matrix minv = *affine.linear.inverse();
  const auto id = identity_map(domain, n);

  auto apply_minv = [&](const std::vector<WeilPolynomial>& v) {
    std::vector<WeilPolynomial> out(n, WeilPolynomial(domain));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(minv(i, j)) != 0) out[i] += v[j] * minv(i, j);
    return out;
  };

  std::vector<WeilPolynomial> shifted;
  for (std::size_t j = 0; j < n; ++j)
    shifted.push_back(id[j] - WeilPolynomial::constant(domain, Polynomial::constant(affine.offset[j])));
  std::vector<WeilPolynomial> g = apply_minv(shifted);

  for (std::size_t step = 0; step <= domain->generator_count() + 1; ++step) {
    auto residual = compose(f, g, domain);
    bool done = true;
    for (std::size_t i = 0; i < n; ++i) {
      residual[i] -= id[i];
      done = done && residual[i].is_zero();
    }
    if (done) break;
    const auto correction = apply_minv(residual);
    for (std::size_t i = 0; i < n; ++i) g[i] -= correction[i];
  }
  if (compose(f, g, domain) != id || compose(g, f, domain) != id)
    throw std::logic_error("formal inverse did not converge");
  return g;
}

// ---------------------------------------------------------------------------
// Uniform section operations

namespace detail {

inline PairGroupoid::Arrows star_data(const PairGroupoid&, const DomainRef& domain, const PairGroupoid::Arrows& s,
                                      const PairGroupoid::Arrows& r) {
  return compose(s, r, domain);
}

inline TrivialGaugeGroupoid::Arrows star_data(const TrivialGaugeGroupoid& g, const DomainRef&,
                                              const TrivialGaugeGroupoid::Arrows& s,
                                              const TrivialGaugeGroupoid::Arrows& r) {
  TrivialGaugeGroupoid::Arrows out;
  for (std::size_t x = 0; x < g.base_size(); ++x) {
    const std::size_t y = r.target[x];
    out.target.push_back(s.target[y]);
    out.fiber.push_back(s.fiber[y] * r.fiber[x]);
  }
  return out;
}

inline PairGroupoid::Arrows identity_data(const PairGroupoid& g, const DomainRef& domain) {
  return identity_map(domain, g.dimension());
}

inline TrivialGaugeGroupoid::Arrows identity_data(const TrivialGaugeGroupoid& g, const DomainRef& domain) {
  TrivialGaugeGroupoid::Arrows out;
  out.target.resize(g.base_size());
  std::iota(out.target.begin(), out.target.end(), std::size_t{0});
  out.fiber.assign(g.base_size(), WeilMatrix::constant(domain, Matrix::identity(g.fiber_size())));
  return out;
}

inline void check_witness(const PairGroupoid&, const PairGroupoid::Arrows& f) { invertible_affine_part(f); }

inline void check_witness(const TrivialGaugeGroupoid& g, const TrivialGaugeGroupoid::Arrows& a) {
  std::vector<bool> hit(g.base_size(), false);
  for (auto t : a.target) {
    if (hit[t]) throw NotABisection("target map is not a permutation of the base");
    hit[t] = true;
  }
}

inline PairGroupoid::Arrows inverse_data(const PairGroupoid&, const DomainRef& domain,
                                         const PairGroupoid::Arrows& f) {
  return formal_inverse(f, domain);
}

inline Matrix inverse_or_throw(const Matrix& m) {
  auto inv = m.inverse();
  if (!inv) throw NotABisection("fiber matrix is singular");
  return *inv;
}

/// tau(x) = sigma(p^{-1}(x))^{-1} with p the target permutation.
inline TrivialGaugeGroupoid::Arrows inverse_data(const TrivialGaugeGroupoid& g, const DomainRef&,
                                                 const TrivialGaugeGroupoid::Arrows& a) {
  const std::size_t m = g.base_size();
  std::vector<std::size_t> pinv(m);
  for (std::size_t x = 0; x < m; ++x) pinv[a.target[x]] = x;
  TrivialGaugeGroupoid::Arrows out;
  out.target = pinv;
  for (std::size_t x = 0; x < m; ++x) out.fiber.push_back(invert(a.fiber[pinv[x]], inverse_or_throw));
  return out;
}

template <class F>
PairGroupoid::Arrows transform_coefficients(const PairGroupoid::Arrows& f, F&& fn) {
  PairGroupoid::Arrows out;
  for (const auto& c : f) out.push_back(fn(c));
  return out;
}

template <class F>
TrivialGaugeGroupoid::Arrows transform_coefficients(const TrivialGaugeGroupoid::Arrows& a, F&& fn) {
  TrivialGaugeGroupoid::Arrows out;
  out.target = a.target;
  for (const auto& h : a.fiber) out.fiber.push_back(fn(h));
  return out;
}

}  // namespace detail

/// A section whose target map has a two-sided inverse (scalar part an
/// invertible affine map, resp. a permutation of the base).
template <class G>
class WBisection : public WSection<G> {
 public:
  explicit WBisection(WSection<G> s) : WSection<G>(std::move(s)) { detail::check_witness(this->groupoid(), this->data()); }
  WBisection(G groupoid, DomainRef domain, typename G::Arrows data)
      : WBisection(WSection<G>(std::move(groupoid), std::move(domain), std::move(data))) {}

  const WSection<G>& section() const { return *this; }
};

template <class G>
WBisection<G> identity_section(const G& g, const DomainRef& domain) {
  return WBisection<G>(g, domain, detail::identity_data(g, domain));
}

/// (sigma * rho)(x) = sigma(beta(rho(x))) rho(x).
template <class G>
WSection<G> star(const WSection<G>& sigma, const WSection<G>& rho) {
  if (!(sigma.groupoid() == rho.groupoid())) throw std::invalid_argument("sections of different groupoids");
  if (!same_domain(sigma.domain(), rho.domain()))
    throw DomainMismatch("sections over different algebras " + sigma.domain()->to_string() + " and " +
                         rho.domain()->to_string());
  return WSection<G>(sigma.groupoid(), sigma.domain(),
                     detail::star_data(sigma.groupoid(), sigma.domain(), sigma.data(), rho.data()));
}

template <class G>
WBisection<G> star(const WBisection<G>& sigma, const WBisection<G>& rho) {
  return WBisection<G>(star(sigma.section(), rho.section()));
}

template <class G>
WSection<G> operator*(const WSection<G>& a, const WSection<G>& b) {
  return star(a, b);
}

template <class G>
WBisection<G> operator*(const WBisection<G>& a, const WBisection<G>& b) {
  return star(a, b);
}

template <class G>
WBisection<G> invert_bisection(const WBisection<G>& sigma) {
  return WBisection<G>(sigma.groupoid(), sigma.domain(),
                       detail::inverse_data(sigma.groupoid(), sigma.domain(), sigma.data()));
}

/// Applies an algebra map (restriction, substitution, relabeling) to every
/// Weil coefficient of a section, landing in `target`.
template <class G, class F>
WSection<G> map_section(const WSection<G>& s, const DomainRef& target, F&& fn) {
  return WSection<G>(s.groupoid(), target, detail::transform_coefficients(s.data(), fn));
}

template <class G>
WSection<G> substitute(const WSection<G>& s, std::span<const WeilElement> images, const DomainRef& target) {
  return map_section(s, target, [&](const auto& w) { return substitute(w, images, target); });
}

template <class G>
WSection<G> restrict_section(const WSection<G>& s, const DomainRef& sub) {
  return map_section(s, sub, [&](const auto& w) { return w.restrict(sub); });
}

/// Sigma_eps on a section-valued microcube; see sigma_perm on points.
template <class G>
WSection<G> sigma_perm(const WSection<G>& s, std::span<const std::size_t> eps) {
  if (eps.size() != s.domain()->generator_count())
    throw std::invalid_argument("permutation size does not match the number of generators");
  const DomainRef target = relabel_domain(*s.domain(), eps);
  return map_section(s, target, [&](const auto& w) { return w.relabel(eps, target); });
}

template <class G>
WBisection<G> sigma_perm(const WBisection<G>& s, std::span<const std::size_t> eps) {
  return WBisection<G>(sigma_perm(s.section(), eps));
}

template <class G>
bool has_infinitesimal_part(const WSection<G>& s) {
  bool found = false;
  map_section(s, s.domain(), [&](const auto& w) {
    if (!w.is_constant()) found = true;
    return w;
  });
  return found;
}

/// The same section with only its scalar data, re-read over `target`.
template <class G>
WSection<G> scalar_section(const WSection<G>& s, const DomainRef& target) {
  return map_section(s, target, [&](const auto& w) {
    using W = std::decay_t<decltype(w)>;
    const auto* c = w.find(0);
    return c ? W::constant(target, *c) : W(target);
  });
}

template <class G>
bool is_identity(const WSection<G>& s) {
  return s == identity_section(s.groupoid(), s.domain()).section();
}

/// Is the scalar part of s the identity section?
template <class G>
bool is_identity_at_origin(const WSection<G>& s) {
  const DomainRef d = s.domain();
  return scalar_section(s, d) == identity_section(s.groupoid(), d).section();
}

// ---------------------------------------------------------------------------
// Algebroid sections

template <class G>
AGSection<G> operator+(const AGSection<G>& a, const AGSection<G>& b) {
  if (!(a.groupoid() == b.groupoid())) throw std::invalid_argument("sections of different groupoids");
  auto data = a.data();
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = data[i] + b.data()[i];
  return AGSection<G>(a.groupoid(), std::move(data));
}

template <class G>
AGSection<G> operator*(const Rational& r, const AGSection<G>& a) {
  auto data = a.data();
  for (auto& c : data) c = c * r;
  return AGSection<G>(a.groupoid(), std::move(data));
}

template <class G>
AGSection<G> operator-(const AGSection<G>& a) {
  return Rational(-1) * a;
}

template <class G>
AGSection<G> operator-(const AGSection<G>& a, const AGSection<G>& b) {
  return a + (-b);
}

namespace detail {

inline void require_d_point(const WeilElement& e) {
  if (e.find(0) != nullptr || !(e * e).is_zero())
    throw std::invalid_argument("not a D-point: " + sdg::to_string(e) + " does not square to zero");
}

inline PairGroupoid::Arrows flow_data(const PairGroupoid& g, const PolynomialMap& xi, const WeilElement& e) {
  PairGroupoid::Arrows f;
  for (std::size_t i = 0; i < g.dimension(); ++i) f.push_back(coordinate(e.domain(), i) + lift(e, xi[i]));
  return f;
}

inline TrivialGaugeGroupoid::Arrows flow_data(const TrivialGaugeGroupoid& g, const std::vector<Matrix>& table,
                                              const WeilElement& e) {
  auto out = identity_data(g, e.domain());
  for (std::size_t x = 0; x < g.base_size(); ++x) out.fiber[x] += lift(e, table[x]);
  return out;
}

}  // namespace detail

/// X_e: the flow of X at a square-zero infinitesimal e.
template <class G>
WBisection<G> section_at(const AGSection<G>& X, const WeilElement& e) {
  detail::require_d_point(e);
  return WBisection<G>(X.groupoid(), e.domain(), detail::flow_data(X.groupoid(), X.data(), e));
}

/// Coefficient of d^m in a section, read back as algebroid data.
inline AGSection<PairGroupoid> extract_field(const WSection<PairGroupoid>& s, Mask m) {
  PolynomialMap xi;
  for (const auto& c : s.data()) {
    const Polynomial* p = c.find(m);
    xi.push_back(p ? *p : Polynomial{});
  }
  return AGSection<PairGroupoid>(s.groupoid(), std::move(xi));
}

inline AGSection<TrivialGaugeGroupoid> extract_field(const WSection<TrivialGaugeGroupoid>& s, Mask m) {
  const std::size_t k = s.groupoid().fiber_size();
  std::vector<Matrix> table;
  for (const auto& h : s.data().fiber) {
    const Matrix* a = h.find(m);
    table.push_back(a ? *a : Matrix(k, k));
  }
  return AGSection<TrivialGaugeGroupoid>(s.groupoid(), std::move(table));
}

// ---------------------------------------------------------------------------
// Ambient coordinates

/// Coordinates of pair-groupoid sections: coefficient of each monomial of
/// degree <= degree_bound in each component.
class PairChart {
 public:
  PairChart(std::size_t dimension, unsigned degree_bound) : dim_(dimension), bound_(degree_bound) {
    std::vector<unsigned> exps(dim_, 0);
    enumerate(exps, 0, bound_);
    std::sort(monomials_.begin(), monomials_.end());
    for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
  }

  std::size_t dimension() const { return dim_; }
  unsigned degree_bound() const { return bound_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  std::size_t arity() const { return dim_ * monomials_.size(); }
  Space space() const { return AffineSpace{arity()}; }

  std::size_t index(std::size_t component, Monomial m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw std::out_of_range("monomial exceeds the chart's degree bound");
    return component * monomials_.size() + it->second;
  }

  friend bool operator==(const PairChart& a, const PairChart& b) { return a.dim_ == b.dim_ && a.bound_ == b.bound_; }

 private:
  void enumerate(std::vector<unsigned>& exps, std::size_t var, unsigned left) {
    if (var == dim_) {
      monomials_.push_back(Monomial::from_exponents(exps));
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      exps[var] = e;
      enumerate(exps, var + 1, left - e);
    }
    exps[var] = 0;
  }

  std::size_t dim_;
  unsigned bound_;
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t> index_;
};

/// Coordinates of gauge sections: the fibers as one block-diagonal matrix in
/// MatrixGroup(m k); the (discrete) target map is part of the chart.
class GaugeChart {
 public:
  GaugeChart(std::size_t base_size, std::size_t fiber_size, std::vector<std::size_t> target)
      : m_(base_size), k_(fiber_size), target_(std::move(target)) {}

  std::size_t size() const { return m_ * k_; }
  Space space() const { return MatrixGroup{size()}; }
  const std::vector<std::size_t>& target() const { return target_; }
  std::size_t index(std::size_t x, std::size_t i, std::size_t j) const { return (x * k_ + i) * size() + x * k_ + j; }

  friend bool operator==(const GaugeChart&, const GaugeChart&) = default;

 private:
  std::size_t m_;
  std::size_t k_;
  std::vector<std::size_t> target_;
};

inline PairChart ambient_chart(std::span<const WSection<PairGroupoid>> sections) {
  if (sections.empty()) throw std::invalid_argument("chart of no sections");
  unsigned bound = 0;
  for (const auto& s : sections)
    for (const auto& c : s.data())
      for (const auto& [m, p] : c.terms()) bound = std::max(bound, p.degree());
  return PairChart(sections.front().groupoid().dimension(), bound);
}

inline GaugeChart ambient_chart(std::span<const WSection<TrivialGaugeGroupoid>> sections) {
  if (sections.empty()) throw std::invalid_argument("chart of no sections");
  const auto& g = sections.front().groupoid();
  for (const auto& s : sections)
    if (s.data().target != sections.front().data().target)
      throw IncompatiblePoints("gauge sections with different target maps have no common chart");
  return GaugeChart(g.base_size(), g.fiber_size(), sections.front().data().target);
}

template <class G>
auto ambient_chart(const WSection<G>& s) {
  return ambient_chart(std::span<const WSection<G>>(&s, 1));
}

inline WPoint as_ambient_point(const WSection<PairGroupoid>& s, const PairChart& chart) {
  const DomainRef& d = s.domain();
  std::vector<WeilElement::Terms> coords(chart.arity());
  for (std::size_t i = 0; i < s.data().size(); ++i)
    for (const auto& [mask, p] : s.data()[i].terms())
      for (const auto& [mono, c] : p.terms()) coords[chart.index(i, mono)].emplace(mask, c);
  std::vector<WeilElement> out;
  out.reserve(coords.size());
  for (auto& t : coords) out.emplace_back(d, std::move(t));
  return WPoint(chart.space(), d, std::move(out));
}

inline WPoint as_ambient_point(const WSection<TrivialGaugeGroupoid>& s, const GaugeChart& chart) {
  if (s.data().target != chart.target()) throw IncompatiblePoints("section does not fit the gauge chart");
  const DomainRef& d = s.domain();
  const std::size_t k = s.groupoid().fiber_size();
  std::vector<WeilElement::Terms> coords(chart.size() * chart.size());
  for (std::size_t x = 0; x < s.groupoid().base_size(); ++x)
    for (const auto& [mask, mat] : s.data().fiber[x].terms())
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (sgn(mat(i, j)) != 0) coords[chart.index(x, i, j)].emplace(mask, mat(i, j));
  std::vector<WeilElement> out;
  out.reserve(coords.size());
  for (auto& t : coords) out.emplace_back(d, std::move(t));
  return WPoint(chart.space(), d, std::move(out));
}

template <class G>
WPoint as_ambient_point(const WSection<G>& s) {
  return as_ambient_point(s, ambient_chart(s));
}

/// Inverse of as_ambient_point.
inline WSection<PairGroupoid> reconstitute(const WPoint& p, const PairChart& chart, const PairGroupoid& g) {
  if (!(p.space() == chart.space())) throw IncompatiblePoints("point does not live in the chart's space");
  const DomainRef& d = p.domain();
  PairGroupoid::Arrows f;
  const std::size_t per = chart.monomials().size();
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    std::map<Mask, Polynomial> layers;
    for (std::size_t a = 0; a < per; ++a)
      for (const auto& [mask, c] : p.coords()[i * per + a].terms())
        layers[mask].add_term(chart.monomials()[a], c);
    f.emplace_back(d, std::move(layers));
  }
  return WSection<PairGroupoid>(g, d, std::move(f));
}

inline WSection<TrivialGaugeGroupoid> reconstitute(const WPoint& p, const GaugeChart& chart,
                                                   const TrivialGaugeGroupoid& g) {
  if (!(p.space() == chart.space())) throw IncompatiblePoints("point does not live in the chart's space");
  const DomainRef& d = p.domain();
  const std::size_t k = g.fiber_size();
  std::vector<bool> used(p.coords().size(), false);
  TrivialGaugeGroupoid::Arrows a;
  a.target = chart.target();
  for (std::size_t x = 0; x < g.base_size(); ++x) {
    std::map<Mask, Matrix> layers;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t idx = chart.index(x, i, j);
        used[idx] = true;
        for (const auto& [mask, c] : p.coords()[idx].terms()) {
          auto [it, fresh] = layers.try_emplace(mask, k, k);
          it->second(i, j) = c;
        }
      }
    a.fiber.emplace_back(d, std::move(layers));
  }
  for (std::size_t idx = 0; idx < used.size(); ++idx)
    if (!used[idx] && !p.coords()[idx].is_zero())
      throw IncompatiblePoints("point is not block diagonal, so it is not a gauge section");
  return WSection<TrivialGaugeGroupoid>(g, d, std::move(a));
}

/// Reads a tangent vector at the identity section as an algebroid section.
template <class G, class Chart>
AGSection<G> field_from_tangent(const Tangent& t, const Chart& chart, const G& g) {
  const WSection<G> s = reconstitute(t.point(), chart, g);
  if (!is_identity_at_origin(s)) throw IncompatiblePoints("tangent vector is not based at the identity section");
  return extract_field(s, generator_mask(0));
}

// ---------------------------------------------------------------------------
// Printing

inline std::string to_string(const AGSection<PairGroupoid>& X) { return to_string(X.data()); }

inline std::string to_string(const AGSection<TrivialGaugeGroupoid>& X) {
  std::string out;
  for (std::size_t x = 0; x < X.data().size(); ++x) {
    if (x) out += "; ";
    out += std::to_string(x) + ": " + X.data()[x].to_string();
  }
  return out;
}

template <class G>
std::ostream& operator<<(std::ostream& os, const AGSection<G>& X) {
  return os << to_string(X);
}

inline std::string to_string(const WSection<PairGroupoid>& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.data().size(); ++i) {
    if (i) os << "; ";
    bool first = true;
    for (const auto& [mask, p] : s.data()[i].terms()) {
      if (!first) os << " + ";
      first = false;
      if (mask == 0)
        os << '(' << p << ')';
      else
        os << WeilPolynomial::monomial_name(mask) << "*(" << p << ')';
    }
    if (first) os << '0';
  }
  return os.str();
}

inline std::string to_string(const WSection<TrivialGaugeGroupoid>& s) {
  std::ostringstream os;
  for (std::size_t x = 0; x < s.data().target.size(); ++x) {
    if (x) os << "; ";
    os << x << " -> " << s.data().target[x] << ": ";
    bool first = true;
    for (const auto& [mask, m] : s.data().fiber[x].terms()) {
      if (!first) os << " + ";
      first = false;
      if (mask != 0) os << WeilMatrix::monomial_name(mask) << '*';
      os << m;
    }
  }
  return os.str();
}

template <class G>
std::ostream& operator<<(std::ostream& os, const WSection<G>& s) {
  return os << to_string(s);
}

}  // namespace sdg
