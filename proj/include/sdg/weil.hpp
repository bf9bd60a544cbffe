#pragma once

// Square-free nilpotent monomial algebras ("Weil algebras") over exact
// rationals, with coefficients in an arbitrary (possibly noncommutative)
// ring C. A monomial is a subset of generators stored as a bitmask; every
// generator squares to zero and the domain lists which further products
// vanish.

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sdg/rational.hpp"

namespace sdg {

using Mask = std::uint32_t;

inline constexpr std::size_t kMaxGenerators = 16;

inline constexpr Mask generator_mask(std::size_t g) { return Mask{1} << g; }

/// Builds a mask from 0-based generator indices.
inline Mask mask_of(std::initializer_list<std::size_t> gens) {
  Mask m = 0;
  for (auto g : gens) m |= generator_mask(g);
  return m;
}

inline std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

/// Raised when two operands live in different algebras.
struct DomainMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when a substitution does not respect the source relations.
struct InvalidSubstitution : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Shape of a square-free nilpotent algebra: generator count plus the minimal
/// antichain of vanishing monomials (each of size >= 2). Membership in the
/// zero set is "contains some stored subset", which makes it superset-closed.
class InfinitesimalDomain {
 public:
  InfinitesimalDomain(std::size_t generator_count, std::vector<Mask> zero_monomials)
      : count_(generator_count) {
    if (count_ > kMaxGenerators)
      throw std::invalid_argument("too many infinitesimal generators");
    const Mask full = full_mask();
    for (Mask z : zero_monomials) {
      if ((z & ~full) != 0)
        throw std::invalid_argument("zero monomial refers to a generator out of range");
      if (popcount(z) < 2)
        throw std::invalid_argument("zero monomials must have at least two generators");
    }
    // keep only the minimal elements
    std::sort(zero_monomials.begin(), zero_monomials.end(),
              [](Mask a, Mask b) { return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b; });
    for (Mask z : zero_monomials) {
      bool covered = std::any_of(minimal_.begin(), minimal_.end(),
                                 [z](Mask s) { return (z & s) == s; });
      if (!covered) minimal_.push_back(z);
    }
    std::sort(minimal_.begin(), minimal_.end());
  }

  std::size_t generator_count() const { return count_; }
  const std::vector<Mask>& minimal_zero_monomials() const { return minimal_; }
  Mask full_mask() const { return count_ == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << count_) - 1); }

  bool is_zero_monomial(Mask m) const {
    if ((m & ~full_mask()) != 0) return true;
    return std::any_of(minimal_.begin(), minimal_.end(), [m](Mask s) { return (m & s) == s; });
  }

  /// Surviving monomials in increasing mask order (the empty monomial first).
  std::vector<Mask> allowed_monomials() const {
    std::vector<Mask> out;
    for (Mask m = 0; m <= full_mask(); ++m)
      if (!is_zero_monomial(m)) out.push_back(m);
    return out;
  }

  /// True when `sub` kills everything this domain kills (same generators).
  bool is_coarsened_by(const InfinitesimalDomain& sub) const {
    if (sub.count_ != count_) return false;
    return std::all_of(minimal_.begin(), minimal_.end(),
                       [&](Mask s) { return sub.is_zero_monomial(s); });
  }

  friend bool operator==(const InfinitesimalDomain&, const InfinitesimalDomain&) = default;

  std::string to_string() const {
    std::ostringstream os;
    os << "D^" << count_;
    if (!minimal_.empty()) {
      os << '{';
      for (std::size_t i = 0; i < minimal_.size(); ++i) {
        if (i) os << ',';
        os << '(';
        bool first = true;
        for (std::size_t g = 0; g < count_; ++g)
          if (minimal_[i] & generator_mask(g)) {
            if (!first) os << ',';
            os << g + 1;
            first = false;
          }
        os << ')';
      }
      os << '}';
    }
    return os.str();
  }

 private:
  std::size_t count_;
  std::vector<Mask> minimal_;
};

using DomainRef = std::shared_ptr<const InfinitesimalDomain>;

inline bool same_domain(const DomainRef& a, const DomainRef& b) {
  return a == b || (a && b && *a == *b);
}

namespace domain {

/// D: one generator.
inline DomainRef first_order() { return std::make_shared<InfinitesimalDomain>(1, std::vector<Mask>{}); }

/// D^n: n independent square-zero generators.
inline DomainRef power(std::size_t n) { return std::make_shared<InfinitesimalDomain>(n, std::vector<Mask>{}); }

/// D(n): n generators with every pairwise product zero.
inline DomainRef first_neighbourhood(std::size_t n) {
  std::vector<Mask> zeros;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) zeros.push_back(generator_mask(i) | generator_mask(j));
  return std::make_shared<InfinitesimalDomain>(n, std::move(zeros));
}

/// Disjoint union of generators; a's generators come first.
inline DomainRef product(const InfinitesimalDomain& a, const InfinitesimalDomain& b) {
  std::vector<Mask> zeros = a.minimal_zero_monomials();
  for (Mask z : b.minimal_zero_monomials()) zeros.push_back(z << a.generator_count());
  return std::make_shared<InfinitesimalDomain>(a.generator_count() + b.generator_count(), std::move(zeros));
}

/// Custom domain from 0-based generator subsets, e.g. custom(3, {{0,2},{1,2}}).
inline DomainRef custom(std::size_t n, const std::vector<std::vector<std::size_t>>& zero_subsets) {
  std::vector<Mask> zeros;
  for (const auto& s : zero_subsets) {
    Mask m = 0;
    for (auto g : s) {
      if (g >= n) throw std::invalid_argument("zero monomial refers to a generator out of range");
      m |= generator_mask(g);
    }
    zeros.push_back(m);
  }
  return std::make_shared<InfinitesimalDomain>(n, std::move(zeros));
}

/// D^3{(1,3),(2,3)}: the domain of the bracket witness.
inline DomainRef cube_without_13_23() { return custom(3, {{0, 2}, {1, 2}}); }

}  // namespace domain

/// What a coefficient ring must provide.
template <class C>
concept WeilCoefficient = std::copyable<C> && requires(const C& a, const C& b, const Rational& r) {
  { a + b } -> std::convertible_to<C>;
  { a - b } -> std::convertible_to<C>;
  { a * b } -> std::convertible_to<C>;
  { -a } -> std::convertible_to<C>;
  { a * r } -> std::convertible_to<C>;
  { is_zero(a) } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
};

namespace detail {
template <class C>
bool coefficient_is_zero(const C& c) {
  return is_zero(c);
}
}  // namespace detail

/// An element sum_S c_S d^S of the algebra of `domain`. Zero coefficients and
/// coefficients on vanishing monomials are never stored, so equality is
/// structural.
template <WeilCoefficient C>
class Weil {
 public:
  using Coefficient = C;
  using Terms = std::map<Mask, C>;

  explicit Weil(DomainRef domain) : domain_(std::move(domain)) {
    if (!domain_) throw std::invalid_argument("null infinitesimal domain");
  }

  Weil(DomainRef domain, Terms terms) : Weil(std::move(domain)) {
    for (auto& [m, c] : terms) {
      if (domain_->is_zero_monomial(m) || detail::coefficient_is_zero(c)) continue;
      terms_.emplace(m, std::move(c));
    }
  }

  static Weil constant(DomainRef domain, C c) { return Weil(std::move(domain), Terms{{Mask{0}, std::move(c)}}); }

  static Weil monomial(DomainRef domain, Mask m, C c) {
    if (domain->is_zero_monomial(m)) {
      throw std::invalid_argument("monomial " + monomial_name(m) + " vanishes in " + domain->to_string());
    }
    return Weil(std::move(domain), Terms{{m, std::move(c)}});
  }

  const DomainRef& domain() const { return domain_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient lookup; nullptr when the coefficient is zero.
  const C* find(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? nullptr : &it->second;
  }

  /// Coefficient on `m`. Requires `m` to survive in the domain and C{} to be zero.
  C coefficient(Mask m) const
    requires std::default_initializable<C>
  {
    if (domain_->is_zero_monomial(m))
      throw std::invalid_argument("monomial " + monomial_name(m) + " vanishes in " + domain_->to_string());
    const C* c = find(m);
    return c ? *c : C{};
  }

  C scalar_part() const
    requires std::default_initializable<C>
  {
    return coefficient(0);
  }

  /// True when every coefficient outside the empty monomial vanishes.
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

  /// Same element with the scalar part dropped.
  Weil nilpotent_part() const {
    Weil out(domain_);
    for (const auto& [m, c] : terms_)
      if (m != 0) out.terms_.emplace(m, c);
    return out;
  }

  Weil& operator+=(const Weil& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) accumulate(m, c);
    return *this;
  }
  Weil& operator-=(const Weil& o) {
    require_same(o);
    for (const auto& [m, c] : o.terms_) accumulate(m, -c);
    return *this;
  }

  friend Weil operator+(Weil a, const Weil& b) { return a += b; }
  friend Weil operator-(Weil a, const Weil& b) { return a -= b; }
  friend Weil operator-(const Weil& a) {
    Weil out(a.domain_);
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
    return out;
  }

  /// Product sum_{S,T} (a_S b_T) d^{S u T}, keeping operand order in C.
  friend Weil operator*(const Weil& a, const Weil& b) {
    a.require_same(b);
    Weil out(a.domain_);
    for (const auto& [s, x] : a.terms_)
      for (const auto& [t, y] : b.terms_) {
        if ((s & t) != 0) continue;
        const Mask u = s | t;
        if (a.domain_->is_zero_monomial(u)) continue;
        out.accumulate(u, x * y);
      }
    return out;
  }

  friend Weil operator*(const Weil& a, const Rational& r) {
    Weil out(a.domain_);
    if (sdg::is_zero(r)) return out;
    for (const auto& [m, c] : a.terms_) out.accumulate(m, c * r);
    return out;
  }
  friend Weil operator*(const Rational& r, const Weil& a) { return a * r; }

  friend bool operator==(const Weil& a, const Weil& b) {
    return same_domain(a.domain_, b.domain_) && a.terms_ == b.terms_;
  }

  /// Drops the monomials that vanish in the coarser domain `sub`.
  Weil restrict(const DomainRef& sub) const {
    if (!domain_->is_coarsened_by(*sub))
      throw DomainMismatch(sub->to_string() + " is not a coarsening of " + domain_->to_string());
    Weil out(sub);
    for (const auto& [m, c] : terms_)
      if (!sub->is_zero_monomial(m)) out.terms_.emplace(m, c);
    return out;
  }

  /// Applies f to every coefficient; the result keeps this element's monomials.
  template <class F>
  auto map_coefficients(F&& f) const -> Weil<std::invoke_result_t<F&, const C&>> {
    using D = std::invoke_result_t<F&, const C&>;
    typename Weil<D>::Terms out;
    for (const auto& [m, c] : terms_) out.emplace(m, f(c));
    return Weil<D>(domain_, std::move(out));
  }

  /// Renames generator g to perm[g] in `target` (a relabeling of this domain).
  Weil relabel(std::span<const std::size_t> perm, const DomainRef& target) const {
    Weil out(target);
    for (const auto& [m, c] : terms_) {
      const Mask image = relabel_mask(m, perm);
      if (target->is_zero_monomial(image))
        throw DomainMismatch("relabeling does not map " + domain_->to_string() + " onto " + target->to_string());
      out.terms_.emplace(image, c);
    }
    return out;
  }

  static Mask relabel_mask(Mask m, std::span<const std::size_t> perm) {
    Mask image = 0;
    for (std::size_t g = 0; g < perm.size(); ++g)
      if (m & generator_mask(g)) image |= generator_mask(perm[g]);
    return image;
  }

  static std::string monomial_name(Mask m) {
    if (m == 0) return "1";
    std::string out;
    for (std::size_t g = 0; g < kMaxGenerators; ++g)
      if (m & generator_mask(g)) {
        if (!out.empty()) out += '*';
        out += "d" + std::to_string(g + 1);
      }
    return out;
  }

 private:
  void require_same(const Weil& o) const {
    if (!same_domain(domain_, o.domain_))
      throw DomainMismatch("incompatible algebras " + domain_->to_string() + " and " + o.domain_->to_string());
  }

  void accumulate(Mask m, const C& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!detail::coefficient_is_zero(c)) terms_.emplace(m, c);
      return;
    }
    it->second = it->second + c;
    if (detail::coefficient_is_zero(it->second)) terms_.erase(it);
  }

  DomainRef domain_;
  Terms terms_;
};

using WeilElement = Weil<Rational>;

template <WeilCoefficient C>
bool is_zero(const Weil<C>& w) {
  return w.is_zero();
}

inline WeilElement generator(const DomainRef& domain, std::size_t g) {
  if (g >= domain->generator_count()) throw std::out_of_range("generator index out of range");
  return WeilElement::monomial(domain, generator_mask(g), Rational(1));
}

inline WeilElement scalar(const DomainRef& domain, const Rational& r) { return WeilElement::constant(domain, r); }

/// w * c as an element with coefficients in C (w rational, c a ring element).
template <WeilCoefficient C>
Weil<C> lift(const WeilElement& w, const C& c) {
  return w.map_coefficients([&](const Rational& r) -> C { return c * r; });
}

/// Algebra homomorphism sending source generator g to images[g] (all in one
/// target domain). The images must have zero scalar part and must respect
/// every relation of the source: g^2 = 0 and each minimal zero monomial.
template <WeilCoefficient C>
Weil<C> substitute(const Weil<C>& a, std::span<const WeilElement> images, const DomainRef& target) {
  const auto& src = *a.domain();
  if (images.size() != src.generator_count())
    throw InvalidSubstitution("substitution needs one image per source generator");
  for (std::size_t g = 0; g < images.size(); ++g) {
    if (!same_domain(images[g].domain(), target))
      throw DomainMismatch("substitution image for d" + std::to_string(g + 1) + " is not in " + target->to_string());
    if (images[g].find(0) != nullptr)
      throw InvalidSubstitution("substitution image for d" + std::to_string(g + 1) + " has a nonzero scalar part");
    if (!(images[g] * images[g]).is_zero())
      throw InvalidSubstitution("substitution violates d" + std::to_string(g + 1) + "^2 = 0");
  }
  auto image_of = [&](Mask m) {
    WeilElement v = scalar(target, Rational(1));
    for (std::size_t g = 0; g < images.size(); ++g)
      if (m & generator_mask(g)) v = v * images[g];
    return v;
  };
  for (Mask z : src.minimal_zero_monomials())
    if (!image_of(z).is_zero())
      throw InvalidSubstitution("substitution violates " + Weil<C>::monomial_name(z) + " = 0");

  std::map<Mask, C> out;
  for (const auto& [m, c] : a.terms()) {
    const WeilElement v = image_of(m);
    for (const auto& [t, r] : v.terms()) {
      C term = c * r;
      auto it = out.find(t);
      if (it == out.end())
        out.emplace(t, std::move(term));
      else
        it->second = it->second + term;
    }
  }
  return Weil<C>(target, std::move(out));
}

/// Inverse of an element whose scalar part is invertible, via the finite
/// Neumann series (1 + n)^{-1} = sum (-n)^k. `invert_scalar` inverts C.
template <WeilCoefficient C, class Inv>
Weil<C> invert(const Weil<C>& a, Inv&& invert_scalar) {
  const C* s = a.find(0);
  if (!s) throw std::domain_error("element has zero scalar part and is not invertible");
  const C s_inv = invert_scalar(*s);
  const Weil<C> unit_inv = Weil<C>::constant(a.domain(), s_inv);
  // a = s (1 + n) with n = s^{-1} * nilpotent part
  const Weil<C> n = unit_inv * a.nilpotent_part();
  Weil<C> term = unit_inv;
  Weil<C> sum = unit_inv;
  for (std::size_t k = 0; k <= a.domain()->generator_count(); ++k) {
    term = -(n * term);
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

inline WeilElement invert(const WeilElement& a) {
  return invert(a, [](const Rational& r) {
    if (is_zero(r)) throw std::domain_error("element has zero scalar part and is not invertible");
    return Rational(1 / r);
  });
}

inline std::ostream& operator<<(std::ostream& os, const WeilElement& w) {
  if (w.is_zero()) return os << '0';
  bool first = true;
  for (const auto& [m, c] : w.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (m == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << WeilElement::monomial_name(m);
    }
  }
  return os;
}

inline std::string to_string(const WeilElement& w) {
  std::ostringstream os;
  os << w;
  return os.str();
}

}  // namespace sdg
