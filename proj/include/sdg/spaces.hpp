#pragma once

// Representable spaces, their Weil-points (tangents, microsquares,
// microcubes) and the strong-difference calculus on them.

#include <array>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "sdg/matrix.hpp"
#include "sdg/weil.hpp"

namespace sdg {

struct AffineSpace {
  std::size_t dimension;
  friend bool operator==(const AffineSpace&, const AffineSpace&) = default;
};

/// Invertible k x k matrices, coordinates row-major.
struct MatrixGroup {
  std::size_t size;
  friend bool operator==(const MatrixGroup&, const MatrixGroup&) = default;
};

/// Discrete set {0, ..., m-1}; its Weil-points are constant.
struct FiniteBase {
  std::size_t cardinality;
  friend bool operator==(const FiniteBase&, const FiniteBase&) = default;
};

using Space = std::variant<AffineSpace, MatrixGroup, FiniteBase>;

inline std::size_t arity(const Space& s) {
  return std::visit(
      [](const auto& k) -> std::size_t {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, AffineSpace>)
          return k.dimension;
        else if constexpr (std::is_same_v<K, MatrixGroup>)
          return k.size * k.size;
        else
          return 1;
      },
      s);
}

inline std::string to_string(const Space& s) {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, AffineSpace>)
          return "AffineSpace(" + std::to_string(k.dimension) + ")";
        else if constexpr (std::is_same_v<K, MatrixGroup>)
          return "MatrixGroup(" + std::to_string(k.size) + ")";
        else
          return "FiniteBase(" + std::to_string(k.cardinality) + ")";
      },
      s);
}

/// Preconditions of the strong-difference calculus (agreement on D(2) etc.).
struct IncompatiblePoints : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A map from an infinitesimal object into a space, given by its ambient
/// coordinates in the Weil algebra of that object.
class WPoint {
 public:
  WPoint(Space space, DomainRef domain, std::vector<WeilElement> coords)
      : space_(space), domain_(std::move(domain)), coords_(std::move(coords)) {
    if (coords_.size() != arity(space_))
      throw std::invalid_argument("coordinate count does not match " + sdg::to_string(space_));
    for (const auto& c : coords_)
      if (!same_domain(c.domain(), domain_)) throw DomainMismatch("coordinate lives in a different algebra");
    check_membership();
  }

  static WPoint constant(Space space, DomainRef domain, const std::vector<Rational>& coords) {
    std::vector<WeilElement> w;
    w.reserve(coords.size());
    for (const auto& c : coords) w.push_back(scalar(domain, c));
    return WPoint(space, std::move(domain), std::move(w));
  }

  const Space& space() const { return space_; }
  const DomainRef& domain() const { return domain_; }
  const std::vector<WeilElement>& coords() const { return coords_; }

  /// Coordinatewise coefficient on monomial m.
  std::vector<Rational> coefficients(Mask m) const {
    std::vector<Rational> out;
    out.reserve(coords_.size());
    for (const auto& c : coords_) out.push_back(c.coefficient(m));
    return out;
  }

  std::vector<Rational> scalar_part() const { return coefficients(0); }

  friend bool operator==(const WPoint& a, const WPoint& b) {
    return a.space_ == b.space_ && same_domain(a.domain_, b.domain_) && a.coords_ == b.coords_;
  }

 private:
  void check_membership() const {
    if (const auto* g = std::get_if<MatrixGroup>(&space_)) {
      Matrix base(g->size, g->size, scalar_part());
      if (!base.inverse())
        throw std::invalid_argument("scalar part is not an invertible matrix in " + sdg::to_string(space_));
    } else if (const auto* f = std::get_if<FiniteBase>(&space_)) {
      const auto& c = coords_.front();
      if (!c.is_constant())
        throw std::invalid_argument("points of a discrete base admit no infinitesimal variation");
      const Rational idx = c.coefficient(0);
      if (idx.get_den() != 1 || sgn(idx) < 0 || idx >= static_cast<long>(f->cardinality))
        throw std::invalid_argument("index is not an element of " + sdg::to_string(space_));
    }
  }

  Space space_;
  DomainRef domain_;
  std::vector<WeilElement> coords_;
};

/// A WPoint over D: base point plus direction.
class Tangent {
 public:
  explicit Tangent(WPoint p) : point_(std::move(p)) {
    if (!same_domain(point_.domain(), domain::first_order()))
      throw DomainMismatch("a tangent vector is a point over D, got " + point_.domain()->to_string());
  }

  static Tangent from(Space space, const std::vector<Rational>& base, const std::vector<Rational>& direction) {
    if (base.size() != direction.size()) throw std::invalid_argument("base and direction sizes differ");
    const DomainRef d = domain::first_order();
    std::vector<WeilElement> coords;
    for (std::size_t i = 0; i < base.size(); ++i)
      coords.push_back(scalar(d, base[i]) + generator(d, 0) * direction[i]);
    return Tangent(WPoint(space, d, std::move(coords)));
  }

  const WPoint& point() const { return point_; }
  const Space& space() const { return point_.space(); }
  std::vector<Rational> base() const { return point_.coefficients(0); }
  std::vector<Rational> direction() const { return point_.coefficients(1); }

  bool is_zero() const {
    for (const auto& x : direction())
      if (sgn(x) != 0) return false;
    return true;
  }

  friend bool operator==(const Tangent&, const Tangent&) = default;

 private:
  WPoint point_;
};

inline WPoint restrict_point(const WPoint& p, const DomainRef& sub) {
  std::vector<WeilElement> coords;
  coords.reserve(p.coords().size());
  for (const auto& c : p.coords()) coords.push_back(c.restrict(sub));
  return WPoint(p.space(), sub, std::move(coords));
}

/// Applies generator renaming g -> perm[g] to every coordinate.
inline WPoint relabel_point(const WPoint& p, std::span<const std::size_t> perm, const DomainRef& target) {
  std::vector<WeilElement> coords;
  coords.reserve(p.coords().size());
  for (const auto& c : p.coords()) coords.push_back(c.relabel(perm, target));
  return WPoint(p.space(), target, std::move(coords));
}

/// The domain obtained by renaming generator g to perm[g].
inline DomainRef relabel_domain(const InfinitesimalDomain& d, std::span<const std::size_t> perm) {
  std::vector<Mask> zeros;
  for (Mask z : d.minimal_zero_monomials()) zeros.push_back(WeilElement::relabel_mask(z, perm));
  return std::make_shared<InfinitesimalDomain>(d.generator_count(), std::move(zeros));
}

namespace detail {

inline void require_domain(const WPoint& p, const DomainRef& expected, const char* what) {
  if (!same_domain(p.domain(), expected))
    throw DomainMismatch(std::string(what) + " must be a point over " + expected->to_string() + ", got " +
                         p.domain()->to_string());
}

inline Rational diff(const WeilElement& a, const WeilElement& b, Mask m) {
  return a.coefficient(m) - b.coefficient(m);
}

}  // namespace detail

/// Strong difference of two microsquares that agree on D(2): the tangent at
/// their common base whose direction is the discrepancy of the d1*d2 terms.
inline Tangent strong_difference(const WPoint& plus, const WPoint& minus) {
  const DomainRef square = domain::power(2);
  detail::require_domain(plus, square, "strong difference operand");
  detail::require_domain(minus, square, "strong difference operand");
  if (!(plus.space() == minus.space())) throw IncompatiblePoints("strong difference of points in different spaces");
  const DomainRef d2 = domain::first_neighbourhood(2);
  if (!(restrict_point(plus, d2) == restrict_point(minus, d2)))
    throw IncompatiblePoints("microsquares are not D(2)-compatible");
  const Mask both = mask_of({0, 1});
  std::vector<Rational> direction;
  for (std::size_t i = 0; i < plus.coords().size(); ++i)
    direction.push_back(detail::diff(plus.coords()[i], minus.coords()[i], both));
  try {
    return Tangent::from(plus.space(), plus.scalar_part(), direction);
  } catch (const std::invalid_argument& e) {
    throw std::logic_error(std::string("strong difference left the space: ") + e.what());
  }
}

/// ca * a + cb * b in the tangent space at their common base.
inline Tangent tangent_combine(const Tangent& a, const Tangent& b, const Rational& ca, const Rational& cb) {
  if (!(a.space() == b.space()) || a.base() != b.base())
    throw IncompatiblePoints("tangent vectors at different base points");
  const auto da = a.direction();
  const auto db = b.direction();
  std::vector<Rational> dir(da.size());
  for (std::size_t i = 0; i < da.size(); ++i) dir[i] = ca * da[i] + cb * db[i];
  return Tangent::from(a.space(), a.base(), dir);
}

inline Tangent operator+(const Tangent& a, const Tangent& b) { return tangent_combine(a, b, 1, 1); }

/// 0-based image table of a permutation of {1..n} written as 1-based cycles,
/// e.g. permutation_from_cycles(3, {{1,2,3}}) sends 1->2, 2->3, 3->1.
inline std::vector<std::size_t> permutation_from_cycles(std::size_t n,
                                                        const std::vector<std::vector<std::size_t>>& cycles) {
  std::vector<std::size_t> eps(n);
  std::iota(eps.begin(), eps.end(), 0);
  std::vector<bool> seen(n, false);
  for (const auto& cyc : cycles)
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const std::size_t from = cyc[k];
      const std::size_t to = cyc[(k + 1) % cyc.size()];
      if (from < 1 || from > n || to < 1 || to > n) throw std::invalid_argument("cycle entry out of range");
      if (seen[from - 1]) throw std::invalid_argument("cycles are not disjoint");
      seen[from - 1] = true;
      eps[from - 1] = to - 1;
    }
  return eps;
}

inline std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> eps) {
  std::vector<std::size_t> inv(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) inv[eps[i]] = i;
  return inv;
}

/// (Sigma_eps gamma)(d_1..d_n) = gamma(d_eps(1), .., d_eps(n)): source
/// monomial S becomes eps(S).
inline WPoint sigma_perm(const WPoint& gamma, std::span<const std::size_t> eps) {
  if (eps.size() != gamma.domain()->generator_count())
    throw std::invalid_argument("permutation size does not match the number of generators");
  return relabel_point(gamma, eps, relabel_domain(*gamma.domain(), eps));
}

/// Generator renaming behind Psi_i: slot i (1-based) becomes the inner
/// direction (generator 3), the other two slots keep their order as 1, 2.
inline std::vector<std::size_t> psi_relabeling(int i) {
  switch (i) {
    case 1: return {2, 0, 1};
    case 2: return {0, 2, 1};
    case 3: return {0, 1, 2};
    default: throw std::invalid_argument("axis must be 1, 2 or 3");
  }
}

inline WPoint psi(int i, const WPoint& cube) {
  if (cube.domain()->generator_count() != 3) throw DomainMismatch("psi acts on microcubes");
  const auto perm = psi_relabeling(i);
  return relabel_point(cube, perm, relabel_domain(*cube.domain(), perm));
}

inline WPoint psi_inverse(int i, const WPoint& cube) {
  if (cube.domain()->generator_count() != 3) throw DomainMismatch("psi acts on microcubes");
  const auto perm = inverse_permutation(psi_relabeling(i));
  return relabel_point(cube, perm, relabel_domain(*cube.domain(), perm));
}

namespace detail {

/// The two axes other than i, as 0-based generator indices in order.
inline std::pair<std::size_t, std::size_t> other_axes(int i) {
  switch (i) {
    case 1: return {1, 2};
    case 2: return {0, 2};
    case 3: return {0, 1};
    default: throw std::invalid_argument("axis must be 1, 2 or 3");
  }
}

}  // namespace detail

/// Strong difference of microcubes relative to axis i, by the coefficient
/// rule. With {j,k} the other axes, the result is the microsquare (s,t) with
///   1 -> c_0(plus), t -> c_i(plus), s -> c_jk(plus - minus), st -> c_ijk(plus - minus).
inline WPoint relative_strong_difference(int i, const WPoint& plus, const WPoint& minus) {
  const DomainRef cube = domain::power(3);
  detail::require_domain(plus, cube, "relative strong difference operand");
  detail::require_domain(minus, cube, "relative strong difference operand");
  if (!(plus.space() == minus.space()))
    throw IncompatiblePoints("relative strong difference of points in different spaces");
  const auto [j, k] = detail::other_axes(i);
  const Mask jk = generator_mask(j) | generator_mask(k);
  for (std::size_t c = 0; c < plus.coords().size(); ++c)
    for (Mask m = 0; m < 8; ++m)
      if ((m & jk) != jk && detail::diff(plus.coords()[c], minus.coords()[c], m) != 0)
        throw IncompatiblePoints("microcubes are not D(2)xD-compatible along axis " + std::to_string(i));

  const DomainRef square = domain::power(2);
  const Mask axis = generator_mask(static_cast<std::size_t>(i - 1));
  const WeilElement s = generator(square, 0);
  const WeilElement t = generator(square, 1);
  const WeilElement st = s * t;
  std::vector<WeilElement> coords;
  for (std::size_t c = 0; c < plus.coords().size(); ++c) {
    const auto& p = plus.coords()[c];
    const auto& q = minus.coords()[c];
    coords.push_back(scalar(square, p.coefficient(0)) + t * p.coefficient(axis) + s * detail::diff(p, q, jk) +
                     st * detail::diff(p, q, jk | axis));
  }
  return WPoint(plus.space(), square, std::move(coords));
}

/// The same operation assembled from its definition: relabel by Psi_i, read
/// the cube as a microsquare in the tangent bundle (ambient coordinates
/// (base, fiber)), take the plain strong difference there, and unfold the
/// resulting tangent of tangents into a microsquare via Phi^{-1}.
inline WPoint relative_strong_difference_by_composition(int i, const WPoint& plus, const WPoint& minus) {
  const DomainRef cube = domain::power(3);
  detail::require_domain(plus, cube, "relative strong difference operand");
  detail::require_domain(minus, cube, "relative strong difference operand");
  if (!(plus.space() == minus.space()))
    throw IncompatiblePoints("relative strong difference of points in different spaces");

  const DomainRef square = domain::power(2);
  const Mask inner = generator_mask(2);
  auto to_tangent_bundle = [&](const WPoint& gamma) {
    const WPoint relabeled = psi(i, gamma);
    const std::size_t n = relabeled.coords().size();
    std::vector<WeilElement> coords(2 * n, WeilElement(square));
    for (std::size_t c = 0; c < n; ++c) {
      WeilElement::Terms base, fiber;
      for (const auto& [m, v] : relabeled.coords()[c].terms()) {
        if (m & inner)
          fiber.emplace(m & ~inner, v);
        else
          base.emplace(m, v);
      }
      coords[c] = WeilElement(square, std::move(base));
      coords[n + c] = WeilElement(square, std::move(fiber));
    }
    return WPoint(AffineSpace{2 * n}, square, std::move(coords));
  };

  Tangent lifted = [&] {
    try {
      return strong_difference(to_tangent_bundle(plus), to_tangent_bundle(minus));
    } catch (const IncompatiblePoints&) {
      throw IncompatiblePoints("microcubes are not D(2)xD-compatible along axis " + std::to_string(i));
    }
  }();

  // Phi^{-1}: tau(s)(t) with tau(s) = (b + s db) + t (v + s dv)
  const auto base = lifted.base();
  const auto dir = lifted.direction();
  const std::size_t n = base.size() / 2;
  const WeilElement s = generator(square, 0);
  const WeilElement t = generator(square, 1);
  std::vector<WeilElement> coords;
  for (std::size_t c = 0; c < n; ++c) {
    const WeilElement outer_base = scalar(square, base[c]) + s * dir[c];
    const WeilElement outer_fiber = scalar(square, base[n + c]) + s * dir[n + c];
    coords.push_back(outer_base + t * outer_fiber);
  }
  return WPoint(plus.space(), square, std::move(coords));
}

/// Six microcubes indexed by the permutations of {1,2,3}.
template <class P>
struct SixMicrocubes {
  P g123, g132, g213, g231, g312, g321;
};

/// The three expressions whose sum vanishes by the general Jacobi identity:
///   (g123 -1 g132) - (g231 -1 g321)
///   (g231 -2 g213) - (g312 -2 g132)
///   (g312 -3 g321) - (g123 -3 g213)
inline std::array<Tangent, 3> general_jacobi_terms(const SixMicrocubes<WPoint>& g) {
  return {strong_difference(relative_strong_difference(1, g.g123, g.g132),
                            relative_strong_difference(1, g.g231, g.g321)),
          strong_difference(relative_strong_difference(2, g.g231, g.g213),
                            relative_strong_difference(2, g.g312, g.g132)),
          strong_difference(relative_strong_difference(3, g.g312, g.g321),
                            relative_strong_difference(3, g.g123, g.g213))};
}

inline std::ostream& operator<<(std::ostream& os, const WPoint& p) {
  os << sdg::to_string(p.space()) << " over " << p.domain()->to_string() << " (";
  for (std::size_t i = 0; i < p.coords().size(); ++i) os << (i ? ", " : "") << p.coords()[i];
  return os << ')';
}

inline std::ostream& operator<<(std::ostream& os, const Tangent& t) { return os << t.point(); }

}  // namespace sdg
