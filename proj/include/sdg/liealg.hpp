#pragma once

// Lie algebra structure on sections of the Lie algebroid: module operations,
// the commutator bracket, pushforward, Lie derivative, the circledast
// microcubes and the strong-difference form of the bracket.

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

#include "sdg/groupoids.hpp"
#include "sdg/spaces.hpp"

namespace sdg {

/// The microsquare (d1, d2) -> Y_{-d2} * X_{-d1} * Y_{d2} * X_{d1} on the
/// bisection group. Both axes are the identity.
template <class G>
struct CommutatorSquare {
  WBisection<G> square;
  AGSection<G> x;
  AGSection<G> y;
};

template <class G>
AGSection<G> add_sections(const AGSection<G>& X, const AGSection<G>& Y) {
  return X + Y;
}

template <class G>
AGSection<G> scale_section(const Rational& a, const AGSection<G>& X) {
  return a * X;
}

namespace detail {

template <class G>
void require_same_groupoid(const AGSection<G>& X, const AGSection<G>& Y) {
  if (!(X.groupoid() == Y.groupoid())) throw std::invalid_argument("sections of different groupoids");
}

/// Both axes of a microsquare over D^2 must be the identity section.
template <class G>
void require_vanishing_axes(const WSection<G>& s, const char* what) {
  const DomainRef line = domain::first_order();
  const WeilElement e = generator(line, 0);
  const WeilElement zero_line(line);
  const std::array<WeilElement, 2> first_axis{e, zero_line};
  const std::array<WeilElement, 2> second_axis{zero_line, e};
  if (!is_identity(substitute(s, first_axis, line)) || !is_identity(substitute(s, second_axis, line)))
    throw std::logic_error(std::string(what) + " does not vanish on the axes");
}

}  // namespace detail

template <class G>
CommutatorSquare<G> commutator_square(const AGSection<G>& X, const AGSection<G>& Y) {
  detail::require_same_groupoid(X, Y);
  const DomainRef d = domain::power(2);
  const WeilElement d1 = generator(d, 0);
  const WeilElement d2 = generator(d, 1);
  WBisection<G> lambda = section_at(Y, -d2) * section_at(X, -d1) * section_at(Y, d2) * section_at(X, d1);
  detail::require_vanishing_axes(lambda.section(), "commutator square");
  return {std::move(lambda), X, Y};
}

/// [X, Y]: the d1*d2 coefficient of the commutator square.
template <class G>
AGSection<G> bracket(const AGSection<G>& X, const AGSection<G>& Y) {
  const auto sq = commutator_square(X, Y);
  return extract_field(sq.square.section(), mask_of({0, 1}));
}

/// sigma_* X: the tangent d -> sigma * X_d * sigma^{-1}, for a bisection
/// without infinitesimal part.
template <class G>
AGSection<G> pushforward(const WBisection<G>& sigma, const AGSection<G>& X) {
  if (!(sigma.groupoid() == X.groupoid())) throw std::invalid_argument("sections of different groupoids");
  if (has_infinitesimal_part(sigma.section()))
    throw std::invalid_argument("pushforward needs a bisection without infinitesimal part");
  const DomainRef line = domain::first_order();
  const WBisection<G> s(scalar_section(sigma.section(), line));
  const WBisection<G> conj = s * section_at(X, generator(line, 0)) * invert_bisection(s);
  if (!is_identity_at_origin(conj.section())) throw std::logic_error("pushforward left the identity fiber");
  return extract_field(conj.section(), generator_mask(0));
}

/// L_X Y, from F(d, d') = ((X_{-d})_* Y - Y)_{d'} = X_{-d} * Y_{d'} * X_d * Y_{-d'}:
/// F is d d' (L_X Y), so L_X Y is the d d' coefficient.
template <class G>
AGSection<G> lie_derivative(const AGSection<G>& X, const AGSection<G>& Y) {
  detail::require_same_groupoid(X, Y);
  const DomainRef d = domain::power(2);
  const WeilElement e = generator(d, 0);
  const WeilElement f = generator(d, 1);
  const WBisection<G> F = section_at(X, -e) * section_at(Y, f) * section_at(X, e) * section_at(Y, -f);
  detail::require_vanishing_axes(F.section(), "Lie derivative square");
  return extract_field(F.section(), mask_of({0, 1}));
}

/// (X_n (*) ... (*) X_1)(d_1, ..., d_n) = (X_n)_{d_n} * ... * (X_1)_{d_1},
/// with sections[i] playing X_{i+1}.
template <class G>
WBisection<G> circledast(std::span<const AGSection<G>> sections) {
  if (sections.empty() || sections.size() > 4) throw std::invalid_argument("circledast supports 1 to 4 sections");
  const G& g = sections.front().groupoid();
  for (const auto& s : sections)
    if (!(s.groupoid() == g)) throw std::invalid_argument("sections of different groupoids");
  const DomainRef d = domain::power(sections.size());
  WBisection<G> out = identity_section(g, d);
  for (std::size_t i = 0; i < sections.size(); ++i) out = section_at(sections[i], generator(d, i)) * out;
  return out;
}

/// Convenience: circledast({inner, ..., outer}) read left to right as written
/// in the product, i.e. circledast_of(Z, Y, X) = Z (*) Y (*) X.
template <class G, class... Rest>
WBisection<G> circledast_of(const AGSection<G>& outer, const Rest&... rest) {
  std::vector<AGSection<G>> written{outer, rest...};
  std::vector<AGSection<G>> inner_first(written.rbegin(), written.rend());
  return circledast<G>(inner_first);
}

/// The six microcubes gamma_{abc} = V_c * V_b * V_a with V_1 = X_{d1},
/// V_2 = Y_{d2}, V_3 = Z_{d3}, built as permuted circledast products.
template <class G>
SixMicrocubes<WBisection<G>> six_microcubes(const AGSection<G>& X, const AGSection<G>& Y, const AGSection<G>& Z) {
  const auto p23 = permutation_from_cycles(3, {{2, 3}});
  const auto p12 = permutation_from_cycles(3, {{1, 2}});
  const auto p123 = permutation_from_cycles(3, {{1, 2, 3}});
  const auto p132 = permutation_from_cycles(3, {{1, 3, 2}});
  const auto p13 = permutation_from_cycles(3, {{1, 3}});
  return {circledast_of(Z, Y, X),
          sigma_perm(circledast_of(Y, Z, X), p23),
          sigma_perm(circledast_of(Z, X, Y), p12),
          sigma_perm(circledast_of(X, Z, Y), p123),
          sigma_perm(circledast_of(Y, X, Z), p132),
          sigma_perm(circledast_of(X, Y, Z), p13)};
}

/// [X, Y] = (Y (*) X) -. Sigma_(12)(X (*) Y).
template <class G>
AGSection<G> bracket_via_strong_difference(const AGSection<G>& X, const AGSection<G>& Y) {
  detail::require_same_groupoid(X, Y);
  const WBisection<G> plus = circledast_of(Y, X);
  const WBisection<G> minus = sigma_perm(circledast_of(X, Y), permutation_from_cycles(2, {{1, 2}}));
  const std::array<WSection<G>, 2> both{plus.section(), minus.section()};
  const auto chart = ambient_chart(std::span<const WSection<G>>(both));
  const Tangent t = strong_difference(as_ambient_point(plus.section(), chart), as_ambient_point(minus.section(), chart));
  return field_from_tangent(t, chart, X.groupoid());
}

/// lambda(d1, d2, d3) = X_{d1} * [X,Y]_{d3} * Y_{d2} on D^3{(1,3),(2,3)},
/// together with its three specializations.
template <class G>
struct LambdaWitness {
  WBisection<G> lambda;
  WSection<G> at_zero;        // lambda(d1, d2, 0)
  WSection<G> at_product;     // lambda(d1, d2, d1 d2)
  WSection<G> on_third_axis;  // lambda(0, 0, d)
};

template <class G>
LambdaWitness<G> lambda_witness(const AGSection<G>& X, const AGSection<G>& Y) {
  detail::require_same_groupoid(X, Y);
  const DomainRef w = domain::cube_without_13_23();
  WBisection<G> lambda =
      section_at(X, generator(w, 0)) * section_at(bracket(X, Y), generator(w, 2)) * section_at(Y, generator(w, 1));

  const DomainRef sq = domain::power(2);
  const WeilElement d1 = generator(sq, 0);
  const WeilElement d2 = generator(sq, 1);
  const std::array<WeilElement, 3> zero_third{d1, d2, WeilElement(sq)};
  const std::array<WeilElement, 3> product_third{d1, d2, d1 * d2};
  const DomainRef line = domain::first_order();
  const std::array<WeilElement, 3> third_axis{WeilElement(line), WeilElement(line), generator(line, 0)};

  WSection<G> at_zero = substitute(lambda.section(), zero_third, sq);
  WSection<G> at_product = substitute(lambda.section(), product_third, sq);
  WSection<G> on_axis = substitute(lambda.section(), third_axis, line);

  if (!(at_zero == sigma_perm(circledast_of(X, Y), permutation_from_cycles(2, {{1, 2}})).section()))
    throw std::logic_error("lambda(d1, d2, 0) differs from Sigma_(12)(X (*) Y)");
  if (!(at_product == circledast_of(Y, X).section()))
    throw std::logic_error("lambda(d1, d2, d1 d2) differs from (Y (*) X)");
  return {std::move(lambda), std::move(at_zero), std::move(at_product), std::move(on_axis)};
}

/// Right-hand sides of the three microcube identities, in order
/// [X,[Y,Z]], [Y,[Z,X]], [Z,[X,Y]].
template <class G>
std::array<AGSection<G>, 3> jacobi_terms_via_microcubes(const AGSection<G>& X, const AGSection<G>& Y,
                                                        const AGSection<G>& Z) {
  const auto cubes = six_microcubes(X, Y, Z);
  const std::array<WSection<G>, 6> all{cubes.g123.section(), cubes.g132.section(), cubes.g213.section(),
                                       cubes.g231.section(), cubes.g312.section(), cubes.g321.section()};
  const auto chart = ambient_chart(std::span<const WSection<G>>(all));
  const SixMicrocubes<WPoint> points{as_ambient_point(all[0], chart), as_ambient_point(all[1], chart),
                                     as_ambient_point(all[2], chart), as_ambient_point(all[3], chart),
                                     as_ambient_point(all[4], chart), as_ambient_point(all[5], chart)};
  const auto terms = general_jacobi_terms(points);
  return {field_from_tangent(terms[0], chart, X.groupoid()), field_from_tangent(terms[1], chart, X.groupoid()),
          field_from_tangent(terms[2], chart, X.groupoid())};
}

}  // namespace sdg
