#include <gtest/gtest.h>

#include "sdg/groupoids.hpp"
#include "sdg/harness/generators.hpp"
#include "support.hpp"

using namespace sdg;
using test::q;

namespace {

constexpr Mask d1 = 1, d2 = 2;

Polynomial x(std::size_t i) { return Polynomial::variable(i); }
Polynomial c(long n, long d = 1) { return Polynomial::constant(q(n, d)); }
Matrix mat(long a, long b, long cc, long d) { return Matrix(2, 2, {q(a), q(b), q(cc), q(d)}); }

WeilPolynomial WP(const DomainRef& dom, std::initializer_list<std::pair<Mask, Polynomial>> terms) {
  WeilPolynomial::Terms t;
  for (const auto& [m, p] : terms) t.emplace(m, p);
  return WeilPolynomial(dom, std::move(t));
}

WeilMatrix WM(const DomainRef& dom, std::initializer_list<std::pair<Mask, Matrix>> terms) {
  WeilMatrix::Terms t;
  for (const auto& [m, a] : terms) t.emplace(m, a);
  return WeilMatrix(dom, std::move(t));
}

// Pointwise evaluation written out term by term: sum_m d^m p_m(y).
std::vector<WeilElement> evaluate(const WSection<PairGroupoid>& s, const std::vector<WeilElement>& y) {
  const DomainRef dom = s.domain();
  std::vector<WeilElement> out;
  for (const auto& comp : s.data()) {
    WeilElement acc(dom);
    for (const auto& [mask, p] : comp.terms()) {
      WeilElement value(dom);
      for (const auto& [mono, coef] : p.terms()) {
        WeilElement t = scalar(dom, coef);
        for (std::size_t v = 0; v < y.size(); ++v)
          for (unsigned e = 0; e < mono.exponent(v); ++e) t = t * y[v];
        value += t;
      }
      acc += WeilElement::monomial(dom, mask, q(1)) * value;
    }
    out.push_back(acc);
  }
  return out;
}

TEST(PairGroupoid, StarComposesTargets) {
  const PairGroupoid g(1);
  const auto D = domain::first_order();
  const WSection<PairGroupoid> sigma(g, D, {WP(D, {{0, x(0)}, {d1, c(2)}})});
  const WSection<PairGroupoid> rho(g, D, {WP(D, {{0, x(0)}, {d1, c(3) * x(0)}})});
  EXPECT_EQ(star(sigma, rho), WSection<PairGroupoid>(g, D, {WP(D, {{0, x(0)}, {d1, c(3) * x(0) + c(2)}})}));
  EXPECT_EQ(sigma * identity_section(g, D).section(), sigma);
}

TEST(PairGroupoid, InverseOfAFlow) {
  const PairGroupoid g(2);
  const auto D = domain::first_order();
  const WBisection<PairGroupoid> f(g, D, {WP(D, {{0, x(0)}, {d1, x(1) * x(1)}}), WP(D, {{0, x(1)}, {d1, c(-1)}})});
  const WBisection<PairGroupoid> expected(g, D,
                                          {WP(D, {{0, x(0)}, {d1, -(x(1) * x(1))}}), WP(D, {{0, x(1)}, {d1, c(1)}})});
  EXPECT_EQ(invert_bisection(f), expected);
  EXPECT_TRUE(is_identity(f * invert_bisection(f)));
  EXPECT_TRUE(is_identity(invert_bisection(f) * f));
}

TEST(PairGroupoid, FormalInverseExamples) {
  const auto D = domain::first_order();
  // x + e x^2  ->  x - e x^2
  EXPECT_EQ(formal_inverse({WP(D, {{0, x(0)}, {d1, x(0) * x(0)}})}, D),
            (std::vector<WeilPolynomial>{WP(D, {{0, x(0)}, {d1, -(x(0) * x(0))}})}));
  EXPECT_EQ(formal_inverse(identity_map(D, 2), D), identity_map(D, 2));
  // 2x + e  ->  x/2 - e/2
  EXPECT_EQ(formal_inverse({WP(D, {{0, c(2) * x(0)}, {d1, c(1)}})}, D),
            (std::vector<WeilPolynomial>{WP(D, {{0, c(1, 2) * x(0)}, {d1, c(-1, 2)}})}));
  EXPECT_THROW(formal_inverse({WP(D, {{0, x(0) * x(0)}})}, D), NotABisection);
  EXPECT_THROW(formal_inverse({WP(D, {{0, c(0) + x(1)}}), WP(D, {{0, x(1)}})}, D), NotABisection);
}

TEST(PairGroupoid, FormalInverseOverLargerDomains) {
  const auto D2 = domain::power(2);
  const std::vector<WeilPolynomial> f{WP(D2, {{0, c(3) * x(0) + c(1)}, {d1, x(0) * x(0)}, {d2, x(0)}, {3, c(5)}})};
  const auto g = formal_inverse(f, D2);
  EXPECT_EQ(compose(f, g, D2), identity_map(D2, 1));
  EXPECT_EQ(compose(g, f, D2), identity_map(D2, 1));
}

TEST(PairGroupoid, ValidationErrors) {
  const PairGroupoid g(1);
  const auto D = domain::first_order();
  EXPECT_THROW(PairGroupoid(0), std::invalid_argument);
  EXPECT_THROW(WSection<PairGroupoid>(g, D, {WP(D, {{0, x(1)}})}), std::invalid_argument);
  EXPECT_THROW(WSection<PairGroupoid>(g, D, {}), std::invalid_argument);
  EXPECT_THROW(WBisection<PairGroupoid>(g, D, {WP(D, {{0, c(1)}})}), NotABisection);
  EXPECT_THROW(AGSection<PairGroupoid>(g, {x(0), x(0)}), std::invalid_argument);
  EXPECT_THROW(star(identity_section(g, D).section(), identity_section(g, domain::power(2)).section()),
               DomainMismatch);
  EXPECT_THROW(star(identity_section(g, D).section(), identity_section(PairGroupoid(2), D).section()),
               std::invalid_argument);
}

TEST(GaugeGroupoid, InverseFormula) {
  const TrivialGaugeGroupoid g(2, 2);
  const auto D = domain::first_order();
  const Matrix A = mat(1, 2, 0, 3), S = mat(2, 1, 1, 1);
  TrivialGaugeGroupoid::Arrows a{{1, 0}, {WM(D, {{0, Matrix::identity(2)}, {d1, A}}), WM(D, {{0, S}})}};
  const WBisection<TrivialGaugeGroupoid> sigma(g, D, a);
  TrivialGaugeGroupoid::Arrows inv{{1, 0}, {WM(D, {{0, *S.inverse()}}), WM(D, {{0, Matrix::identity(2)}, {d1, -A}})}};
  EXPECT_EQ(invert_bisection(sigma), WBisection<TrivialGaugeGroupoid>(g, D, inv));
  EXPECT_TRUE(is_identity(sigma * invert_bisection(sigma)));
  EXPECT_TRUE(is_identity(invert_bisection(sigma) * sigma));
}

TEST(GaugeGroupoid, StarFollowsTheTarget) {
  const TrivialGaugeGroupoid g(2, 2);
  const auto D = domain::first_order();
  const Matrix P = mat(1, 1, 0, 1), Q = mat(0, 1, 1, 0), R = mat(2, 0, 0, 1);
  const WSection<TrivialGaugeGroupoid> sigma(g, D, {{0, 0}, {WM(D, {{0, P}}), WM(D, {{0, Q}})}});
  const WSection<TrivialGaugeGroupoid> rho(g, D, {{1, 1}, {WM(D, {{0, R}}), WM(D, {{0, Q}, {d1, R}})}});
  // (sigma * rho)(x) = sigma(t_rho(x)) rho(x) = sigma(1) rho(x)
  const WSection<TrivialGaugeGroupoid> expected(g, D, {{0, 0}, {WM(D, {{0, Q * R}}), WM(D, {{0, Q * Q}, {d1, Q * R}})}});
  EXPECT_EQ(star(sigma, rho), expected);
}

TEST(GaugeGroupoid, ValidationErrors) {
  const TrivialGaugeGroupoid g(2, 2);
  const auto D = domain::first_order();
  const auto I = WM(D, {{0, Matrix::identity(2)}});
  EXPECT_THROW(WSection<TrivialGaugeGroupoid>(g, D, {{0, 2}, {I, I}}), std::invalid_argument);
  EXPECT_THROW(WSection<TrivialGaugeGroupoid>(g, D, {{0, 1}, {I, WM(D, {{0, mat(1, 1, 1, 1)}})}}),
               std::invalid_argument);
  EXPECT_THROW(WBisection<TrivialGaugeGroupoid>(g, D, {{0, 0}, {I, I}}), NotABisection);
  EXPECT_THROW(AGSection<TrivialGaugeGroupoid>(g, {Matrix::identity(2)}), std::invalid_argument);
  EXPECT_THROW(TrivialGaugeGroupoid(0, 1), std::invalid_argument);
}

TEST(Flows, SectionAtZeroIsIdentity) {
  const auto D = domain::first_order();
  const AGSection<PairGroupoid> X(PairGroupoid(2), {x(1), c(1) + x(0)});
  EXPECT_TRUE(is_identity(section_at(X, WeilElement(D))));
  const AGSection<TrivialGaugeGroupoid> Y(TrivialGaugeGroupoid(1, 2), {mat(1, 2, 3, 4)});
  EXPECT_TRUE(is_identity(section_at(Y, WeilElement(D))));
}

TEST(Flows, SectionAtShapes) {
  const auto D = domain::first_order();
  const AGSection<PairGroupoid> X(PairGroupoid(1), {x(0) * x(0)});
  EXPECT_EQ(section_at(X, generator(D, 0)),
            WBisection<PairGroupoid>(PairGroupoid(1), D, {WP(D, {{0, x(0)}, {d1, x(0) * x(0)}})}));
  const TrivialGaugeGroupoid g(1, 2);
  const Matrix A = mat(0, 1, 0, 0);
  const AGSection<TrivialGaugeGroupoid> Y(g, {A});
  const auto D2 = domain::power(2);
  const auto e = generator(D2, 0) * generator(D2, 1) * q(3);
  EXPECT_EQ(section_at(Y, e), WBisection<TrivialGaugeGroupoid>(
                                  g, D2, {{0}, {WM(D2, {{0, Matrix::identity(2)}, {3, A * q(3)}})}}));
}

TEST(Flows, RejectsNonDPoints) {
  const AGSection<PairGroupoid> X(PairGroupoid(1), {c(1)});
  const auto D2 = domain::power(2);
  try {
    section_at(X, generator(D2, 0) + generator(D2, 1));
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("not a D-point"), std::string::npos);
  }
  EXPECT_THROW(section_at(X, scalar(D2, q(1)) + generator(D2, 0)), std::invalid_argument);
}

TEST(Flows, ExtractFieldReadsTheDSlot) {
  const auto D = domain::first_order();
  const AGSection<PairGroupoid> X(PairGroupoid(2), {x(0) * x(1), c(-2)});
  EXPECT_EQ(extract_field(section_at(X, generator(D, 0)), d1), X);
  const AGSection<TrivialGaugeGroupoid> Y(TrivialGaugeGroupoid(2, 1), {Matrix(1, 1, {q(5)}), Matrix(1, 1, {q(-1)})});
  EXPECT_EQ(extract_field(section_at(Y, generator(D, 0)), d1), Y);
}

TEST(AlgebroidSections, Arithmetic) {
  const PairGroupoid g(1);
  const AGSection<PairGroupoid> X(g, {c(1)}), Y(g, {x(0)});
  EXPECT_EQ(X + AGSection<PairGroupoid>::zero(g), X);
  EXPECT_EQ(X + Y, AGSection<PairGroupoid>(g, {c(1) + x(0)}));
  EXPECT_EQ(q(1) * X, X);
  EXPECT_TRUE((q(0) * X).is_zero());
  EXPECT_TRUE(is_identity(section_at(q(0) * X, generator(domain::first_order(), 0))));
  EXPECT_EQ(X - X, AGSection<PairGroupoid>::zero(g));
  EXPECT_EQ(to_string(X + Y), "x0 + 1");

  const TrivialGaugeGroupoid h(1, 2);
  const Matrix A = mat(1, 0, 0, 0), B = mat(0, 1, 0, 2);
  EXPECT_EQ(AGSection<TrivialGaugeGroupoid>(h, {A}) + AGSection<TrivialGaugeGroupoid>(h, {B}),
            AGSection<TrivialGaugeGroupoid>(h, {A + B}));
  EXPECT_EQ(-AGSection<TrivialGaugeGroupoid>(h, {A}), AGSection<TrivialGaugeGroupoid>(h, {-A}));
}

TEST(SectionMaps, RestrictSubstituteSigma) {
  const PairGroupoid g(1);
  const auto D2 = domain::power(2);
  const auto n2 = domain::first_neighbourhood(2);
  const WSection<PairGroupoid> s(g, D2, {WP(D2, {{0, x(0)}, {d1, c(1)}, {d2, x(0)}, {3, c(4)}})});
  EXPECT_EQ(restrict_section(s, n2), WSection<PairGroupoid>(g, n2, {WP(n2, {{0, x(0)}, {d1, c(1)}, {d2, x(0)}})}));
  const auto swap = permutation_from_cycles(2, {{1, 2}});
  EXPECT_EQ(sigma_perm(s, swap), WSection<PairGroupoid>(g, D2, {WP(D2, {{0, x(0)}, {d2, c(1)}, {d1, x(0)}, {3, c(4)}})}));
  const auto D = domain::first_order();
  const std::vector<WeilElement> images{generator(D, 0), WeilElement(D)};
  EXPECT_EQ(substitute(s, std::span<const WeilElement>(images), D),
            WSection<PairGroupoid>(g, D, {WP(D, {{0, x(0)}, {d1, c(1)}})}));
  EXPECT_TRUE(has_infinitesimal_part(s));
  EXPECT_FALSE(has_infinitesimal_part(scalar_section(s, D2)));
  EXPECT_TRUE(is_identity_at_origin(s));
}

// --- properties ------------------------------------------------------------

class GroupoidProperties : public ::testing::TestWithParam<int> {};

TEST_P(GroupoidProperties, PairStarIsCompositionOfTargets) {
  harness::Rng rng(static_cast<std::uint64_t>(GetParam()));
  const harness::Generator<PairGroupoid> gen{PairGroupoid(2), 3};
  for (const auto& dom : {domain::first_order(), domain::power(2), domain::first_neighbourhood(2)}) {
    const auto sigma = gen.section(rng, dom), rho = gen.section(rng, dom);
    std::vector<WeilElement> pt{scalar(dom, harness::small(rng)), scalar(dom, harness::small(rng))};
    EXPECT_EQ(evaluate(star(sigma, rho), pt), evaluate(sigma, evaluate(rho, pt)));
  }
}

template <class G>
void check_group_laws(harness::Rng& rng, const harness::Generator<G>& gen) {
  for (const auto& dom : {domain::first_order(), domain::power(2), domain::first_neighbourhood(3)}) {
    const auto a = gen.bisection(rng, dom), b = gen.bisection(rng, dom), c = gen.bisection(rng, dom);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE(is_identity(a * invert_bisection(a)));
    EXPECT_TRUE(is_identity(invert_bisection(a) * a));
    EXPECT_EQ(invert_bisection(a * b), invert_bisection(b) * invert_bisection(a));
    EXPECT_EQ(a * identity_section(gen.g, dom), a);
    const auto s = gen.section(rng, dom);
    EXPECT_EQ(identity_section(gen.g, dom).section() * s, s);
  }
}

TEST_P(GroupoidProperties, PairGroupLaws) {
  harness::Rng rng(100 + static_cast<std::uint64_t>(GetParam()));
  check_group_laws(rng, harness::Generator<PairGroupoid>{PairGroupoid(2), 2});
}

TEST_P(GroupoidProperties, GaugeGroupLaws) {
  harness::Rng rng(200 + static_cast<std::uint64_t>(GetParam()));
  check_group_laws(rng, harness::Generator<TrivialGaugeGroupoid>{TrivialGaugeGroupoid(3, 2)});
}

TEST_P(GroupoidProperties, RestrictionCommutesWithStar) {
  harness::Rng rng(300 + static_cast<std::uint64_t>(GetParam()));
  const harness::Generator<PairGroupoid> gen{PairGroupoid(2), 2};
  const auto D2 = domain::power(2), n2 = domain::first_neighbourhood(2);
  const auto a = gen.section(rng, D2), b = gen.section(rng, D2);
  EXPECT_EQ(restrict_section(a * b, n2), restrict_section(a, n2) * restrict_section(b, n2));
}

TEST_P(GroupoidProperties, AmbientChartRoundTrip) {
  harness::Rng rng(400 + static_cast<std::uint64_t>(GetParam()));
  const auto D2 = domain::power(2);
  const harness::Generator<PairGroupoid> pg{PairGroupoid(2), 2};
  const auto s = pg.bisection(rng, D2);
  const auto pc = ambient_chart(s.section());
  EXPECT_EQ(reconstitute(as_ambient_point(s, pc), pc, s.groupoid()), s.section());
  const harness::Generator<TrivialGaugeGroupoid> gg{TrivialGaugeGroupoid(3, 2)};
  const auto t = gg.bisection(rng, D2);
  const auto gc = ambient_chart(t.section());
  EXPECT_EQ(reconstitute(as_ambient_point(t, gc), gc, t.groupoid()), t.section());
}

INSTANTIATE_TEST_SUITE_P(Seeds, GroupoidProperties, ::testing::Range(0, 10));

}  // namespace
