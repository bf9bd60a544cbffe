#include <gtest/gtest.h>

#include "sdg/weil.hpp"
#include "support.hpp"

using namespace sdg;
using test::q;
using test::W;

namespace {

constexpr Mask d1 = 1, d2 = 2, d3 = 4, d12 = 3, d13 = 5, d23 = 6, d123 = 7;

TEST(Domain, NamedConstructors) {
  EXPECT_EQ(domain::first_order()->to_string(), "D^1");
  EXPECT_EQ(domain::power(3)->allowed_monomials().size(), 8u);
  const auto n2 = domain::first_neighbourhood(2);
  EXPECT_EQ(n2->to_string(), "D^2{(1,2)}");
  EXPECT_EQ(n2->allowed_monomials(), (std::vector<Mask>{0, d1, d2}));
  const auto w = domain::cube_without_13_23();
  EXPECT_EQ(w->to_string(), "D^3{(1,3),(2,3)}");
  EXPECT_EQ(w->allowed_monomials(), (std::vector<Mask>{0, d1, d2, d12, d3}));
}

TEST(Domain, ZeroSetIsSupersetClosedAndMinimal) {
  const auto w = domain::cube_without_13_23();
  EXPECT_TRUE(w->is_zero_monomial(d123));
  EXPECT_FALSE(w->is_zero_monomial(d12));
  const InfinitesimalDomain redundant(3, {d13, d123, d23});
  EXPECT_EQ(redundant.minimal_zero_monomials(), (std::vector<Mask>{d13, d23}));
  EXPECT_EQ(redundant, *w);
}

TEST(Domain, Product) {
  const auto p = domain::product(*domain::first_neighbourhood(2), *domain::first_order());
  EXPECT_EQ(p->generator_count(), 3u);
  EXPECT_TRUE(p->is_zero_monomial(d12));
  EXPECT_FALSE(p->is_zero_monomial(d13));
  EXPECT_FALSE(p->is_zero_monomial(d23));
}

TEST(Domain, RejectsSingletonsAndOutOfRange) {
  EXPECT_THROW(InfinitesimalDomain(2, {d1}), std::invalid_argument);
  EXPECT_THROW(InfinitesimalDomain(2, {d13}), std::invalid_argument);
  EXPECT_THROW(domain::custom(2, {{0, 2}}), std::invalid_argument);
}

TEST(WeilArithmetic, Add) {
  const auto D = domain::first_order();
  EXPECT_EQ(W(D, {{0, 2}, {d1, 3}}) + W(D, {{0, 1}, {d1, -1}}), W(D, {{0, 3}, {d1, 2}}));
  const auto x = W(D, {{0, 4}, {d1, 7}});
  EXPECT_EQ(x + WeilElement(D), x);
  const auto n2 = domain::first_neighbourhood(2);
  EXPECT_EQ(generator(n2, 0) + generator(n2, 1), W(n2, {{d1, 1}, {d2, 1}}));
}

TEST(WeilArithmetic, Multiply) {
  const auto D = domain::first_order();
  EXPECT_EQ(W(D, {{0, 2}, {d1, 3}}) * W(D, {{0, 5}, {d1, 7}}), W(D, {{0, 10}, {d1, 29}}));
  const auto D2 = domain::power(2);
  EXPECT_EQ(W(D2, {{0, 1}, {d1, 2}}) * W(D2, {{0, 3}, {d2, 1}}), W(D2, {{0, 3}, {d1, 6}, {d2, 1}, {d12, 2}}));
  const auto n2 = domain::first_neighbourhood(2);
  EXPECT_EQ(W(n2, {{0, 1}, {d1, 1}}) * W(n2, {{0, 1}, {d2, 1}}), W(n2, {{0, 1}, {d1, 1}, {d2, 1}}));
}

TEST(WeilArithmetic, Scale) {
  const auto D = domain::first_order();
  EXPECT_EQ(W(D, {{0, 1}, {d1, 1}}) * q(3), W(D, {{0, 3}, {d1, 3}}));
  EXPECT_TRUE((W(D, {{0, 1}, {d1, 1}}) * q(0)).is_zero());
  const auto D2 = domain::power(2);
  EXPECT_EQ(q(-1) * W(D2, {{d1, 1}, {d12, 1}}), W(D2, {{d1, -1}, {d12, -1}}));
}

TEST(WeilArithmetic, ZeroCoefficientsAreNormalized) {
  const auto D = domain::first_order();
  const auto x = W(D, {{0, 1}, {d1, 2}});
  EXPECT_TRUE((x - x).terms().empty());
  EXPECT_EQ(W(D, {{0, 1}, {d1, 0}}).terms().size(), 1u);
}

TEST(WeilArithmetic, DomainMismatchThrows) {
  const auto a = generator(domain::power(2), 0);
  const auto b = generator(domain::first_neighbourhood(2), 0);
  EXPECT_THROW(a + b, DomainMismatch);
  EXPECT_THROW(a * b, DomainMismatch);
}

TEST(WeilArithmetic, StructurallyEqualDomainsMix) {
  EXPECT_EQ(generator(domain::power(2), 0) + generator(domain::power(2), 1), W(domain::power(2), {{d1, 1}, {d2, 1}}));
}

TEST(WeilCoefficient, Lookup) {
  const auto D2 = domain::power(2);
  const auto x = W(D2, {{0, 3}, {d1, 6}, {d12, 2}});
  EXPECT_EQ(x.coefficient(d12), 2);
  EXPECT_EQ(x.coefficient(0), x.scalar_part());
  EXPECT_EQ(WeilElement(D2).coefficient(d1), 0);
  EXPECT_THROW(W(domain::first_neighbourhood(2), {{d1, 1}}).coefficient(d12), std::invalid_argument);
  EXPECT_THROW(WeilElement::monomial(domain::first_neighbourhood(2), d12, q(1)), std::invalid_argument);
}

TEST(WeilRestrict, Examples) {
  const auto D2 = domain::power(2);
  const auto n2 = domain::first_neighbourhood(2);
  EXPECT_EQ(W(D2, {{0, 1}, {d1, 1}, {d12, 5}}).restrict(n2), W(n2, {{0, 1}, {d1, 1}}));
  const auto x = W(D2, {{0, 4}, {d12, 1}});
  EXPECT_EQ(x.restrict(domain::power(2)), x);
  EXPECT_TRUE(W(domain::power(3), {{d13, 1}}).restrict(domain::cube_without_13_23()).is_zero());
}

TEST(WeilRestrict, RejectsNonCoarsening) {
  EXPECT_THROW(W(domain::first_neighbourhood(2), {{d1, 1}}).restrict(domain::power(2)), DomainMismatch);
  EXPECT_THROW(W(domain::power(2), {{d1, 1}}).restrict(domain::power(3)), DomainMismatch);
}

TEST(WeilSubstitute, Examples) {
  const auto D = domain::first_order();
  const auto n2 = domain::first_neighbourhood(2);
  const std::vector<WeilElement> sum{generator(n2, 0) + generator(n2, 1)};
  EXPECT_EQ(substitute(W(D, {{0, 4}, {d1, 5}}), std::span<const WeilElement>(sum), n2),
            W(n2, {{0, 4}, {d1, 5}, {d2, 5}}));

  const auto w = domain::cube_without_13_23();
  const auto D2 = domain::power(2);
  const std::vector<WeilElement> lam{generator(D2, 0), generator(D2, 1), generator(D2, 0) * generator(D2, 1)};
  EXPECT_EQ(substitute(W(w, {{d3, 7}}), std::span<const WeilElement>(lam), D2), W(D2, {{d12, 7}}));
}

TEST(WeilSubstitute, ValidityIsChecked) {
  const auto D = domain::first_order();
  const auto D2 = domain::power(2);
  const std::vector<WeilElement> sum{generator(D2, 0) + generator(D2, 1)};
  try {
    substitute(W(D, {{0, 2}, {d1, 3}}), std::span<const WeilElement>(sum), D2);
    FAIL() << "expected InvalidSubstitution";
  } catch (const InvalidSubstitution& e) {
    EXPECT_NE(std::string(e.what()).find("d1^2 = 0"), std::string::npos) << e.what();
  }
  // d1 d3 = 0 in the source but d1 * d1 d2... here d3 -> d2 keeps d1 d3 alive
  const auto w = domain::cube_without_13_23();
  const std::vector<WeilElement> bad{generator(D2, 0), generator(D2, 1), generator(D2, 1)};
  EXPECT_THROW(substitute(W(w, {{d1, 1}}), std::span<const WeilElement>(bad), D2), InvalidSubstitution);
  const std::vector<WeilElement> scalar_image{scalar(D2, q(1))};
  EXPECT_THROW(substitute(W(D, {{d1, 1}}), std::span<const WeilElement>(scalar_image), D2), InvalidSubstitution);
  const std::vector<WeilElement> too_few{};
  EXPECT_THROW(substitute(W(D, {{d1, 1}}), std::span<const WeilElement>(too_few), D2), InvalidSubstitution);
}

TEST(WeilInvert, NeumannSeries) {
  const auto D2 = domain::power(2);
  const auto a = W(D2, {{0, 2}, {d1, 1}, {d2, -3}, {d12, 5}});
  EXPECT_EQ(a * invert(a), scalar(D2, q(1)));
  EXPECT_EQ(invert(W(domain::first_order(), {{0, 2}, {d1, 1}})), (scalar(domain::first_order(), q(1, 2)) +
                                                               W(domain::first_order(), {{d1, 1}}) * q(-1, 4)));
  EXPECT_THROW(invert(W(D2, {{d1, 1}})), std::domain_error);
}

TEST(WeilRelabel, SwapsGenerators) {
  const auto D2 = domain::power(2);
  const std::vector<std::size_t> swap{1, 0};
  EXPECT_EQ(W(D2, {{d1, 3}, {d12, 1}}).relabel(swap, D2), W(D2, {{d2, 3}, {d12, 1}}));
}

TEST(WeilPrint, Readable) {
  const auto D2 = domain::power(2);
  EXPECT_EQ(to_string(W(D2, {{0, 3}, {d1, -1}, {d12, 2}})), "3 - d1 + 2*d1*d2");
  EXPECT_EQ(to_string(WeilElement(D2)), "0");
}

// --- properties ------------------------------------------------------------

class WeilProperties : public ::testing::TestWithParam<int> {};

std::vector<DomainRef> domains() {
  return {domain::first_order(), domain::power(2), domain::first_neighbourhood(2), domain::power(3),
          domain::cube_without_13_23(), domain::first_neighbourhood(3), domain::power(4)};
}

TEST_P(WeilProperties, RingLawsAndOracleProduct) {
  harness::Rng rng(static_cast<std::uint64_t>(GetParam()));
  for (const auto& dom : domains()) {
    const auto a = test::random_element(rng, dom), b = test::random_element(rng, dom),
               c = test::random_element(rng, dom);
    EXPECT_EQ(a * b, test::product_oracle(a, b)) << dom->to_string();
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * scalar(dom, q(1)), a);
  }
}

TEST_P(WeilProperties, GeneratorsSquareToZeroAndZeroMonomialsVanish) {
  for (const auto& dom : domains()) {
    for (std::size_t g = 0; g < dom->generator_count(); ++g) EXPECT_TRUE((generator(dom, g) * generator(dom, g)).is_zero());
    for (Mask z : dom->minimal_zero_monomials()) {
      WeilElement p = scalar(dom, q(1));
      for (std::size_t g = 0; g < dom->generator_count(); ++g)
        if (z >> g & 1u) p = p * generator(dom, g);
      EXPECT_TRUE(p.is_zero());
    }
  }
}

TEST_P(WeilProperties, SubstitutionIsAHomomorphism) {
  harness::Rng rng(100 + static_cast<std::uint64_t>(GetParam()));
  const auto D3 = domain::power(3);
  const auto e1 = generator(D3, 0), e2 = generator(D3, 1), e3 = generator(D3, 2);
  const Rational r1(rng.uniform(-3, 3)), r2(rng.uniform(-3, 3)), r3(rng.uniform(-3, 3));
  // D^2 -> D^3, both images square to zero
  const std::vector<WeilElement> images{e1 * r1 + e1 * e2 * r2, e2 * r3 + e2 * e3};
  const auto src = domain::power(2);
  auto phi = [&](const WeilElement& w) { return substitute(w, std::span<const WeilElement>(images), D3); };
  const auto a = test::random_element(rng, src), b = test::random_element(rng, src);
  EXPECT_EQ(phi(a * b), phi(a) * phi(b));
  EXPECT_EQ(phi(a + b), phi(a) + phi(b));
  EXPECT_EQ(phi(scalar(src, q(1))), scalar(D3, q(1)));
}

TEST_P(WeilProperties, RestrictionComposes) {
  harness::Rng rng(200 + static_cast<std::uint64_t>(GetParam()));
  const auto D3 = domain::power(3);
  const auto mid = domain::cube_without_13_23();
  const auto fine = domain::first_neighbourhood(3);
  const auto a = test::random_element(rng, D3), b = test::random_element(rng, D3);
  EXPECT_EQ(a.restrict(mid).restrict(fine), a.restrict(fine));
  EXPECT_EQ((a * b).restrict(mid), a.restrict(mid) * b.restrict(mid));
}

TEST_P(WeilProperties, InverseOfUnits) {
  harness::Rng rng(300 + static_cast<std::uint64_t>(GetParam()));
  for (const auto& dom : domains()) {
    auto a = test::random_element(rng, dom).nilpotent_part() + scalar(dom, Rational(1 + rng.uniform(0, 4)));
    EXPECT_EQ(a * invert(a), scalar(dom, q(1)));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, WeilProperties, ::testing::Range(0, 10));

}  // namespace
