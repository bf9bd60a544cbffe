#include <gtest/gtest.h>

#include "sdg/harness/generators.hpp"
#include "sdg/matrix.hpp"
#include "sdg/oracles.hpp"
#include "support.hpp"

using namespace sdg;
using test::q;

namespace {

Polynomial x(std::size_t i) { return Polynomial::variable(i); }
Polynomial c(long n) { return Polynomial::constant(q(n)); }
Matrix mat(long a, long b, long cc, long d) { return Matrix(2, 2, {q(a), q(b), q(cc), q(d)}); }

TEST(Matrix, Basics) {
  const Matrix A = mat(1, 2, 3, 4);
  EXPECT_EQ(A * Matrix::identity(2), A);
  EXPECT_EQ(A * *A.inverse(), Matrix::identity(2));
  EXPECT_EQ(*A.inverse(), Matrix(2, 2, {q(-2), q(1), q(3, 2), q(-1, 2)}));
  EXPECT_FALSE(mat(1, 2, 2, 4).inverse().has_value());
  EXPECT_EQ(Matrix::unit(2, 0, 1), mat(0, 1, 0, 0));
  EXPECT_EQ(A.apply({q(1), q(1)}), (std::vector<Rational>{q(3), q(7)}));
  EXPECT_TRUE((A - A).is_zero());
  EXPECT_THROW(A + Matrix::identity(3), std::invalid_argument);
}

TEST(ClassicalBracket, Examples) {
  using oracle::PolyVectorField;
  EXPECT_EQ(oracle::classical_vf_bracket(PolyVectorField(2, {c(1), c(0)}), PolyVectorField(2, {c(0), x(0)})),
            PolyVectorField(2, {c(0), c(1)}));
  EXPECT_EQ(oracle::classical_vf_bracket(PolyVectorField(1, {x(0)}), PolyVectorField(1, {x(0) * x(0)})),
            PolyVectorField(1, {x(0) * x(0)}));
  EXPECT_THROW(PolyVectorField(2, {x(0)}), std::invalid_argument);
  EXPECT_THROW(oracle::classical_vf_bracket(PolyVectorField(1, {x(0)}), PolyVectorField(2, {x(0), x(1)})),
               std::invalid_argument);
}

TEST(MatrixTableBracket, Examples) {
  const Matrix E12 = mat(0, 1, 0, 0), E21 = mat(0, 0, 1, 0);
  EXPECT_EQ(oracle::matrix_table_bracket({E12}, {E21}), (std::vector<Matrix>{mat(-1, 0, 0, 1)}));
  const Matrix A = mat(1, 2, 3, 4);
  EXPECT_TRUE(oracle::matrix_table_bracket({A}, {A})[0].is_zero());
  EXPECT_TRUE(oracle::matrix_table_bracket({mat(2, 0, 0, 3)}, {mat(-1, 0, 0, 5)})[0].is_zero());
  EXPECT_THROW(oracle::matrix_table_bracket({A}, {A, A}), std::invalid_argument);
}

class OracleProperties : public ::testing::TestWithParam<int> {};

TEST_P(OracleProperties, ClassicalBracketMatchesTermwiseJacobian) {
  harness::Rng rng(static_cast<std::uint64_t>(GetParam()));
  PolynomialMap xi, eta;
  for (int i = 0; i < 3; ++i) {
    xi.push_back(harness::random_polynomial(rng, 3, 3));
    eta.push_back(harness::random_polynomial(rng, 3, 3));
  }
  EXPECT_EQ(oracle::classical_vf_bracket(oracle::PolyVectorField(3, xi), oracle::PolyVectorField(3, eta)).components,
            test::jacobian_bracket(xi, eta));
}

TEST_P(OracleProperties, MatrixBracketIsAntisymmetricWithJacobi) {
  harness::Rng rng(100 + static_cast<std::uint64_t>(GetParam()));
  std::vector<Matrix> X, Y, Z;
  for (int p = 0; p < 2; ++p) {
    X.push_back(harness::random_matrix(rng, 3));
    Y.push_back(harness::random_matrix(rng, 3));
    Z.push_back(harness::random_matrix(rng, 3));
  }
  const auto br = [](const auto& a, const auto& b) { return oracle::matrix_table_bracket(a, b); };
  const auto xy = br(X, Y), yx = br(Y, X);
  const auto j1 = br(X, br(Y, Z)), j2 = br(Y, br(Z, X)), j3 = br(Z, xy);
  for (int p = 0; p < 2; ++p) {
    EXPECT_TRUE((xy[p] + yx[p]).is_zero());
    EXPECT_TRUE((j1[p] + j2[p] + j3[p]).is_zero());
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, OracleProperties, ::testing::Range(0, 20));

}  // namespace
