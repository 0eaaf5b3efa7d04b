#include <gtest/gtest.h>

#include "mfkit/error.hpp"
#include "mfkit/linalg.hpp"
#include "oracles.hpp"
#include "random.hpp"

using namespace mfkit;
using mfkit::testing::random_order;
using mfkit::testing::random_scalar;
using mfkit::testing::uniform;

namespace {

CycloMatrix random_matrix(std::size_t r, std::size_t c, long order, int zero_bias = 1) {
  CycloMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (uniform(0, zero_bias) == 0) m(i, j) = random_scalar(order);
  return m;
}

// Low rank by construction: product of r x k and k x c factors.
CycloMatrix random_low_rank(std::size_t r, std::size_t c, std::size_t k, long order) {
  return random_matrix(r, k, order, 0) * random_matrix(k, c, order, 0);
}

CycloScalar z(long k, long n) { return CycloScalar::root_of_unity(k, n); }

}  // namespace

TEST(CycloMatrix, IdentityProductAndInverse) {
  const CycloMatrix id = CycloMatrix::identity(3);
  EXPECT_TRUE(id.is_identity());
  CycloMatrix a(2, 2);
  a(0, 0) = z(1, 5);
  a(0, 1) = CycloScalar(1);
  a(1, 1) = z(2, 5);
  EXPECT_EQ(a * a.inverse(), CycloMatrix::identity(2));
  EXPECT_EQ(a.inverse() * a, CycloMatrix::identity(2));
  EXPECT_EQ(a.determinant(), z(3, 5));
  EXPECT_EQ(a.pow(0), CycloMatrix::identity(2));
  EXPECT_EQ(a.pow(-1), a.inverse());
  CycloMatrix sing(2, 2);
  sing(0, 0) = CycloScalar(1);
  sing(0, 1) = CycloScalar(2);
  sing(1, 0) = CycloScalar(2);
  sing(1, 1) = CycloScalar(4);
  EXPECT_THROW(sing.inverse(), DivisionByZero);
  EXPECT_EQ(sing.determinant(), CycloScalar());
  EXPECT_EQ(rank(sing), 1u);
}

TEST(CycloMatrix, ScalarDetection) {
  CycloScalar s;
  EXPECT_TRUE(CycloMatrix::scalar(3, z(1, 7)).is_scalar(&s));
  EXPECT_EQ(s, z(1, 7));
  CycloMatrix m = CycloMatrix::identity(2);
  m(0, 1) = CycloScalar(1);
  EXPECT_FALSE(m.is_scalar());
  EXPECT_THROW(CycloMatrix(2, 3) * CycloMatrix(2, 3), InvalidArgument);
}

TEST(CycloMatrix, JsonRoundTrip) {
  const CycloMatrix m = random_matrix(3, 2, 12);
  EXPECT_EQ(matrix_from_json(to_json(m), "/m"), m);
  try {
    matrix_from_json(nlohmann::json::parse("[[1]]"), "/generators/0");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "schema");
    EXPECT_NE(std::string(e.what()).find("/generators/0/0/0"), std::string::npos);
  }
}

TEST(Rank, MatchesRationalBlowupOracle) {
  for (int t = 0; t < 300; ++t) {
    const long n = random_order();
    const auto r = static_cast<std::size_t>(uniform(1, 5));
    const auto c = static_cast<std::size_t>(uniform(1, 5));
    const CycloMatrix m = uniform(0, 1) ? random_matrix(r, c, n)
                                        : random_low_rank(r, c, static_cast<std::size_t>(uniform(0, 3)), n);
    ASSERT_EQ(rank(m), mfkit::testing::rank_via_rational_blowup(m)) << m.to_string();
    ASSERT_EQ(kernel_dimension(m), c - rank(m));
  }
}

TEST(Rank, LowRankProductsHaveBoundedRank) {
  for (int t = 0; t < 200; ++t) {
    const long n = random_order();
    const auto k = static_cast<std::size_t>(uniform(0, 3));
    const CycloMatrix m = random_low_rank(5, 6, k, n);
    ASSERT_LE(rank(m), k);
  }
}

TEST(Determinant, MultiplicativeOnRandomMatrices) {
  for (int t = 0; t < 200; ++t) {
    const long n = random_order();
    const CycloMatrix a = random_matrix(3, 3, n, 0);
    const CycloMatrix b = random_matrix(3, 3, random_order(), 0);
    ASSERT_EQ((a * b).determinant(), a.determinant() * b.determinant());
    if (!a.determinant().is_zero()) ASSERT_EQ(a * a.inverse(), CycloMatrix::identity(3));
  }
}

TEST(Stacking, Shapes) {
  const CycloMatrix a = random_matrix(2, 3, 5);
  const CycloMatrix b = random_matrix(1, 3, 5);
  const CycloMatrix v = vstack({a, b});
  EXPECT_EQ(v.rows(), 3u);
  EXPECT_EQ(v(2, 1), b(0, 1));
  const CycloMatrix h = hstack({a, random_matrix(2, 1, 4)});
  EXPECT_EQ(h.cols(), 4u);
  EXPECT_EQ(h(1, 2), a(1, 2));
  EXPECT_THROW(vstack({a, random_matrix(1, 2, 5)}), InvalidArgument);
}
