#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "mfkit/cohomology.hpp"
#include "mfkit/error.hpp"
#include "oracles.hpp"
#include "random.hpp"
#include "reps.hpp"

using namespace mfkit;
using mfkit::testing::uniform;

namespace {

CycloScalar z(long k, long n) { return CycloScalar::root_of_unity(k, n); }

MatrixRep one_dim(std::vector<CycloScalar> values, long order) {
  MatrixRep rep;
  rep.dim = 1;
  rep.order = order;
  for (const auto& v : values) rep.generators.push_back(CycloMatrix::scalar(1, v));
  return rep;
}

// Random invertible matrix with small entries.
CycloMatrix random_invertible(std::size_t d, long order) {
  while (true) {
    CycloMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (uniform(0, 2) != 0) m(i, j) = mfkit::testing::random_scalar(order);
    if (!m.determinant().is_zero()) return m;
  }
}

// Finite order n: conjugate of a diagonal matrix of n-th roots of unity.
CycloMatrix random_finite_order(std::size_t d, long n) {
  const CycloMatrix p = random_invertible(d, 1);
  CycloMatrix diag(d, d);
  for (std::size_t i = 0; i < d; ++i) diag(i, i) = z(uniform(0, static_cast<int>(n) - 1), n);
  return p * diag * p.inverse();
}

Word random_word(int gens, int max_len) {
  Word w;
  const int len = uniform(0, max_len);
  for (int i = 0; i < len; ++i) w.push_back(uniform(1, gens) * (uniform(0, 1) ? 1 : -1));
  return w;
}

MatrixRep random_rep(int gens, std::size_t d, long order) {
  MatrixRep rep;
  rep.dim = d;
  rep.order = order;
  for (int g = 0; g < gens; ++g) rep.generators.push_back(random_invertible(d, order));
  return rep;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Builtins, Counts) {
  const auto t235 = builtin_presentation("triangle(2,3,5)");
  EXPECT_EQ(t235.generator_count, 2);
  EXPECT_EQ(t235.relators.size(), 3u);
  EXPECT_EQ(t235.relators[2], (Word{1, 2, 1, 2, 1, 2, 1, 2, 1, 2}));
  const auto f2 = builtin_presentation("free(2)");
  EXPECT_EQ(f2.generator_count, 2);
  EXPECT_TRUE(f2.relators.empty());
  const auto t555 = builtin_presentation("triangle(5,5,5)");
  EXPECT_EQ(t555.generator_count, 2);
  EXPECT_EQ(t555.relators.size(), 3u);
  const auto c5 = builtin_presentation("cyclic(5)");
  EXPECT_EQ(c5.generator_count, 1);
  EXPECT_EQ(c5.relators, (std::vector<Word>{{1, 1, 1, 1, 1}}));
  for (const char* bad : {"triangle(2,3)", "dihedral(4)", "", "free(x)"}) {
    try {
      builtin_presentation(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), "unknown_presentation");
    }
  }
}

TEST(Presentation, ValidateRejectsOutOfRange) {
  GroupPresentation p{2, {{1, -3}}};
  EXPECT_THROW(p.validate(), Error);
  p.relators = {{1, 0}};
  EXPECT_THROW(p.validate(), Error);
}

TEST(Fox, SpecExamples) {
  const MatrixRep rep = random_rep(2, 2, 5);
  const CycloMatrix g = rep.generators[0];
  const CycloMatrix h = rep.generators[1];
  const CycloMatrix id = CycloMatrix::identity(2);
  EXPECT_EQ(fox_derivative({1}, 1, rep), id);
  EXPECT_EQ(fox_derivative({1}, 2, rep), CycloMatrix(2, 2));
  EXPECT_EQ(fox_derivative({1, 1}, 1, rep), id + g);
  EXPECT_EQ(fox_derivative({-1}, 1, rep), -g.inverse());
  EXPECT_EQ(fox_derivative({1, 2, -1, -2}, 1, rep), id - g * h * g.inverse());
}

TEST(Fox, CommutatorMatchesDirectCocycle) {
  for (int t = 0; t < 100; ++t) {
    const MatrixRep rep = random_rep(2, 2, 12);
    std::vector<CycloMatrix> values{CycloMatrix(2, 1), CycloMatrix(2, 1)};
    for (auto& v : values)
      for (std::size_t i = 0; i < 2; ++i) v(i, 0) = mfkit::testing::random_scalar(12);
    const Word w{1, 2, -1, -2};
    const CycloMatrix fox = fox_derivative(w, 1, rep) * values[0] + fox_derivative(w, 2, rep) * values[1];
    ASSERT_EQ(fox, mfkit::testing::crossed_hom_value(w, rep, values));
  }
}

TEST(Fox, ProductRuleOnRandomWords) {
  for (int t = 0; t < 1000; ++t) {
    const int gens = uniform(1, 3);
    const MatrixRep rep = random_rep(gens, static_cast<std::size_t>(uniform(1, 2)), uniform(0, 1) ? 5 : 4);
    const Word u = random_word(gens, 5);
    const Word v = random_word(gens, 5);
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    const int gen = uniform(1, gens);
    const CycloMatrix lhs = fox_derivative(uv, gen, rep);
    const CycloMatrix rhs = fox_derivative(u, gen, rep) + evaluate_word(u, rep) * fox_derivative(v, gen, rep);
    ASSERT_EQ(lhs, rhs);
  }
}

TEST(HReport, FreeGroupTrivialRep) {
  const auto r = h_report(builtin_presentation("free(2)"), trivial_rep(2));
  EXPECT_EQ(r.dim_H1, 2u);
  EXPECT_EQ(r.dim_H0, 1u);
  EXPECT_EQ(r.dim_Z1, 2u);
  EXPECT_EQ(r.dim_B1, 0u);
}

TEST(HReport, CyclicWithPrimitiveFifthRoot) {
  const auto r = h_report(builtin_presentation("cyclic(5)"), one_dim({z(1, 5)}, 5));
  EXPECT_EQ(r.dim_H1, 0u);
  EXPECT_EQ(r.dim_H0, 0u);
  EXPECT_EQ(r.dim_Z1, 1u);
  EXPECT_EQ(r.dim_B1, 1u);
}

TEST(HReport, TrivialCoefficientsMatchAbelianization) {
  // H^1(G, Q) = Hom(G^ab, Q) has dimension gens - rank of the exponent-sum matrix.
  for (const char* name : {"triangle(2,3,5)", "triangle(5,5,5)", "triangle(2,3,7)", "cyclic(4)", "free(3)"}) {
    const auto pres = builtin_presentation(name);
    const auto r = h_report(pres, trivial_rep(pres.generator_count));
    EXPECT_EQ(r.dim_H1, static_cast<std::size_t>(pres.generator_count) -
                            mfkit::testing::abelianization_relation_rank(pres))
        << name;
  }
  EXPECT_EQ(h_report(builtin_presentation("triangle(2,3,5)"), trivial_rep(2)).dim_H1, 0u);
}

TEST(HReport, FiniteTriangleGroupVanishing) {
  const auto pres = builtin_presentation("triangle(2,3,5)");
  const MatrixRep perm = mfkit::testing::a5_permutation_rep();
  ASSERT_TRUE(check_relators(pres, perm, RelatorMode::Linear).ok);
  const auto rp = h_report(pres, perm);
  EXPECT_EQ(rp.dim_H1, 0u);
  EXPECT_EQ(rp.dim_H0, 1u);  // transitive action

  // The group is perfect, so the sign character only exists projectively.
  const MatrixRep sign = mfkit::testing::t235_sign_rep();
  EXPECT_FALSE(check_relators(pres, sign, RelatorMode::Linear).ok);
  const auto proj = check_relators(pres, sign, RelatorMode::Projective);
  ASSERT_TRUE(proj.ok);
  EXPECT_EQ(proj.scalars[2], CycloScalar(-1));
  try {
    h_report(pres, sign);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "not_a_representation");
  }
  const auto rs = h_report(pres, adjoint(sign));
  EXPECT_EQ(rs.dim_H1, 0u);
  EXPECT_EQ(rs.dim_H0, 1u);
  EXPECT_EQ(h_report(pres, adjoint(perm)).dim_H1, 0u);
}

TEST(HReport, ZeroGenerators) {
  GroupPresentation pres;
  MatrixRep rep;
  rep.dim = 3;
  const auto r = h_report(pres, rep);
  EXPECT_EQ(r.dim_H0, 3u);
  EXPECT_EQ(r.dim_H1, 0u);
  EXPECT_EQ(r.dim_Z1, 0u);
  EXPECT_EQ(r.dim_B1, 0u);
}

TEST(HReport, FibonacciAdjointVanishes) {
  const auto pres = builtin_presentation("triangle(5,5,5)");
  const MatrixRep rho = mfkit::testing::fibonacci_rep();
  EXPECT_TRUE(is_irreducible(pres, rho));
  const auto r = h_report(pres, adjoint(rho));
  EXPECT_EQ(r.dim_H0, 1u);
  EXPECT_EQ(r.dim_H1, 0u);
}

TEST(HReport, FibonacciIsUnitaryOfSignatureOneOne) {
  // Some Galois conjugate preserves an indefinite diagonal Hermitian form.
  const MatrixRep rho = mfkit::testing::fibonacci_rep();
  const CycloMatrix& x = rho.generators[0];
  const CycloMatrix& y = rho.generators[1];
  ASSERT_TRUE(x(0, 1).is_zero() && x(1, 0).is_zero());
  auto conj = [](const CycloScalar& s) { return s.galois(-1); };
  const CycloScalar h = (CycloScalar(1) - y(0, 0) * conj(y(0, 0))) / (y(1, 0) * conj(y(1, 0)));
  EXPECT_EQ(conj(h), h);
  CycloMatrix form = CycloMatrix::identity(2);
  form(1, 1) = h;
  CycloMatrix ystar(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) ystar(j, i) = conj(y(i, j));
  EXPECT_EQ(ystar * form * y, form);
  bool indefinite = false;
  for (long k = 1; k < rho.order; ++k)
    if (std::gcd(k, rho.order) == 1 && h.galois(k).to_complex(1).real() < 0) indefinite = true;
  EXPECT_TRUE(indefinite);
}

TEST(Adjoint, OneDimensionalIsTrivial) {
  const MatrixRep rep = one_dim({z(1, 5), z(2, 7)}, 35);
  const MatrixRep ad = adjoint(rep);
  EXPECT_EQ(ad.dim, 1u);
  for (const auto& g : ad.generators) EXPECT_TRUE(g.is_identity());
  EXPECT_TRUE(is_irreducible(builtin_presentation("free(2)"), rep));
}

TEST(Adjoint, PreservesRelatorsAndDimension) {
  const GroupPresentation pres{2, {{1, 1, 1}, {2, 2, 2, 2}}};
  for (int t = 0; t < 20; ++t) {
    MatrixRep rep;
    rep.dim = 2;
    rep.order = 12;
    rep.generators = {random_finite_order(2, 3), random_finite_order(2, 4)};
    ASSERT_TRUE(check_relators(pres, rep, RelatorMode::Linear).ok);
    const MatrixRep ad = adjoint(rep);
    EXPECT_EQ(ad.dim, 4u);
    EXPECT_TRUE(check_relators(pres, ad, RelatorMode::Linear).ok);
    // Trace of the identity element: dim^2.
    EXPECT_EQ(evaluate_word({}, ad).rows(), 4u);
    EXPECT_GE(h_report(pres, ad).dim_H0, 1u);
  }
}

TEST(Irreducible, DirectSumOfTrivialsIsReducible) {
  const auto pres = builtin_presentation("free(2)");
  const MatrixRep sum = direct_sum(trivial_rep(2), trivial_rep(2));
  EXPECT_FALSE(is_irreducible(pres, sum));
  EXPECT_EQ(h_report(pres, adjoint(sum)).dim_H0, 4u);
}

TEST(CocycleProperties, CoboundariesAreCocyclesAndBounds) {
  const auto t235 = builtin_presentation("triangle(2,3,5)");
  const auto t555 = builtin_presentation("triangle(5,5,5)");
  const MatrixRep perm = mfkit::testing::a5_permutation_rep();
  const MatrixRep fib = adjoint(mfkit::testing::fibonacci_rep());
  for (int t = 0; t < 1000; ++t) {
    const bool use_perm = t % 2 == 0;
    const auto& pres = use_perm ? t235 : t555;
    const MatrixRep& rep = use_perm ? perm : fib;
    CycloMatrix v(rep.dim, 1);
    for (std::size_t i = 0; i < rep.dim; ++i) v(i, 0) = mfkit::testing::random_scalar(use_perm ? 1 : 20);
    std::vector<CycloMatrix> values;
    for (const auto& g : rep.generators) values.push_back(g * v - v);
    for (const auto& r : pres.relators)
      ASSERT_TRUE(mfkit::testing::crossed_hom_value(r, rep, values).is_zero());
  }
  for (int t = 0; t < 50; ++t) {
    const int gens = uniform(0, 3);
    GroupPresentation pres{gens, {}};
    for (int r = 0; r < uniform(0, 2) && gens > 0; ++r) pres.relators.push_back(random_word(gens, 4));
    MatrixRep rep = trivial_rep(gens, static_cast<std::size_t>(uniform(1, 2)));
    pres.relators.erase(std::remove_if(pres.relators.begin(), pres.relators.end(),
                                       [&](const Word& w) { return !evaluate_word(w, rep).is_identity(); }),
                        pres.relators.end());
    const auto rep_r = h_report(pres, rep);
    ASSERT_LE(rep_r.dim_Z1, static_cast<std::size_t>(gens) * rep.dim);
    ASSERT_EQ(rep_r.dim_H1 + rep_r.dim_B1, rep_r.dim_Z1);
    ASSERT_EQ(rep_r.dim_B1, rep.dim - rep_r.dim_H0);
  }
}

TEST(LoadRep, TrivialFile) {
  const std::string path = write_temp("trivial.json", to_json(trivial_rep(2)).dump());
  const auto pres = builtin_presentation("triangle(2,3,5)");
  const MatrixRep rep = load_rep(path, &pres);
  EXPECT_EQ(rep.dim, 1u);
  EXPECT_EQ(rep.generators.size(), 2u);
}

TEST(LoadRep, ErrorsNameTheCulprit) {
  MatrixRep bad = trivial_rep(2);
  bad.generators[1] = CycloMatrix(1, 1);  // zero matrix
  const std::string singular = write_temp("singular.json", to_json(bad).dump());
  try {
    load_rep(singular);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "invalid_rep");
    EXPECT_NE(std::string(e.what()).find("generator 2"), std::string::npos);
  }
  const auto pres = builtin_presentation("triangle(2,3,5)");
  const std::string sign = write_temp("sign.json", to_json(mfkit::testing::t235_sign_rep()).dump());
  try {
    load_rep(sign, &pres);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "not_a_representation");
    EXPECT_NE(std::string(e.what()).find("relator 2"), std::string::npos);
  }
  EXPECT_NO_THROW(load_rep(sign, &pres, RelatorMode::Projective));
  const std::string schema = write_temp("schema.json", R"({"dim": 1, "order": 1, "generators": [[[{"order": 1}]]]})");
  try {
    load_rep(schema);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "schema");
    EXPECT_NE(std::string(e.what()).find("/generators/0/0/0"), std::string::npos);
  }
  EXPECT_THROW(load_rep(::testing::TempDir() + "does-not-exist.json"), Error);
}

TEST(LoadRep, FibonacciFixturePassesProjectiveCheck) {
  const auto pres = builtin_presentation("triangle(5,5,5)");
  const MatrixRep rho = load_rep(std::string(MFKIT_DATA_DIR) + "/fibonacci_t555.json", &pres, RelatorMode::Projective);
  EXPECT_EQ(rho.dim, 2u);
  EXPECT_EQ(rho.order, 20);
  // Both generators have the twist eigenvalues {1, zeta_5^3}.
  for (const auto& g : rho.generators) {
    EXPECT_EQ(g(0, 0) + g(1, 1), CycloScalar(1) + z(3, 5));
    EXPECT_EQ(g.determinant(), z(3, 5));
  }
}

TEST(Presentation, JsonRoundTrip) {
  const auto pres = builtin_presentation("triangle(2,3,5)");
  const auto back = presentation_from_json(to_json(pres));
  EXPECT_EQ(back.generator_count, 2);
  EXPECT_EQ(back.relators, pres.relators);
  EXPECT_THROW(presentation_from_json(nlohmann::json::parse(R"({"generators": 1, "relators": [[2]]})")), Error);
}
