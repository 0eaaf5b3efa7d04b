#include <gtest/gtest.h>

#include <algorithm>

#include "mfkit/error.hpp"
#include "mfkit/surfaces.hpp"
#include "random.hpp"

using namespace mfkit;
using mfkit::testing::uniform;

namespace {

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "none";
}

SurfacePiece piece(int genus, std::vector<std::pair<int, int>> slots) {
  SurfacePiece p{genus, {}};
  for (auto [s, c] : slots) p.boundary.push_back({s, c});
  return p;
}

int total_chi(const std::vector<SurfacePiece>& pieces) {
  int chi = 0;
  for (const auto& p : pieces) chi += p.euler_characteristic();
  return chi;
}

// The glued surface is one closed component of the target genus.
void expect_closed(const Embedding& e, int genus) {
  const auto comps = glue_result(e.as_graph());
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps.front().genus, genus);
  EXPECT_TRUE(comps.front().boundary.empty());
}

std::vector<int> random_colors(const ColorSet& cs, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) out.push_back(cs.colors()[static_cast<std::size_t>(uniform(0, static_cast<int>(cs.size()) - 1))]);
  return out;
}

}  // namespace

TEST(GlueResult, SelfGluedAnnulusAddsHandle) {
  for (int g = 0; g <= 3; ++g) {
    GluingGraph graph{{piece(g, {{0, 2}, {1, 2}})}, {{0, 1}}};
    const auto comps = glue_result(graph);
    ASSERT_EQ(comps.size(), 1u);
    EXPECT_EQ(comps[0].genus, g + 1);
    EXPECT_TRUE(comps[0].boundary.empty());
  }
}

TEST(GlueResult, PantsCompose) {
  GluingGraph graph{{piece(0, {{0, 1}, {1, 2}, {2, 3}}), piece(0, {{3, 3}, {4, 0}, {5, 3}})}, {{2, 3}}};
  const auto comps = glue_result(graph);
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps[0].genus, 0);
  EXPECT_EQ(comps[0].boundary.size(), 4u);
  EXPECT_EQ(comps[0].euler_characteristic, -2);
}

TEST(GlueResult, DoubleHasGenus2hPlusNMinus1) {
  for (int h = 0; h <= 3; ++h)
    for (int n = 1; n <= 5; ++n) {
      GluingGraph graph;
      graph.pieces = {SurfacePiece{h, {}}, SurfacePiece{h, {}}};
      for (int i = 0; i < n; ++i) {
        graph.pieces[0].boundary.push_back({i, 0});
        graph.pieces[1].boundary.push_back({n + i, 0});
        graph.pairings.emplace_back(i, n + i);
      }
      const auto comps = glue_result(graph);
      ASSERT_EQ(comps.size(), 1u);
      EXPECT_EQ(comps[0].genus, 2 * h + n - 1) << h << "," << n;
    }
}

TEST(GlueResult, Errors) {
  EXPECT_EQ(error_code([] { glue_result({{piece(0, {{0, 1}, {1, 2}})}, {{0, 1}}}); }), "color_mismatch");
  EXPECT_EQ(error_code([] { glue_result({{piece(0, {{0, 1}, {0, 1}})}, {}}); }), "invalid_graph");
  EXPECT_EQ(error_code([] { glue_result({{piece(0, {{0, 1}, {1, 1}, {2, 1}})}, {{0, 1}, {1, 2}}}); }),
            "invalid_graph");
  EXPECT_EQ(error_code([] { glue_result({{piece(0, {{0, 1}})}, {{0, 7}}}); }), "invalid_graph");
}

TEST(GlueResult, EulerCharacteristicConserved) {
  for (int t = 0; t < 500; ++t) {
    GluingGraph graph;
    int slot = 0;
    const int pieces = uniform(1, 4);
    for (int p = 0; p < pieces; ++p) {
      SurfacePiece s{uniform(0, 2), {}};
      const int n = uniform(0, 4);
      for (int i = 0; i < n; ++i) s.boundary.push_back({slot++, 0});
      graph.pieces.push_back(s);
    }
    std::vector<int> slots(static_cast<std::size_t>(slot));
    std::iota(slots.begin(), slots.end(), 0);
    std::shuffle(slots.begin(), slots.end(), mfkit::testing::rng());
    for (std::size_t i = 0; i + 1 < slots.size(); i += 2)
      if (uniform(0, 1)) graph.pairings.emplace_back(slots[i], slots[i + 1]);
    const auto comps = glue_result(graph);
    int chi = 0;
    std::size_t piece_count = 0;
    for (const auto& c : comps) {
      chi += c.euler_characteristic;
      piece_count += c.pieces.size();
      EXPECT_EQ(c.euler_characteristic, 2 - 2 * c.genus - static_cast<int>(c.boundary.size()));
    }
    ASSERT_EQ(chi, total_chi(graph.pieces));
    ASSERT_EQ(piece_count, graph.pieces.size());
  }
}

TEST(IsEmbeddable, SpecExamples) {
  const ColorSet cs(5, Variant::SU2);
  for (int a : cs.colors())
    for (int b : cs.colors())
      for (int c : cs.colors())
        for (int d : cs.colors()) {
          const std::vector<int> colors{a, b, c, d};
          const auto r = is_embeddable(0, 4, colors, 4, cs);
          ASSERT_TRUE(r.found);
          expect_closed(*r.witness, 4);
        }
  EXPECT_TRUE(is_embeddable(4, 0, {}, 4, cs).found);
  EXPECT_FALSE(is_embeddable(5, 0, {}, 4, cs).found);
  EXPECT_FALSE(is_embeddable(3, 0, {}, 4, cs).found);
  for (int a : cs.colors())
    for (int b : cs.colors())
      for (int c : cs.colors()) {
        const std::vector<int> colors{a, b, c};
        EXPECT_TRUE(is_embeddable(1, 3, colors, 4, cs).found);
      }
}

TEST(IsEmbeddable, GprimeBelowFourRejected) {
  const ColorSet cs(5, Variant::SO3);
  EXPECT_EQ(error_code([&] { is_embeddable(0, 1, std::vector<int>{0}, 3, cs); }), "gprime_too_small");
  EXPECT_EQ(error_code([&] { is_embeddable(0, 2, std::vector<int>{0}, 4, cs); }), "invalid_argument");
}

TEST(IsEmbeddable, WitnessTieBreakAndShape) {
  const ColorSet cs(5, Variant::SO3);
  const std::vector<int> colors{2, 2, 2};
  const auto r = is_embeddable(0, 3, colors, 4, cs);
  ASSERT_TRUE(r.found);
  // One component first: S_2^3 with the same colors.
  ASSERT_EQ(r.witness->complement.size(), 1u);
  EXPECT_EQ(r.witness->complement[0].genus, 2);
  EXPECT_EQ(r.witness->complement[0].label(), (BlockLabel{2, {2, 2, 2}}));
  // Too large for S_4: genus 4 with boundary leaves no room.
  EXPECT_FALSE(is_embeddable(4, 1, std::vector<int>{0}, 4, cs).found);
}

TEST(IsEmbeddable, WitnessesGlueToTargetAndArePermutationInvariant) {
  for (int t = 0; t < 300; ++t) {
    const ColorSet cs(uniform(0, 1) ? 5 : 7, uniform(0, 1) ? Variant::SU2 : Variant::SO3);
    const int h = uniform(0, 3);
    const int n = uniform(0, 4);
    std::vector<int> colors = random_colors(cs, n);
    const auto r = is_embeddable(h, n, colors, 4, cs);
    if (r.found) {
      expect_closed(*r.witness, 4);
      if (block_nonzero({h, colors}, cs))
        for (const auto& p : r.witness->complement) ASSERT_TRUE(block_nonzero(p.label(), cs));
      for (const auto& p : r.witness->complement)
        ASSERT_FALSE(p.boundary.empty() && p.genus <= 1) << "sphere or torus component";
    }
    std::shuffle(colors.begin(), colors.end(), mfkit::testing::rng());
    ASSERT_EQ(is_embeddable(h, n, colors, 4, cs).found, r.found);
  }
}

TEST(Truncation, EmbeddableSetIsTruncationSet) {
  for (int ell : {3, 5, 7}) {
    for (Variant v : {Variant::SU2, Variant::SO3}) {
      const ColorSet cs(ell, v);
      const auto check = validate_truncation_set(embeddable_membership(4, cs), cs, ProbeBound{});
      EXPECT_TRUE(check.ok) << ell << " " << to_string(v) << " " << check.axiom;
    }
  }
}

TEST(Truncation, MissingVacuumFiveTupleFailsAxiomZero) {
  const ColorSet cs(5, Variant::SO3);
  auto base = embeddable_membership(4, cs);
  TruncationMembership member = [&](int g, std::span<const int> colors) {
    if (g == 0 && colors.size() == 5 && std::all_of(colors.begin(), colors.end(), [](int c) { return c == 0; }))
      return false;
    return base(g, colors);
  };
  const auto check = validate_truncation_set(member, cs, ProbeBound{});
  EXPECT_FALSE(check.ok);
  EXPECT_EQ(check.axiom, "0");
  EXPECT_EQ(check.failing, (BlockLabel{0, {0, 0, 0, 0, 0}}));
}

TEST(Truncation, FullSetPassesAndAsymmetricSetFailsP) {
  const ColorSet cs(5, Variant::SU2);
  EXPECT_TRUE(validate_truncation_set([](int, std::span<const int>) { return true; }, cs, ProbeBound{}).ok);
  TruncationMembership lopsided = [](int g, std::span<const int> colors) {
    return g <= 1 || colors.empty() || colors.front() == 0;
  };
  const auto check = validate_truncation_set(lopsided, cs, ProbeBound{});
  EXPECT_FALSE(check.ok);
  EXPECT_EQ(check.axiom, "P");
}

TEST(ConnectedEmbedding, FourHoledSphereInGenusSeven) {
  const ColorSet cs(5, Variant::SU2);
  const std::vector<int> colors{2, 2, 2, 2};
  const auto ce = connected_embedding(0, 4, colors, 7, 4, cs);
  ASSERT_EQ(ce.embedding.complement.size(), 1u);
  EXPECT_EQ(-ce.embedding.complement[0].euler_characteristic(), 10);
  expect_closed(ce.embedding, 7);
}

TEST(ConnectedEmbedding, ClosedSurfaceIsVacuumCapped) {
  const ColorSet cs(5, Variant::SO3);
  const auto ce = connected_embedding(4, 0, {}, 7, 4, cs);
  EXPECT_TRUE(ce.embedding.vacuum_capped);
  ASSERT_EQ(ce.embedding.complement.size(), 1u);
  EXPECT_EQ(ce.embedding.complement[0].genus, 3);
  expect_closed(ce.embedding, 7);
}

TEST(ConnectedEmbedding, Preconditions) {
  const ColorSet cs(5, Variant::SO3);
  const std::vector<int> c{0};
  EXPECT_EQ(error_code([&] { connected_embedding(0, 1, c, 6, 4, cs); }), "genus_bound");
  EXPECT_EQ(error_code([&] { connected_embedding(5, 0, {}, 9, 4, cs); }), "not_embeddable");
  EXPECT_EQ(error_code([&] { connected_embedding(0, 1, c, 9, 3, cs); }), "gprime_too_small");
}

TEST(ConnectedEmbedding, RandomWitnessesGlueToTarget) {
  for (int t = 0; t < 200; ++t) {
    const ColorSet cs(uniform(0, 1) ? 5 : 7, Variant::SU2);
    const int gprime = uniform(4, 5);
    const int g = 2 * gprime - 1 + uniform(0, 3);
    const int h = uniform(0, 2);
    const int n = uniform(0, 4);
    const std::vector<int> colors = random_colors(cs, n);
    if (!is_embeddable(h, n, colors, gprime, cs).found) continue;
    const auto ce = connected_embedding(h, n, colors, g, gprime, cs);
    ASSERT_EQ(ce.embedding.complement.size(), 1u);
    expect_closed(ce.embedding, g);
    expect_closed(ce.source, gprime);
    if (block_nonzero({h, colors}, cs)) ASSERT_TRUE(block_nonzero(ce.embedding.complement[0].label(), cs));
  }
}
