#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace contra;
using namespace testing_support;

TEST(Cubic, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto ctx = preprocessed(random_context(2 + seed % 6, 2 + (seed * 7) % 6, 0.3 + 0.008 * static_cast<double>(seed), seed));
    std::set<IndexList> got;
    for (const auto& c : cubic_sets(ctx)) {
      got.insert(c.attributes);
      ASSERT_EQ(c.witnesses.size(), c.dimension());
    }
    EXPECT_EQ(got, brute_force_cubic(ctx));
  }
}

TEST(Cubic, WitnessesAreTheNonIncidentObjects) {
  auto ctx = preprocessed(random_context(7, 7, 0.6, 5));
  for (const auto& c : cubic_sets(ctx))
    for (std::size_t i = 0; i < c.dimension(); ++i)
      for (std::size_t g = 0; g < ctx.num_objects(); ++g) {
        bool fits = !ctx.incident(g, c.attributes[i]);
        for (std::size_t j = 0; j < c.dimension(); ++j)
          if (j != i) fits = fits && ctx.incident(g, c.attributes[j]);
        EXPECT_EQ(c.witnesses[i].test(g), fits);
      }
}

TEST(Cubic, AlternatingDiffersOnlyBelowTheTop) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto ctx = preprocessed(random_context(6, 6, 0.6, seed));
    auto maximal = cubic_sets(ctx, CubicSemantics::maximal);
    auto alt = cubic_sets(ctx, CubicSemantics::alternating);
    std::set<IndexList> alt_sets;
    for (const auto& c : alt) alt_sets.insert(c.attributes);
    // a maximal set is never blocked, so it is cubic under both readings
    for (const auto& c : maximal) EXPECT_TRUE(alt_sets.count(c.attributes));
  }
}

TEST(Cubic, RefusesUnreducedInput) {
  auto dup = context_from_rows({{1, 1}, {0, 0}});
  EXPECT_THROW(cubic_sets(dup), ContextError);
  auto reducible = context_from_rows({{1, 1, 1}, {1, 0, 0}, {0, 1, 0}});
  EXPECT_THROW(influence(reducible), ContextError);
  EXPECT_THROW(delta_adjust(reducible, 0.5), ContextError);
}

TEST(Influence, ContranominalThree) {
  auto ctx = make_contranominal(3);
  auto r = influence(ctx);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.cubic_counts, (std::map<std::size_t, std::uint64_t>{{3, 1}}));
    EXPECT_NEAR(row.zeta, 8.0 / 3.0, 1e-12);
  }
  const std::string table = influence_table(ctx, r);
  EXPECT_EQ(table, "attribute  k=3  zeta  chosen\n1            1   2.7\n2            1   2.7\n3            1   2.7\n");
}

TEST(Influence, ZetaFormula) {
  EXPECT_DOUBLE_EQ(zeta_from_counts({}), 0.0);
  EXPECT_NEAR(zeta_from_counts({{2, 1}, {3, 31}, {4, 9}}), 2 + 31 * 8.0 / 3 + 36, 1e-9);
  EXPECT_DOUBLE_EQ(zeta_from_counts({{1, 5}}), 10.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto ctx = preprocessed(random_context(7, 7, 0.6, seed));
    for (const auto& row : influence(ctx).rows) {
      double z = 0;
      for (auto [k, n] : row.cubic_counts) z += static_cast<double>(n) * std::pow(2.0, static_cast<double>(k)) / static_cast<double>(k);
      EXPECT_NEAR(row.zeta, z, 1e-9);
    }
  }
}

TEST(Influence, DiagnosisTable) {
  auto ctx = diagnosis();
  auto r = influence(ctx);
  const auto& expect = diagnosis_influence();
  ASSERT_EQ(r.rows.size(), expect.size());
  for (std::size_t m = 0; m < expect.size(); ++m) {
    auto counts = r.rows[m].cubic_counts;
    EXPECT_EQ(counts.count(1), 0u);
    EXPECT_EQ(counts[2], expect[m].k2) << ctx.attribute(m);
    EXPECT_EQ(counts[3], expect[m].k3) << ctx.attribute(m);
    EXPECT_EQ(counts[4], expect[m].k4) << ctx.attribute(m);
    EXPECT_NEAR(r.rows[m].zeta, expect[m].zeta, 0.05) << ctx.attribute(m);
  }
}

TEST(Influence, DiagnosisHalfSelection) {
  auto ctx = diagnosis();
  auto sel = delta_adjust(ctx, 0.5);
  EXPECT_EQ(sel.attributes, letters("dehijlno"));
  auto adj = adjusted_context(ctx, sel);
  EXPECT_EQ(adj.num_attributes(), 8u);
  EXPECT_EQ(count_concepts(adj), 29u);
  const auto table = influence_table(ctx, sel.report, sel.attributes);
  EXPECT_NE(table.find("Temp. in [35.0, 37.5]     3   16    0   48.7       *\n"), std::string::npos) << table;
  EXPECT_NE(table.find("Burning n                 1   31    9  120.7\n"), std::string::npos) << table;
}

TEST(Adjust, SizeIsCeiling) {
  EXPECT_EQ(adjusted_size(0.5, 15), 8u);
  EXPECT_EQ(adjusted_size(0.1, 30), 3u);
  EXPECT_EQ(adjusted_size(0.0, 15), 0u);
  EXPECT_EQ(adjusted_size(1.0, 15), 15u);
  EXPECT_EQ(adjusted_size(0.01, 15), 1u);
  EXPECT_THROW(adjusted_size(-0.1, 3), std::invalid_argument);
  EXPECT_THROW(adjusted_size(1.5, 3), std::invalid_argument);
  EXPECT_THROW(adjusted_size(std::nan(""), 3), std::invalid_argument);
}

TEST(Adjust, ExtremeDeltas) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto ctx = preprocessed(random_context(6, 6, 0.5, seed));
    EXPECT_TRUE(delta_adjust(ctx, 0).attributes.empty());
    IndexList all(ctx.num_attributes());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    EXPECT_EQ(delta_adjust(ctx, 1).attributes, all);
  }
}

TEST(Adjust, TiesGoToLowerIndex) {
  // every attribute of N4c has the same zeta
  auto ctx = make_contranominal(4);
  EXPECT_EQ(delta_adjust(ctx, 0.5).attributes, (IndexList{0, 1}));
}

TEST(Adjust, SelectionGrowsWithDelta) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto ctx = preprocessed(random_context(7, 7, 0.6, seed));
    auto report = influence(ctx);
    IndexList prev;
    for (int step = 0; step <= 20; ++step) {
      auto cur = select_by_influence(report, step / 20.0);
      EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
      prev = cur;
    }
  }
}

TEST(Adjust, ScalingZetaKeepsSelection) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto ctx = preprocessed(random_context(7, 7, 0.6, seed));
    auto report = influence(ctx);
    auto scaled = report;
    for (auto& row : scaled.rows) row.zeta *= 3.5;
    for (double d : {0.2, 0.5, 0.8}) EXPECT_EQ(select_by_influence(report, d), select_by_influence(scaled, d));
  }
}

TEST(Adjust, NoNewScales) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto ctx = preprocessed(random_context(7, 7, 0.55, seed));
    auto all = brute_force_scales(ctx);
    std::set<ContranominalScale> original(all.begin(), all.end());
    for (double d : {0.3, 0.5, 0.7}) {
      auto sel = delta_adjust(ctx, d);
      auto sub = SubcontextSelection::attributes_only(ctx, sel.attributes);
      for (const auto& s : enumerate_contrafinder(apply_selection(ctx, sub)))
        EXPECT_TRUE(original.count(detail::reindex(s, sub)));
    }
  }
}

TEST(Adjust, ExtentsFormSubMeetSemilattice) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto ctx = preprocessed(random_context(7, 7, 0.55, seed));
    std::set<Bits> original;
    for (const auto& c : enumerate_concepts(ctx)) original.insert(c.extent);
    for (double d : {0.3, 0.5, 0.7}) {
      std::set<Bits> adjusted;
      for (const auto& c : enumerate_concepts(adjusted_context(ctx, delta_adjust(ctx, d)))) adjusted.insert(c.extent);
      for (const auto& e : adjusted) {
        EXPECT_TRUE(original.count(e));
        for (const auto& f : adjusted) EXPECT_TRUE(adjusted.count(e & f));
      }
    }
  }
}

TEST(Adjust, EmptyContextTable) {
  FormalContext empty;
  EXPECT_EQ(influence_table(empty, influence(empty)), "");
  EXPECT_TRUE(delta_adjust(empty, 0.5).attributes.empty());
}

TEST(Serialize, InfluenceAndSelection) {
  auto ctx = make_contranominal(2);
  auto r = influence(ctx);
  EXPECT_EQ(influence_json(ctx, r).dump(),
            R"([{"label":"1","counts":{"2":1},"zeta":2.0},{"label":"2","counts":{"2":1},"zeta":2.0}])");
  EXPECT_EQ(selection_json(ctx, 0.5, {0}).dump(), R"({"delta":0.5,"chosen":["1"],"excluded":["2"]})");
  EXPECT_EQ(influence_csv(ctx, r, {0}), "attribute,k=2,zeta,chosen\n1,1,2.0,1\n2,1,2.0,0\n");
}
