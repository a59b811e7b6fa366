#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

using namespace contra;
using namespace testing_support;

namespace {

std::vector<ContranominalScale> all_checked(const FormalContext& ctx, EnumerationOptions opt = {}) {
  auto s = enumerate_contrafinder(ctx, opt);
  for (const auto& x : s) EXPECT_EQ(scale_violation(ctx, x), "") << scale_line(ctx, x);
  return s;
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Scale, ValidatorCatchesEachViolation) {
  auto ctx = make_contranominal(3);
  EXPECT_EQ(scale_violation(ctx, {{{0, 0}, {1, 1}}}), "");
  EXPECT_NE(scale_violation(ctx, {}), "");
  EXPECT_NE(scale_violation(ctx, {{{0, 1}}}), "");
  EXPECT_NE(scale_violation(ctx, {{{1, 1}, {0, 0}}}), "");
  EXPECT_NE(scale_violation(ctx, {{{0, 0}, {0, 1}}}), "");
  EXPECT_NE(scale_violation(ctx, {{{5, 0}}}), "");
}

TEST(ConflictGraph, Basics) {
  auto full = context_from_rows({{1, 1}, {1, 1}});
  EXPECT_TRUE(conflict_graph(full).vertices.empty());
  auto cg = conflict_graph(make_contranominal(2));
  ASSERT_EQ(cg.vertices.size(), 2u);
  EXPECT_EQ(cg.vertices[0], (ScalePair{0, 0}));
  EXPECT_EQ(cg.vertices[1], (ScalePair{1, 1}));
  ASSERT_EQ(cg.edges.size(), 1u);
  auto empty = context_from_rows({{0, 0, 0}, {0, 0, 0}});
  auto eg = conflict_graph(empty);
  EXPECT_EQ(eg.vertices.size(), 6u);
  EXPECT_TRUE(eg.edges.empty());
}

TEST(ContraFinder, ContranominalThree) {
  auto s = all_checked(make_contranominal(3));
  EXPECT_EQ(s.size(), 7u);
  EXPECT_EQ(histogram_of(s), (std::map<std::size_t, std::uint64_t>{{1, 3}, {2, 3}, {3, 1}}));
  EXPECT_EQ(s, brute_force_scales(make_contranominal(3)));
}

TEST(ContraFinder, EmptyIncidenceTwoByTwo) {
  auto ctx = context_from_rows({{0, 0}, {0, 0}});
  auto s = all_checked(ctx);
  EXPECT_EQ(s.size(), 4u);
  for (const auto& x : s) EXPECT_EQ(x.dimension(), 1u);
}

TEST(ContraFinder, DegenerateShapes) {
  EXPECT_TRUE(enumerate_contrafinder(FormalContext()).empty());
  EXPECT_TRUE(enumerate_contrafinder(context_from_rows({{1, 1, 1}})).empty());
  auto no_objects = FormalContext({}, {"a", "b"}, {});
  EXPECT_TRUE(enumerate_contrafinder(no_objects).empty());
  EXPECT_EQ(max_dimension(context_from_rows({{1, 1}, {1, 1}})), 0u);
}

TEST(ContraFinder, CountingLawOnContranominal) {
  for (std::size_t k = 1; k <= 6; ++k) {
    auto ctx = make_contranominal(k);
    auto h = count_contranominal_scales(ctx);
    EXPECT_EQ(h.total(), (1u << k) - 1);
    for (std::size_t j = 1; j <= k; ++j) EXPECT_EQ(h.by_dimension[j], binom(k, j));
    EXPECT_EQ(max_dimension(ctx), k);
  }
}

// The scale {(g0,a),(g2,b)} exists although g1, the other object without a,
// also misses b. A step that required every witness of a to survive b would
// lose it.
TEST(ContraFinder, KeepsGeneratorWhenOnlySomeTupleObjectsSurvive) {
  // a b
  auto ctx = context_from_rows({{0, 1}, {0, 0}, {1, 0}});
  auto s = all_checked(ctx);
  std::set<ContranominalScale> got(s.begin(), s.end());
  EXPECT_TRUE(got.count(ContranominalScale{{{0, 0}, {2, 1}}}));
  EXPECT_EQ(s, brute_force_scales(ctx));
}

TEST(ContraFinder, OracleEquivalenceOnRandomContexts) {
  std::uint64_t seed = 1;
  for (double density : {0.1, 0.3, 0.5, 0.7, 0.9})
    for (int i = 0; i < 12; ++i, ++seed) {
      const std::size_t n = 1 + seed % 7, m = 1 + (seed * 5) % 7;
      auto ctx = random_context(n, m, density, seed);
      auto cf = all_checked(ctx);
      ASSERT_TRUE(std::is_sorted(cf.begin(), cf.end()));
      ASSERT_EQ(std::set<ContranominalScale>(cf.begin(), cf.end()).size(), cf.size());
      ASSERT_EQ(cf, brute_force_scales(ctx));
      ASSERT_EQ(cf, enumerate_bronkerbosch(ctx));
      auto h = count_contranominal_scales(ctx);
      ASSERT_EQ(h.by_dimension, histogram_of(cf));
      ASSERT_EQ(count_bronkerbosch(ctx), h);
    }
}

TEST(ContraFinder, ThreadCountDoesNotChangeOutput) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto ctx = random_context(9, 9, 0.6, seed);
    EnumerationOptions par;
    par.threads = 4;
    EXPECT_EQ(enumerate_contrafinder(ctx), enumerate_contrafinder(ctx, par));
    EXPECT_EQ(count_contranominal_scales(ctx), count_contranominal_scales(ctx, par));
  }
}

TEST(ContraFinder, StreamingCanStopEarly) {
  auto ctx = make_contranominal(5);
  std::size_t seen = 0;
  const bool finished = for_each_scale(ctx, [&](const ContranominalScale&) { return ++seen < 4; });
  EXPECT_FALSE(finished);
  EXPECT_EQ(seen, 4u);
}

TEST(ContraFinder, GeneratorsAreAntiMonotone) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto ctx = random_context(7, 7, 0.6, seed);
    std::set<IndexList> gens;
    ContraFinder(ctx).for_each_generator([&](const CharacterizingTupleSet& t) {
      gens.insert(t.generator);
      return true;
    });
    for (const auto& n : gens) {
      if (n.size() < 2) continue;
      for (std::size_t drop = 0; drop < n.size(); ++drop) {
        IndexList sub = n;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
        EXPECT_TRUE(gens.count(sub));
      }
    }
  }
}

TEST(ContraFinder, TupleSetsSatisfyTheirInvariant) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto ctx = random_context(7, 7, 0.6, seed);
    ContraFinder(ctx).for_each_generator([&](const CharacterizingTupleSet& t) {
      for (std::size_t i = 0; i < t.generator.size(); ++i) {
        EXPECT_TRUE(t.classes[i].any());
        for_each_bit(t.classes[i], [&](std::size_t g) {
          EXPECT_FALSE(ctx.incident(g, t.generator[i]));
          for (std::size_t j = 0; j < t.generator.size(); ++j)
            if (j != i) EXPECT_TRUE(ctx.incident(g, t.generator[j]));
        });
      }
      return true;
    });
  }
}

TEST(ContraFinder, DeadlineStopsLongRuns) {
  auto ctx = make_contranominal(40);
  EXPECT_THROW(count_raw(ctx, 1, Deadline::after(std::chrono::milliseconds(20))), DeadlineExceeded);
}

TEST(BronKerbosch, SmallCases) {
  auto s = enumerate_bronkerbosch(make_contranominal(2));
  EXPECT_EQ(histogram_of(s), (std::map<std::size_t, std::uint64_t>{{1, 2}, {2, 1}}));
  EXPECT_TRUE(enumerate_bronkerbosch(context_from_rows({{1, 1}, {1, 1}})).empty());
}

// ---------------------------------------------------------------------------
// Reconstruction

TEST(Reconstruct, SingletonClassesAreIdentity) {
  auto ctx = make_contranominal(3);
  auto c = clarify(ctx);
  auto s = enumerate_contrafinder(ctx);
  EXPECT_EQ(scales_from_clarified(s, c.map), s);
}

TEST(Reconstruct, DuplicatedAttributeDoublesTouchingScales) {
  // N2 with attribute 1 duplicated as attribute 2
  auto ctx = context_from_rows({{0, 1, 1}, {1, 0, 0}});
  auto c = clarify(ctx);
  ASSERT_EQ(c.context.num_attributes(), 2u);
  auto rebuilt = scales_from_clarified(enumerate_contrafinder(c.context), c.map);
  EXPECT_EQ(rebuilt, brute_force_scales(ctx));
  EXPECT_EQ(histogram_of(rebuilt), (std::map<std::size_t, std::uint64_t>{{1, 3}, {2, 2}}));
}

TEST(Reconstruct, NoRemovedElementsIsIdentity) {
  auto ctx = make_contranominal(4);
  auto r = reduce(ctx);
  auto s = enumerate_contrafinder(ctx);
  EXPECT_EQ(scales_from_reduced(s, r.trace, ctx), s);
}

TEST(Reconstruct, IntersectionColumnRestored) {
  auto ctx = context_from_rows({{1, 1, 1}, {1, 0, 0}, {0, 1, 0}});
  auto r = reduce(ctx);
  auto rebuilt = scales_from_reduced(enumerate_contrafinder(r.context), r.trace, ctx);
  EXPECT_EQ(rebuilt, brute_force_scales(ctx));
  bool has_c = false;
  for (const auto& s : rebuilt)
    for (const auto& p : s.pairs) has_c |= p.attribute == 2;
  EXPECT_TRUE(has_c);
}

TEST(Reconstruct, MismatchedTraceIsRejected) {
  auto ctx = context_from_rows({{1, 1, 1}, {1, 0, 0}, {0, 1, 0}});
  auto r = reduce(ctx);
  EXPECT_THROW(scales_from_reduced({}, r.trace, make_contranominal(2)), ContextError);
  auto c = clarify(ctx);
  EXPECT_THROW(scales_from_clarified({ContranominalScale{{{9, 0}}}}, c.map), ContextError);
}

TEST(Reconstruct, RandomContextsWithRedundancy) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto ctx = inject_redundancy(random_context(4, 4, 0.55, seed), seed * 7 + 1, 4 + seed % 4, 4 + (seed / 4) % 4);
    EnumerationOptions opt;
    opt.preprocess = true;
    auto rebuilt = enumerate_contrafinder(ctx, opt);
    ASSERT_EQ(rebuilt, brute_force_scales(ctx)) << format_context(ctx, Format::cxt);
  }
}

TEST(Reconstruct, LatticeExample) {
  auto k = load_context_file(data_path("lattice_example.cxt"));
  EnumerationOptions opt;
  opt.preprocess = true;
  EXPECT_EQ(enumerate_contrafinder(k, opt), brute_force_scales(k));
}

// ---------------------------------------------------------------------------
// Cores

TEST(CorePruning, KeepsEveryLargeScale) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto ctx = random_context(4 + seed % 7, 4 + (seed * 3) % 7, 0.6, seed);
    for (std::size_t k : {2u, 3u, 4u}) {
      EnumerationOptions plain, cored;
      plain.min_dimension = cored.min_dimension = k;
      cored.use_core = true;
      ASSERT_EQ(enumerate_contrafinder(ctx, plain), enumerate_contrafinder(ctx, cored));
      ASSERT_EQ(count_contranominal_scales(ctx, plain), count_contranominal_scales(ctx, cored));
    }
  }
}

TEST(CorePruning, MinimumDimensionFilters) {
  auto ctx = random_context(8, 8, 0.6, 11);
  EnumerationOptions opt;
  opt.min_dimension = 3;
  opt.use_core = true;
  auto big = enumerate_contrafinder(ctx, opt);
  std::vector<ContranominalScale> expect;
  for (const auto& s : brute_force_scales(ctx))
    if (s.dimension() >= 3) expect.push_back(s);
  EXPECT_EQ(big, expect);
}

// ---------------------------------------------------------------------------
// Bipartite adapter

TEST(Bipartite, CompleteBipartiteHasOnlySingleEdges) {
  BipartiteGraph g{{"s1", "s2"}, {"t1", "t2"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
  auto ms = induced_matchings(g);
  EXPECT_EQ(ms.size(), 4u);
  for (const auto& m : ms) EXPECT_EQ(m.size(), 1u);
}

TEST(Bipartite, PerfectMatchingGivesAllSubMatchings) {
  for (std::size_t k = 1; k <= 4; ++k) {
    BipartiteGraph g;
    for (std::size_t i = 0; i < k; ++i) {
      g.left.push_back("s" + std::to_string(i));
      g.right.push_back("t" + std::to_string(i));
      g.edges.emplace_back(i, i);
    }
    auto ms = induced_matchings(g);
    EXPECT_EQ(ms.size(), (1u << k) - 1);
  }
}

TEST(Bipartite, NoEdgesNoMatchings) {
  BipartiteGraph g{{"s"}, {"t"}, {}};
  EXPECT_TRUE(induced_matchings(g).empty());
}

TEST(Bipartite, MatchesBruteForceOverEdgeSubsets) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto ctx = random_context(4, 4, 0.5, seed);
    auto g = to_bipartite(ctx);
    ASSERT_LE(g.edges.size(), 16u);
    std::set<EdgeSet> expect;
    for (std::uint32_t mask = 1; mask < (1u << g.edges.size()); ++mask) {
      EdgeSet e;
      for (std::size_t i = 0; i < g.edges.size(); ++i)
        if (mask >> i & 1) e.push_back(g.edges[i]);
      bool induced = true;
      for (std::size_t i = 0; i < e.size() && induced; ++i)
        for (std::size_t j = 0; j < e.size() && induced; ++j) {
          if (i == j) continue;
          if (e[i].first == e[j].first || e[i].second == e[j].second) induced = false;
          const auto cross = std::make_pair(e[i].first, e[j].second);
          if (std::find(g.edges.begin(), g.edges.end(), cross) != g.edges.end()) induced = false;
        }
      if (induced) expect.insert(e);
    }
    auto got = induced_matchings(g);
    EXPECT_EQ(std::set<EdgeSet>(got.begin(), got.end()), expect);
    EXPECT_EQ(got.size(), expect.size());
  }
}

TEST(Serialize, ScaleLineUsesLabels) {
  auto ctx = make_contranominal(2);
  EXPECT_EQ(scale_line(ctx, {{{0, 0}, {1, 1}}}), "dim=2; pairs=(1,1),(2,2)");
  EXPECT_EQ(scale_json(ctx, {{{1, 1}}}).dump(), R"({"dim":1,"pairs":[["2","2"]]})");
  EXPECT_EQ(histogram_json(count_contranominal_scales(make_contranominal(4))).dump(),
            R"({"histogram":{"1":4,"2":6,"3":4,"4":1},"total":15,"max_dimension":4})");
}
