#pragma once

// Independent reference implementations used as test oracles. They work on
// plain vectors and recompute everything from the incidence, sharing no code
// with the library beyond FormalContext accessors.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "contra/contra.hpp"

#ifndef CONTRA_DATA_DIR
#define CONTRA_DATA_DIR "data"
#endif

namespace testing_support {

using contra::Bits;
using contra::ContranominalScale;
using contra::FormalContext;
using contra::IndexList;

inline std::string data_path(const std::string& name) { return std::string(CONTRA_DATA_DIR) + "/" + name; }

inline FormalContext random_context(std::size_t n, std::size_t m, double density, std::uint64_t seed) {
  contra::Rng rng(seed);
  std::vector<std::vector<int>> cells(n, std::vector<int>(m));
  for (auto& row : cells)
    for (auto& c : row) c = static_cast<double>(rng.below(1000000)) < density * 1000000.0;
  return contra::context_from_rows(cells);
}

inline std::vector<std::vector<int>> cells_of(const FormalContext& ctx) {
  std::vector<std::vector<int>> cells(ctx.num_objects(), std::vector<int>(ctx.num_attributes()));
  for (std::size_t g = 0; g < ctx.num_objects(); ++g)
    for (std::size_t m = 0; m < ctx.num_attributes(); ++m) cells[g][m] = ctx.incident(g, m);
  return cells;
}

/// Adds copies of random rows and columns, and columns/rows that are
/// intersections of two existing ones, so clarification and reduction have
/// work to do.
inline FormalContext inject_redundancy(const FormalContext& ctx, std::uint64_t seed, std::size_t max_n,
                                       std::size_t max_m) {
  contra::Rng rng(seed);
  auto cells = cells_of(ctx);
  std::size_t n = cells.size(), m = n ? cells[0].size() : 0;
  if (n == 0 || m == 0) return ctx;
  auto add_column = [&](std::vector<int> col) {
    for (std::size_t g = 0; g < n; ++g) cells[g].push_back(col[g]);
    ++m;
  };
  while (m < max_m) {
    std::vector<int> col(n);
    const auto a = rng.below(m), b = rng.below(m);
    const bool dup = rng.below(2) == 0;
    for (std::size_t g = 0; g < n; ++g) col[g] = dup ? cells[g][a] : (cells[g][a] && cells[g][b]);
    add_column(col);
  }
  while (n < max_n) {
    std::vector<int> row(m);
    const auto a = rng.below(n), b = rng.below(n);
    const bool dup = rng.below(2) == 0;
    for (std::size_t x = 0; x < m; ++x) row[x] = dup ? cells[a][x] : (cells[a][x] && cells[b][x]);
    cells.push_back(row);
    ++n;
  }
  return contra::context_from_rows(cells);
}

/// Every scale by testing object/attribute assignments directly: attributes
/// are taken in increasing order and each gets a fresh object; an assignment
/// is kept while every pair so far satisfies the incidence pattern.
inline std::vector<ContranominalScale> brute_force_scales(const FormalContext& ctx) {
  const std::size_t n = ctx.num_objects(), m = ctx.num_attributes();
  auto cells = cells_of(ctx);
  std::vector<ContranominalScale> out;
  std::vector<std::pair<std::size_t, std::size_t>> cur;  // (object, attribute)
  std::vector<bool> used(n, false);
  auto consistent = [&](std::size_t g, std::size_t a) {
    if (cells[g][a]) return false;
    for (auto [h, b] : cur)
      if (!cells[g][b] || !cells[h][a]) return false;
    return true;
  };
  auto rec = [&](auto&& self, std::size_t next_attr) -> void {
    for (std::size_t a = next_attr; a < m; ++a)
      for (std::size_t g = 0; g < n; ++g) {
        if (used[g] || !consistent(g, a)) continue;
        cur.emplace_back(g, a);
        used[g] = true;
        ContranominalScale s;
        for (auto [h, b] : cur) s.pairs.push_back({h, b});
        out.push_back(std::move(s));
        self(self, a + 1);
        used[g] = false;
        cur.pop_back();
      }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::map<std::size_t, std::uint64_t> histogram_of(const std::vector<ContranominalScale>& scales) {
  std::map<std::size_t, std::uint64_t> h;
  for (const auto& s : scales) ++h[s.dimension()];
  return h;
}

inline std::vector<ContranominalScale> sorted(std::vector<ContranominalScale> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline IndexList bits_to_list(const Bits& b) {
  IndexList out;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.test(i)) out.push_back(i);
  return out;
}

// Attribute sets below are bit masks; contexts stay under 32 attributes.
inline std::uint32_t attr_mask(const FormalContext& ctx) { return (1u << ctx.num_attributes()) - 1; }

/// Objects having every attribute of `attrs` (bitmask over attributes).
inline std::vector<std::size_t> objects_with(const FormalContext& ctx, std::uint32_t attrs) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < ctx.num_objects(); ++g) {
    bool all = true;
    for (std::size_t a = 0; a < ctx.num_attributes() && all; ++a)
      if ((attrs >> a & 1) && !ctx.incident(g, a)) all = false;
    if (all) out.push_back(g);
  }
  return out;
}

/// B'' as a bitmask.
inline std::uint32_t closure_mask(const FormalContext& ctx, std::uint32_t attrs) {
  std::uint32_t c = attr_mask(ctx);
  for (auto g : objects_with(ctx, attrs))
    for (std::size_t a = 0; a < ctx.num_attributes(); ++a)
      if (!ctx.incident(g, a)) c &= ~(1u << a);
  return c;
}

/// All intents, by closing every attribute subset.
inline std::set<std::uint32_t> brute_force_intents(const FormalContext& ctx) {
  std::set<std::uint32_t> out;
  for (std::uint32_t b = 0; b <= attr_mask(ctx); ++b) {
    if (closure_mask(ctx, b) == b) out.insert(b);
    if (b == attr_mask(ctx)) break;
  }
  return out;
}

/// Pseudo-intents straight from the definition: P is not closed and contains
/// the closure of every pseudo-intent properly inside it. Checked by size.
inline std::vector<std::uint32_t> brute_force_pseudo_intents(const FormalContext& ctx) {
  const std::uint32_t full = attr_mask(ctx);
  std::vector<std::uint32_t> subsets;
  for (std::uint32_t b = 0;; ++b) {
    subsets.push_back(b);
    if (b == full) break;
  }
  std::stable_sort(subsets.begin(), subsets.end(),
                   [](std::uint32_t a, std::uint32_t b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  std::vector<std::uint32_t> pseudo;
  for (auto p : subsets) {
    if (closure_mask(ctx, p) == p) continue;
    bool ok = true;
    for (auto q : pseudo)
      if ((q & p) == q && q != p && (closure_mask(ctx, q) & ~p) != 0) ok = false;
    if (ok) pseudo.push_back(p);
  }
  return pseudo;
}

inline std::uint32_t to_mask(const Bits& b) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.test(i)) m |= 1u << i;
  return m;
}

inline Bits from_mask(std::uint32_t m, std::size_t width) {
  Bits b(width);
  for (std::size_t i = 0; i < width; ++i)
    if (m >> i & 1) b.set(i);
  return b;
}

/// Closure of a mask under a list of (premise, conclusion) masks.
inline std::uint32_t closure_under(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& imps, std::uint32_t x) {
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [p, c] : imps)
      if ((p & x) == p && (c & ~x)) {
        x |= c;
        changed = true;
      }
  }
  return x;
}

inline std::vector<std::pair<std::uint32_t, std::uint32_t>> masks_of(const contra::ImplicationBase& base) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& imp : base) out.emplace_back(to_mask(imp.premise), to_mask(imp.conclusion));
  return out;
}

/// Attribute subsets of size <= k over m attributes, as masks.
inline std::vector<std::uint32_t> small_subsets(std::size_t m, std::size_t k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t b = 0; b < (1u << m); ++b)
    if (static_cast<std::size_t>(__builtin_popcount(b)) <= k) out.push_back(b);
  return out;
}

inline IndexList mask_to_list(std::uint32_t m) {
  IndexList out;
  for (std::size_t i = 0; i < 32; ++i)
    if (m >> i & 1) out.push_back(i);
  return out;
}

/// Cubic sets under maximal semantics from the brute-force scale list:
/// attribute sets carrying a scale with no one-larger superset carrying one.
inline std::set<IndexList> brute_force_cubic(const FormalContext& ctx) {
  std::set<IndexList> carriers;
  for (const auto& s : brute_force_scales(ctx)) carriers.insert(s.attributes());
  std::set<IndexList> out;
  for (const auto& n : carriers) {
    bool maximal = true;
    for (std::size_t x = 0; x < ctx.num_attributes() && maximal; ++x) {
      if (std::find(n.begin(), n.end(), x) != n.end()) continue;
      IndexList bigger = n;
      bigger.push_back(x);
      std::sort(bigger.begin(), bigger.end());
      if (carriers.count(bigger)) maximal = false;
    }
    if (maximal) out.insert(n);
  }
  return out;
}

/// Reference influence table for the diagnosis fixture, attributes a..o:
/// counts of 2-, 3- and 4-cubic sets containing the attribute, then zeta.
struct InfluenceRow {
  std::uint64_t k2, k3, k4;
  double zeta;
};

inline const std::vector<InfluenceRow>& diagnosis_influence() {
  static const std::vector<InfluenceRow> rows{
      {1, 22, 6, 84.7}, {1, 29, 0, 79.3}, {1, 31, 9, 120.7}, {2, 19, 0, 54.7}, {0, 16, 3, 54.7},
      {1, 31, 0, 84.7}, {2, 24, 5, 88.0}, {1, 18, 5, 70.0},  {3, 16, 0, 48.7}, {1, 19, 1, 56.7},
      {1, 33, 0, 90.0}, {3, 17, 0, 51.3}, {0, 21, 7, 84.0},  {2, 23, 3, 77.3}, {1, 26, 1, 75.3}};
  return rows;
}

inline FormalContext diagnosis() { return contra::load_context_file(data_path("diagnosis_reduced.cxt")); }

// diagnosis attributes are lettered a..o in file order
inline IndexList letters(const std::string& s) {
  IndexList out;
  for (char c : s) out.push_back(static_cast<std::size_t>(c - 'a'));
  return out;
}

/// Clarify and reduce until nothing changes.
inline FormalContext preprocessed(const FormalContext& ctx) {
  return contra::reduce(contra::clarify(ctx).context).context;
}

}  // namespace testing_support
