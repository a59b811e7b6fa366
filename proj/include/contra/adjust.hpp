#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "contra/context.hpp"
#include "contra/preprocess.hpp"
#include "contra/scales.hpp"

namespace contra {

struct CubicSet {
  IndexList attributes;
  std::vector<Bits> witnesses;  // witnesses[i] = H(attributes[i])
  std::size_t dimension() const { return attributes.size(); }
};

enum class CubicSemantics {
  /// N carries a scale and no N u {x} does.
  maximal,
  /// N carries a scale and no N u {x} is itself cubic under this rule,
  /// evaluated from the largest sets down.
  alternating,
};

inline void require_preprocessed(const FormalContext& ctx) {
  if (!is_clarified(ctx) || !is_reduced(ctx))
    throw ContextError("influence needs a clarified and reduced context; run preprocess first");
}

/// All k-cubic attribute sets in ContraFinder order, from one enumeration pass.
inline std::vector<CubicSet> cubic_sets(const FormalContext& ctx, CubicSemantics sem = CubicSemantics::maximal) {
  require_preprocessed(ctx);
  std::vector<CubicSet> gens;
  ContraFinder finder(ctx);
  finder.for_each_generator([&](const CharacterizingTupleSet& t) {
    gens.push_back({t.generator, t.classes});
    return true;
  });

  std::map<IndexList, std::size_t> index;
  for (std::size_t i = 0; i < gens.size(); ++i) index.emplace(gens[i].attributes, i);

  auto extensions = [&](const IndexList& n, auto&& fn) {
    IndexList bigger;
    for (std::size_t x = 0; x < ctx.num_attributes(); ++x) {
      if (std::binary_search(n.begin(), n.end(), x)) continue;
      bigger = n;
      bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), x), x);
      if (auto it = index.find(bigger); it != index.end()) fn(it->second);
    }
  };

  std::vector<char> cubic(gens.size(), 0);
  if (sem == CubicSemantics::maximal) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      bool extendable = false;
      extensions(gens[i].attributes, [&](std::size_t) { extendable = true; });
      cubic[i] = !extendable;
    }
  } else {
    std::vector<std::size_t> order(gens.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return gens[a].dimension() > gens[b].dimension(); });
    for (auto i : order) {
      bool blocked = false;
      extensions(gens[i].attributes, [&](std::size_t j) { blocked = blocked || cubic[j]; });
      cubic[i] = !blocked;
    }
  }

  std::vector<CubicSet> out;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (cubic[i]) out.push_back(std::move(gens[i]));
  return out;
}

struct InfluenceReport {
  struct Row {
    std::map<std::size_t, std::uint64_t> cubic_counts;  // k -> number of k-cubic sets containing m
    double zeta = 0;
  };
  std::vector<Row> rows;  // one per attribute, in context order
};

inline double zeta_from_counts(const std::map<std::size_t, std::uint64_t>& counts) {
  double z = 0;
  for (auto [k, n] : counts) z += static_cast<double>(n) * std::ldexp(1.0, static_cast<int>(k)) / static_cast<double>(k);
  return z;
}

inline InfluenceReport influence(const FormalContext& ctx, CubicSemantics sem = CubicSemantics::maximal) {
  InfluenceReport r;
  r.rows.resize(ctx.num_attributes());
  for (const auto& c : cubic_sets(ctx, sem))
    for (auto m : c.attributes) ++r.rows[m].cubic_counts[c.dimension()];
  for (auto& row : r.rows) row.zeta = zeta_from_counts(row.cubic_counts);
  return r;
}

struct AdjustedSelection {
  double delta = 0;
  IndexList attributes;  // ascending
  InfluenceReport report;
};

/// ceil(delta * |M|), tolerant of products like 0.1 * 30 landing just above an integer.
inline std::size_t adjusted_size(double delta, std::size_t num_attributes) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in [0, 1]");
  const double want = std::ceil(delta * static_cast<double>(num_attributes) - 1e-9);
  return std::min(num_attributes, static_cast<std::size_t>(std::max(0.0, want)));
}

/// The ceil(delta |M|) attributes of smallest zeta; ties go to the lower index.
inline IndexList select_by_influence(const InfluenceReport& report, double delta) {
  const std::size_t n = adjusted_size(delta, report.rows.size());
  IndexList order(report.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return report.rows[a].zeta < report.rows[b].zeta; });
  order.resize(n);
  std::sort(order.begin(), order.end());
  return order;
}

inline AdjustedSelection delta_adjust(const FormalContext& ctx, double delta,
                                      CubicSemantics sem = CubicSemantics::maximal) {
  adjusted_size(delta, ctx.num_attributes());
  AdjustedSelection s{delta, {}, influence(ctx, sem)};
  s.attributes = select_by_influence(s.report, delta);
  return s;
}

/// K[G, N] for the chosen attributes.
inline FormalContext adjusted_context(const FormalContext& ctx, const AdjustedSelection& sel) {
  return apply_selection(ctx, SubcontextSelection::attributes_only(ctx, sel.attributes));
}

namespace detail {

inline std::vector<std::size_t> report_dimensions(const InfluenceReport& r) {
  std::set<std::size_t> ks;
  for (const auto& row : r.rows)
    for (auto [k, n] : row.cubic_counts) ks.insert(k);
  return {ks.begin(), ks.end()};
}

inline std::string one_decimal(double z) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << z;
  return s.str();
}

}  // namespace detail

/// Aligned text table: attribute, one count column per dimension, zeta, and a
/// '*' for attributes in `chosen`. Empty for a context without attributes.
inline std::string influence_table(const FormalContext& ctx, const InfluenceReport& r, const IndexList& chosen = {}) {
  if (ctx.num_attributes() == 0) return {};
  const auto ks = detail::report_dimensions(r);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{"attribute"};
  for (auto k : ks) head.push_back("k=" + std::to_string(k));
  head.push_back("zeta");
  head.push_back("chosen");
  cells.push_back(head);
  for (std::size_t m = 0; m < ctx.num_attributes(); ++m) {
    std::vector<std::string> line{ctx.attribute(m)};
    for (auto k : ks) {
      auto it = r.rows[m].cubic_counts.find(k);
      line.push_back(std::to_string(it == r.rows[m].cubic_counts.end() ? 0 : it->second));
    }
    line.push_back(detail::one_decimal(r.rows[m].zeta));
    line.push_back(std::binary_search(chosen.begin(), chosen.end(), m) ? "*" : "");
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  std::ostringstream out;
  for (const auto& line : cells) {
    std::string text;
    for (std::size_t c = 0; c < line.size(); ++c) {
      std::string cell = line[c];
      if (c == 0) cell.resize(width[c], ' ');
      else cell = std::string(width[c] - cell.size(), ' ') + cell;
      text += (c ? "  " : "") + cell;
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  }
  return out.str();
}

}  // namespace contra
