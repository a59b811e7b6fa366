#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "contra/adjust.hpp"
#include "contra/bench.hpp"
#include "contra/implications.hpp"
#include "contra/io.hpp"
#include "contra/lattice.hpp"
#include "contra/preprocess.hpp"
#include "contra/scales.hpp"

namespace contra {

using Json = nlohmann::ordered_json;

inline Json object_labels(const FormalContext& ctx, const IndexList& idx) {
  Json a = Json::array();
  for (auto g : idx) a.push_back(ctx.object(g));
  return a;
}
inline Json attribute_labels(const FormalContext& ctx, const IndexList& idx) {
  Json a = Json::array();
  for (auto m : idx) a.push_back(ctx.attribute(m));
  return a;
}

/// "dim=2; pairs=(g1,a),(g3,c)"
inline std::string scale_line(const FormalContext& ctx, const ContranominalScale& s) {
  std::string out = "dim=" + std::to_string(s.dimension()) + "; pairs=";
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    if (i) out += ',';
    out += '(' + ctx.object(s.pairs[i].object) + ',' + ctx.attribute(s.pairs[i].attribute) + ')';
  }
  return out;
}

inline Json scale_json(const FormalContext& ctx, const ContranominalScale& s) {
  Json pairs = Json::array();
  for (const auto& p : s.pairs) pairs.push_back({ctx.object(p.object), ctx.attribute(p.attribute)});
  return {{"dim", s.dimension()}, {"pairs", std::move(pairs)}};
}

inline Json histogram_json(const ScaleHistogram& h) {
  Json hist = Json::object();
  for (auto [k, n] : h.by_dimension) hist[std::to_string(k)] = n;
  return {{"histogram", std::move(hist)}, {"total", h.total()}, {"max_dimension", h.max_dimension()}};
}

inline Json concept_json(const FormalContext& ctx, const FormalConcept& c) {
  return {{"extent", object_labels(ctx, to_indices(c.extent))}, {"intent", attribute_labels(ctx, to_indices(c.intent))}};
}

/// "a, b -> c, d"
inline std::string implication_line(const FormalContext& ctx, const Implication& imp) {
  auto join = [&](const Bits& b) {
    std::string s;
    for_each_bit(b, [&](std::size_t m) {
      if (!s.empty()) s += ", ";
      s += ctx.attribute(m);
    });
    return s;
  };
  const std::string p = join(imp.premise);
  return (p.empty() ? "" : p + " ") + "-> " + join(imp.conclusion);
}

inline Json implication_json(const FormalContext& ctx, const Implication& imp) {
  return {{"premise", attribute_labels(ctx, to_indices(imp.premise))},
          {"conclusion", attribute_labels(ctx, to_indices(imp.conclusion))}};
}

inline Json clarification_json(const FormalContext& original, const ClarificationMap& map) {
  Json objs = Json::array(), attrs = Json::array();
  for (const auto& c : map.object_classes)
    if (c.size() > 1) objs.push_back(object_labels(original, c));
  for (const auto& c : map.attribute_classes)
    if (c.size() > 1) attrs.push_back(attribute_labels(original, c));
  return {{"merged_objects", std::move(objs)}, {"merged_attributes", std::move(attrs)}};
}

inline Json reduction_json(const FormalContext& clarified, const ReductionTrace& t) {
  Json attrs = Json::array(), objs = Json::array();
  for (const auto& r : t.removed_attributes)
    attrs.push_back({{"label", clarified.attribute(r.index)}, {"omega", attribute_labels(clarified, r.omega)}});
  for (const auto& r : t.removed_objects)
    objs.push_back({{"label", clarified.object(r.index)}, {"omega", object_labels(clarified, r.omega)}});
  return {{"removed_attributes", std::move(attrs)}, {"removed_objects", std::move(objs)}};
}

inline Json influence_json(const FormalContext& ctx, const InfluenceReport& r) {
  Json rows = Json::array();
  for (std::size_t m = 0; m < r.rows.size(); ++m) {
    Json counts = Json::object();
    for (auto [k, n] : r.rows[m].cubic_counts) counts[std::to_string(k)] = n;
    rows.push_back({{"label", ctx.attribute(m)}, {"counts", std::move(counts)}, {"zeta", r.rows[m].zeta}});
  }
  return rows;
}

inline std::string influence_csv(const FormalContext& ctx, const InfluenceReport& r, const IndexList& chosen) {
  const auto ks = detail::report_dimensions(r);
  std::ostringstream out;
  out << "attribute";
  for (auto k : ks) out << ",k=" << k;
  out << ",zeta,chosen\n";
  for (std::size_t m = 0; m < r.rows.size(); ++m) {
    out << detail::csv_field(ctx.attribute(m));
    for (auto k : ks) {
      auto it = r.rows[m].cubic_counts.find(k);
      out << ',' << (it == r.rows[m].cubic_counts.end() ? 0 : it->second);
    }
    out << ',' << detail::one_decimal(r.rows[m].zeta) << ','
        << (std::binary_search(chosen.begin(), chosen.end(), m) ? 1 : 0) << '\n';
  }
  return out.str();
}

inline Json selection_json(const FormalContext& ctx, double delta, const IndexList& chosen) {
  IndexList excluded;
  for (std::size_t m = 0; m < ctx.num_attributes(); ++m)
    if (!std::binary_search(chosen.begin(), chosen.end(), m)) excluded.push_back(m);
  return {{"delta", delta}, {"chosen", attribute_labels(ctx, chosen)}, {"excluded", attribute_labels(ctx, excluded)}};
}

inline Json experiment_json(const FormalContext& ctx, const ExperimentResult& r, bool with_log = true) {
  const auto& c = r.config;
  Json out = {{"method", method_name(c.method)},
              {"config",
               {{"delta", c.delta}, {"repetitions", c.repetitions}, {"split", c.split_fraction}, {"seed", c.seed}}},
              {"mean_accuracy", r.mean_accuracy},
              {"std_accuracy", r.std_accuracy}};
  if (with_log) {
    Json log = Json::array();
    for (const auto& rep : r.repetitions)
      log.push_back({{"rep", rep.index},
                     {"label", ctx.attribute(rep.label)},
                     {"features", rep.features.size()},
                     {"accuracy", rep.accuracy}});
    out["repetitions"] = std::move(log);
  }
  return out;
}

inline Json structure_json(const StructureResult& s) {
  return {{"delta", s.delta},
          {"attributes", {{"original", s.attributes_original}, {"adjusted", s.attributes_adjusted}}},
          {"concepts",
           {{"original", s.concepts_original}, {"adjusted", s.concepts_adjusted}, {"sampled_mean", s.concepts_sampled_mean}}},
          {"canonical_base",
           {{"original", s.base_original}, {"adjusted", s.base_adjusted}, {"sampled_mean", s.base_sampled_mean}}},
          {"sampled_runs", s.sampled_runs}};
}

inline Json timing_json(const TimingReport& t) {
  Json out = Json::object();
  for (const auto& e : t.entries) {
    Json entry = {{"seconds", e.seconds}, {"finished", e.finished}};
    if (e.finished) {
      entry["count"] = e.count;
      entry["max_dim"] = e.max_dimension;
    }
    out[algorithm_name(e.algorithm)] = std::move(entry);
  }
  out["consistent"] = t.consistent;
  return out;
}

}  // namespace contra
