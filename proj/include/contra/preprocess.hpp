#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

#include "contra/context.hpp"

namespace contra {

/// Duplicate-row and duplicate-column classes of a context. Class i corresponds
/// to index i of the clarified context; every class is sorted and its first
/// member (the lowest original index) is the representative kept.
struct ClarificationMap {
  std::size_t original_objects = 0;
  std::size_t original_attributes = 0;
  std::vector<IndexList> object_classes;
  std::vector<IndexList> attribute_classes;

  bool trivial() const {
    return object_classes.size() == original_objects && attribute_classes.size() == original_attributes;
  }
};

struct Clarified {
  FormalContext context;
  ClarificationMap map;
};

/// One removed element and the irreducible elements whose derivations
/// intersect to its own. Indices refer to the context given to reduce().
struct RemovedElement {
  std::size_t index = 0;
  IndexList omega;
  bool operator==(const RemovedElement&) const = default;
};

struct ReductionTrace {
  std::size_t input_objects = 0;
  std::size_t input_attributes = 0;
  IndexList kept_objects;
  IndexList kept_attributes;
  std::vector<RemovedElement> removed_attributes;
  std::vector<RemovedElement> removed_objects;

  bool trivial() const { return removed_attributes.empty() && removed_objects.empty(); }
};

struct Reduced {
  FormalContext context;
  ReductionTrace trace;
};

namespace detail {

// Groups equal bitsets; classes come out ordered by their lowest member.
inline std::vector<IndexList> equal_classes(const std::vector<Bits>& items) {
  std::map<Bits, std::size_t> first;
  std::vector<IndexList> classes;
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto [it, fresh] = first.try_emplace(items[i], classes.size());
    if (fresh) classes.push_back({i});
    else classes[it->second].push_back(i);
  }
  return classes;
}

// Whether item i is the intersection of all strictly larger items. Assumes the
// family has no duplicates; the empty intersection is the full universe.
inline bool is_reducible_in(const std::vector<Bits>& items, std::size_t i, std::size_t universe) {
  Bits meet = full_bits(universe);
  for (std::size_t j = 0; j < items.size(); ++j)
    if (j != i && items[i].is_proper_subset_of(items[j])) meet &= items[j];
  return meet == items[i];
}

inline void reduce_side(const std::vector<Bits>& items, std::size_t universe, IndexList& kept,
                        std::vector<RemovedElement>& removed) {
  std::vector<bool> reducible(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) reducible[i] = is_reducible_in(items, i, universe);
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!reducible[i]) {
      kept.push_back(i);
      continue;
    }
    RemovedElement r{i, {}};
    Bits meet = full_bits(universe);
    for (std::size_t j = 0; j < items.size(); ++j)
      if (!reducible[j] && items[i].is_subset_of(items[j])) {
        r.omega.push_back(j);
        meet &= items[j];
      }
    if (meet != items[i]) throw std::logic_error("omega set does not reproduce the removed derivation");
    removed.push_back(std::move(r));
  }
}

}  // namespace detail

inline bool is_clarified(const FormalContext& ctx) {
  return detail::equal_classes(ctx.rows()).size() == ctx.num_objects() &&
         detail::equal_classes(ctx.columns()).size() == ctx.num_attributes();
}

/// Whether no attribute or object derivation is an intersection of others.
/// Only meaningful on clarified contexts.
inline bool is_reduced(const FormalContext& ctx) {
  for (std::size_t m = 0; m < ctx.num_attributes(); ++m)
    if (detail::is_reducible_in(ctx.columns(), m, ctx.num_objects())) return false;
  for (std::size_t g = 0; g < ctx.num_objects(); ++g)
    if (detail::is_reducible_in(ctx.rows(), g, ctx.num_attributes())) return false;
  return true;
}

inline Clarified clarify(const FormalContext& ctx) {
  ClarificationMap map{ctx.num_objects(), ctx.num_attributes(), detail::equal_classes(ctx.rows()),
                       detail::equal_classes(ctx.columns())};
  IndexList objs, attrs;
  for (const auto& c : map.object_classes) objs.push_back(c.front());
  for (const auto& c : map.attribute_classes) attrs.push_back(c.front());
  auto sel = SubcontextSelection::of(ctx, objs, attrs);
  return {apply_selection(ctx, sel), std::move(map)};
}

/// Rows of the original context rebuilt from a clarified one, in original order.
inline std::vector<Bits> expand_clarified(const FormalContext& clarified, const ClarificationMap& map) {
  if (clarified.num_objects() != map.object_classes.size() ||
      clarified.num_attributes() != map.attribute_classes.size())
    throw ContextError("clarification map does not match context");
  std::vector<Bits> rows(map.original_objects, Bits(map.original_attributes));
  for (std::size_t g = 0; g < map.object_classes.size(); ++g)
    for (auto og : map.object_classes[g])
      for (std::size_t m = 0; m < map.attribute_classes.size(); ++m)
        if (clarified.incident(g, m))
          for (auto om : map.attribute_classes[m]) rows[og].set(om);
  return rows;
}

/// Removes every reducible attribute and object of a clarified context.
inline Reduced reduce(const FormalContext& ctx) {
  if (!is_clarified(ctx)) throw ContextError("context is not clarified; clarify it before reducing");
  ReductionTrace trace;
  trace.input_objects = ctx.num_objects();
  trace.input_attributes = ctx.num_attributes();
  detail::reduce_side(ctx.columns(), ctx.num_objects(), trace.kept_attributes, trace.removed_attributes);
  detail::reduce_side(ctx.rows(), ctx.num_attributes(), trace.kept_objects, trace.removed_objects);
  auto sel = SubcontextSelection::of(ctx, trace.kept_objects, trace.kept_attributes);
  return {apply_selection(ctx, sel), std::move(trace)};
}

/// The unique maximal K[H,N] where each object has at least p attributes in N
/// and each attribute at least q objects in H, by peeling to a fixpoint.
inline SubcontextSelection pq_core(const FormalContext& ctx, std::size_t p, std::size_t q) {
  Bits objs = ctx.all_objects();
  Bits attrs = ctx.all_attributes();
  for (bool changed = true; changed;) {
    changed = false;
    for_each_bit(objs, [&](std::size_t g) {
      if ((ctx.intent(g) & attrs).count() < p) {
        objs.reset(g);
        changed = true;
      }
    });
    for_each_bit(attrs, [&](std::size_t m) {
      if ((ctx.extent(m) & objs).count() < q) {
        attrs.reset(m);
        changed = true;
      }
    });
  }
  return SubcontextSelection::of(ctx, to_indices(objs), to_indices(attrs));
}

}  // namespace contra
