#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "contra/context.hpp"

namespace contra {

struct FormalConcept {
  Bits extent;
  Bits intent;
  bool operator==(const FormalConcept&) const = default;
};

/// Concepts sorted by intent as ascending index lists, compared lexicographically.
using ConceptSet = std::vector<FormalConcept>;

inline bool is_concept_of(const FormalContext& ctx, const FormalConcept& c) {
  return c.extent.size() == ctx.num_objects() && c.intent.size() == ctx.num_attributes() &&
         ctx.derive_attributes(c.extent) == c.intent && ctx.derive_objects(c.intent) == c.extent;
}

namespace detail {

inline bool intent_less(const FormalConcept& a, const FormalConcept& b) {
  return to_indices(a.intent) < to_indices(b.intent);
}

// Next closed set after `current` in lectic order for the given closure, or
// false when `current` is the last one. Attribute 0 is the most significant.
template <class Closure>
bool next_closed(Bits& current, Closure&& close) {
  const std::size_t n = current.size();
  Bits a = current;
  for (std::size_t i = n; i-- > 0;) {
    if (a.test(i)) {
      a.reset(i);
      continue;
    }
    Bits b = a;
    b.set(i);
    b = close(b);
    // b must add nothing below i
    bool ok = true;
    for (auto j = b.find_first(); j != Bits::npos && j < i; j = b.find_next(j))
      if (!a.test(j)) {
        ok = false;
        break;
      }
    if (ok) {
      current = std::move(b);
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Calls fn(extent, intent) for every concept, intents in lectic order.
template <class Fn>
void for_each_concept(const FormalContext& ctx, Fn&& fn) {
  auto close = [&](const Bits& b) { return ctx.attribute_closure(b); };
  Bits intent = close(Bits(ctx.num_attributes()));
  do {
    const Bits extent = ctx.derive_objects(intent);
    fn(extent, std::as_const(intent));
  } while (detail::next_closed(intent, close));
}

inline ConceptSet enumerate_concepts(const FormalContext& ctx) {
  ConceptSet out;
  for_each_concept(ctx, [&](const Bits& e, const Bits& i) { out.push_back({e, i}); });
  std::sort(out.begin(), out.end(), detail::intent_less);
  return out;
}

inline std::size_t count_concepts(const FormalContext& ctx) {
  std::size_t n = 0;
  for_each_concept(ctx, [&](const Bits&, const Bits&) { ++n; });
  return n;
}

inline FormalConcept top_concept(const FormalContext& ctx) {
  return {ctx.all_objects(), ctx.derive_attributes(ctx.all_objects())};
}

inline FormalConcept meet(const FormalContext& ctx, const FormalConcept& a, const FormalConcept& b) {
  if (!is_concept_of(ctx, a) || !is_concept_of(ctx, b)) throw std::invalid_argument("not a concept of this context");
  Bits e = a.extent & b.extent;
  Bits i = ctx.derive_attributes(e);
  return {std::move(e), std::move(i)};
}

/// (m', m'')
inline FormalConcept attribute_concept(const FormalContext& ctx, std::size_t m) {
  if (m >= ctx.num_attributes()) throw std::out_of_range("attribute index out of range");
  const Bits& e = ctx.extent(m);
  return {e, ctx.derive_attributes(e)};
}

/// Smallest meet-closed set containing the top concept and the attribute
/// concepts of `attrs`.
inline ConceptSet generated_sub_meet_semilattice(const FormalContext& ctx, const IndexList& attrs) {
  std::set<Bits> extents{ctx.all_objects()};
  for (auto m : attrs) {
    if (m >= ctx.num_attributes()) throw std::out_of_range("attribute index out of range");
    extents.insert(ctx.extent(m));
  }
  // Closing under pairwise intersection of the generators suffices: every
  // meet is an intersection of generator extents.
  std::vector<Bits> frontier(extents.begin(), extents.end());
  const std::vector<Bits> gens = frontier;
  while (!frontier.empty()) {
    std::vector<Bits> fresh;
    for (const auto& f : frontier)
      for (const auto& g : gens) {
        Bits x = f & g;
        if (extents.insert(x).second) fresh.push_back(std::move(x));
      }
    frontier = std::move(fresh);
  }
  ConceptSet out;
  for (const auto& e : extents) out.push_back({e, ctx.derive_attributes(e)});
  std::sort(out.begin(), out.end(), detail::intent_less);
  return out;
}

/// Whether s, ordered by extent inclusion, is isomorphic to the powerset of a
/// k-set. Throws if s is not closed under meets.
inline bool is_boolean_suborder(const ConceptSet& s, std::size_t k) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      Bits e = s[i].extent & s[j].extent;
      if (std::none_of(s.begin(), s.end(), [&](const FormalConcept& c) { return c.extent == e; }))
        throw std::invalid_argument("concept set is not closed under meets");
    }
  if (k >= 32 || s.size() != (std::size_t{1} << k)) return false;
  // bottom: the extent contained in every other one
  std::size_t bottom = s.size();
  for (std::size_t i = 0; i < s.size() && bottom == s.size(); ++i)
    if (std::all_of(s.begin(), s.end(), [&](const FormalConcept& c) { return s[i].extent.is_subset_of(c.extent); }))
      bottom = i;
  if (bottom == s.size()) return false;
  auto below = [&](std::size_t a, std::size_t b) {
    return a != b && s[a].extent.is_proper_subset_of(s[b].extent);
  };
  IndexList atoms;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!below(bottom, i)) continue;
    bool covers = true;
    for (std::size_t j = 0; j < s.size() && covers; ++j)
      if (below(bottom, j) && below(j, i)) covers = false;
    if (covers) atoms.push_back(i);
  }
  if (atoms.size() != k) return false;
  std::vector<std::uint32_t> mask(s.size(), 0);
  std::vector<bool> seen(s.size(), false);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t a = 0; a < k; ++a)
      if (s[atoms[a]].extent.is_subset_of(s[i].extent)) mask[i] |= std::uint32_t{1} << a;
    if (seen[mask[i]]) return false;
    seen[mask[i]] = true;
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) {
      const bool le = s[i].extent.is_subset_of(s[j].extent);
      const bool mask_le = (mask[i] & ~mask[j]) == 0;
      if (le != mask_le) return false;
    }
  return true;
}

}  // namespace contra
