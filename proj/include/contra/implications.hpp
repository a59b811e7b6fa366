#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "contra/context.hpp"
#include "contra/lattice.hpp"

namespace contra {

struct Implication {
  Bits premise;
  Bits conclusion;
  bool operator==(const Implication&) const = default;
};

using ImplicationBase = std::vector<Implication>;

/// Every object having all of the premise has all of the conclusion (X' ⊆ Y').
inline bool is_valid_implication(const FormalContext& ctx, const Implication& imp) {
  return ctx.derive_objects(imp.premise).is_subset_of(ctx.derive_objects(imp.conclusion));
}

/// Smallest superset of x respected by every implication.
inline Bits implication_closure(const ImplicationBase& base, Bits x) {
  std::vector<bool> used(base.size(), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (used[i] || !base[i].premise.is_subset_of(x)) continue;
      used[i] = true;
      if (!base[i].conclusion.is_subset_of(x)) {
        x |= base[i].conclusion;
        changed = true;
      }
    }
  }
  return x;
}

namespace detail {

// Closure that applies an implication only when its premise is a proper
// subset; its fixpoints are the intents and the pseudo-intents.
inline Bits pseudo_closure(const ImplicationBase& base, Bits x) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& imp : base)
      if (imp.premise.is_proper_subset_of(x) && !imp.conclusion.is_subset_of(x)) {
        x |= imp.conclusion;
        changed = true;
      }
  }
  return x;
}

}  // namespace detail

/// Duquenne–Guigues base. Conclusions are P'' \ P; premises sorted as
/// ascending index lists, lexicographically.
inline ImplicationBase canonical_base(const FormalContext& ctx) {
  ImplicationBase base;
  Bits a(ctx.num_attributes());
  for (;;) {
    Bits closed = ctx.attribute_closure(a);
    if (closed != a) base.push_back({a, closed - a});
    if (!detail::next_closed(a, [&](const Bits& x) { return detail::pseudo_closure(base, x); })) break;
  }
  std::sort(base.begin(), base.end(), [](const Implication& l, const Implication& r) {
    return to_indices(l.premise) < to_indices(r.premise);
  });
  return base;
}

/// Rewrites a base of K into a sound and complete (not necessarily minimal)
/// set of implications for K without attribute m. Bit widths are unchanged;
/// m simply no longer occurs.
///
/// Every A -> B with m in A is dropped and paired with each C -> D deriving m:
/// if C u D already covers A \ {m}, B is merged into that conclusion,
/// otherwise C u (A \ {m}) -> B is added. Then m is removed from all
/// conclusions and empty conclusions are dropped.
inline ImplicationBase restrict_base_on_removal(const ImplicationBase& base, std::size_t m) {
  std::vector<const Implication*> with_m;
  for (const auto& imp : base) {
    if (m >= imp.premise.size()) throw std::out_of_range("attribute index out of range");
    if (imp.premise.test(m)) with_m.push_back(&imp);
  }
  ImplicationBase out, extra;
  for (const auto& imp : base) {
    if (imp.premise.test(m)) continue;
    Implication next = imp;
    if (imp.conclusion.test(m)) {
      const Bits known = imp.premise | imp.conclusion;
      for (const auto* ab : with_m) {
        Bits rest = ab->premise;
        rest.reset(m);
        if (rest.is_subset_of(known)) {
          next.conclusion |= ab->conclusion;
        } else {
          Bits premise = imp.premise | rest;
          Bits conclusion = ab->conclusion - premise;
          conclusion.reset(m);
          if (conclusion.any()) extra.push_back({std::move(premise), std::move(conclusion)});
        }
      }
    }
    next.conclusion.reset(m);
    next.conclusion -= next.premise;
    if (next.conclusion.any()) out.push_back(std::move(next));
  }
  out.insert(out.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
  return out;
}

/// Re-indexes implications of a width-`width` context onto the attributes
/// `kept` (sorted). Implications that mention any other attribute are rejected.
inline ImplicationBase project_base(const ImplicationBase& base, const IndexList& kept, std::size_t width) {
  ImplicationBase out;
  auto project = [&](const Bits& b) {
    Bits r(kept.size());
    std::size_t covered = 0;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (b.test(kept[j])) {
        r.set(j);
        ++covered;
      }
    if (covered != b.count()) throw std::invalid_argument("implication uses an attribute outside the selection");
    return r;
  };
  for (const auto& imp : base) {
    if (imp.premise.size() != width) throw std::invalid_argument("implication width mismatch");
    out.push_back({project(imp.premise), project(imp.conclusion)});
  }
  return out;
}

}  // namespace contra
