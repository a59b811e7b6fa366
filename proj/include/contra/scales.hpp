#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "contra/context.hpp"
#include "contra/preprocess.hpp"

namespace contra {

struct ScalePair {
  std::size_t object = 0;
  std::size_t attribute = 0;
  auto operator<=>(const ScalePair&) const = default;
};

/// Objects g_1..g_k and attributes m_1..m_k with (g_i, m_j) incident iff i != j.
/// Pairs are sorted by attribute index; g_i is the single non-incident object of m_i.
struct ContranominalScale {
  std::vector<ScalePair> pairs;

  std::size_t dimension() const { return pairs.size(); }

  IndexList objects() const {
    IndexList out;
    for (const auto& p : pairs) out.push_back(p.object);
    return out;
  }
  IndexList attributes() const {
    IndexList out;
    for (const auto& p : pairs) out.push_back(p.attribute);
    return out;
  }

  bool operator==(const ContranominalScale&) const = default;

  /// Canonical order: attribute sequences lexicographically (a prefix sorts
  /// first), then object sequences. This is the order ContraFinder emits in.
  std::strong_ordering operator<=>(const ContranominalScale& o) const {
    auto la = attributes(), ra = o.attributes();
    if (auto c = la <=> ra; c != 0) return c;
    return objects() <=> o.objects();
  }
};

/// Builds a scale from unordered pairs, sorting them by attribute.
inline ContranominalScale make_scale(std::vector<ScalePair> pairs) {
  std::sort(pairs.begin(), pairs.end(),
            [](const ScalePair& a, const ScalePair& b) { return a.attribute < b.attribute; });
  return {std::move(pairs)};
}

/// Empty string when the scale is a valid contranominal scale of ctx,
/// otherwise a description of the first violated condition.
inline std::string scale_violation(const FormalContext& ctx, const ContranominalScale& s) {
  if (s.pairs.empty()) return "empty scale";
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    const auto& p = s.pairs[i];
    if (p.object >= ctx.num_objects() || p.attribute >= ctx.num_attributes()) return "index out of range";
    if (i > 0 && s.pairs[i - 1].attribute >= p.attribute) return "attributes not strictly ascending";
    if (ctx.incident(p.object, p.attribute)) return "diagonal pair is incident";
    for (std::size_t j = 0; j < s.pairs.size(); ++j) {
      if (i == j) continue;
      if (p.object == s.pairs[j].object) return "object repeated";
      if (!ctx.incident(p.object, s.pairs[j].attribute)) return "off-diagonal pair is not incident";
    }
  }
  return {};
}

inline bool is_contranominal(const FormalContext& ctx, const ContranominalScale& s) {
  return scale_violation(ctx, s).empty();
}

/// Recursion state of ContraFinder: a generator N, the classes
/// H(m) = {g | (g, m) in C(N)} for every m in N, and the forbidden objects F
/// (objects non-incident to some attribute of N).
struct CharacterizingTupleSet {
  IndexList generator;
  std::vector<Bits> classes;
  Bits forbidden;

  std::size_t dimension() const { return generator.size(); }

  /// Number of scales encoded: one per choice of an object from each class.
  std::uint64_t scale_count() const {
    std::uint64_t n = 1;
    for (const auto& c : classes)
      if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(c.count()), &n))
        throw std::overflow_error("scale count exceeds 64 bits");
    return n;
  }
};

/// Calls fn for every scale encoded by t, odometer-style with the last
/// attribute's object varying fastest. Returns false if fn asked to stop.
template <class Fn>
bool unpack_contranominals(const CharacterizingTupleSet& t, Fn&& fn) {
  const std::size_t k = t.generator.size();
  if (k == 0) return true;
  std::vector<IndexList> options;
  options.reserve(k);
  for (const auto& c : t.classes) options.push_back(to_indices(c));
  std::vector<std::size_t> pos(k, 0);
  ContranominalScale s;
  s.pairs.resize(k);
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) s.pairs[i] = {options[i][pos[i]], t.generator[i]};
    if (!fn(std::as_const(s))) return false;
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++pos[i] < options[i].size()) break;
      pos[i] = 0;
      if (i == 0) return true;
    }
  }
}

/// Cooperative cancellation for long enumerations.
struct Deadline {
  std::optional<std::chrono::steady_clock::time_point> at;

  static Deadline none() { return {}; }
  static Deadline after(std::chrono::duration<double> d) {
    return {std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(d)};
  }
  bool expired() const { return at && std::chrono::steady_clock::now() >= *at; }
};

class DeadlineExceeded : public std::runtime_error {
 public:
  DeadlineExceeded() : std::runtime_error("enumeration deadline exceeded") {}
};

/// Backtracking search over generators in lexicographic order.
///
/// Adding attribute m to a generator N with classes H(n):
///   H'(n) = H(n) & m'             (tuples that stay characterizing)
///   H(m)  = G \ (F u m')          (objects incident to all of N but not m)
/// and the step is taken iff every H'(n) and H(m) is nonempty. Each class
/// only has to keep some object; demanding that all of H(a) be incident
/// with c would drop scales such as {(g1,a),(g3,c)} whenever a second
/// object of H(a) misses c.
class ContraFinder {
 public:
  explicit ContraFinder(const FormalContext& ctx, Deadline deadline = Deadline::none())
      : ctx_(ctx), deadline_(deadline) {
    const std::size_t m = ctx.num_attributes();
    frames_.resize(m + 1);
    for (std::size_t d = 0; d <= m; ++d) {
      frames_[d].generator.reserve(d);
      frames_[d].classes.assign(d, Bits(ctx.num_objects()));
      frames_[d].forbidden = Bits(ctx.num_objects());
    }
    scratch_ = Bits(ctx.num_objects());
  }

  /// Visits every nonempty generator; fn returns false to stop.
  template <class Fn>
  bool for_each_generator(Fn&& fn) {
    for (std::size_t first = 0; first < ctx_.num_attributes(); ++first)
      if (!branch(first, fn)) return false;
    return true;
  }

  /// Visits the generators whose smallest attribute is `first`.
  template <class Fn>
  bool branch(std::size_t first, Fn&& fn) {
    frames_[0].generator.clear();
    frames_[0].forbidden.reset();
    return step(0, first, fn);
  }

 private:
  template <class Fn>
  bool step(std::size_t depth, std::size_t m, Fn& fn) {
    if ((++nodes_ & 0x3ff) == 0 && deadline_.expired()) throw DeadlineExceeded();
    const auto& cur = frames_[depth];
    const Bits& ext = ctx_.extent(m);
    scratch_ = ext;
    scratch_ |= cur.forbidden;
    if (scratch_.all()) return true;  // no fresh tuple for m
    for (std::size_t i = 0; i < depth; ++i)
      if (!cur.classes[i].intersects(ext)) return true;  // some H(n) would vanish

    auto& next = frames_[depth + 1];
    next.generator.assign(cur.generator.begin(), cur.generator.end());
    next.generator.push_back(m);
    for (std::size_t i = 0; i < depth; ++i) {
      next.classes[i] = cur.classes[i];
      next.classes[i] &= ext;
    }
    next.classes[depth] = scratch_;
    next.classes[depth].flip();
    next.forbidden = ext;
    next.forbidden.flip();
    next.forbidden |= cur.forbidden;

    if (!fn(std::as_const(next))) return false;
    for (std::size_t x = m + 1; x < ctx_.num_attributes(); ++x)
      if (!step(depth + 1, x, fn)) return false;
    return true;
  }

  const FormalContext& ctx_;
  Deadline deadline_;
  std::vector<CharacterizingTupleSet> frames_;
  Bits scratch_;
  std::uint64_t nodes_ = 0;
};

/// Scale counts per dimension.
struct ScaleHistogram {
  std::map<std::size_t, std::uint64_t> by_dimension;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto [k, n] : by_dimension) t += n;
    return t;
  }
  std::size_t max_dimension() const { return by_dimension.empty() ? 0 : by_dimension.rbegin()->first; }

  void add(std::size_t dim, std::uint64_t n) {
    if (n == 0) return;
    auto& slot = by_dimension[dim];
    if (__builtin_add_overflow(slot, n, &slot)) throw std::overflow_error("scale count exceeds 64 bits");
  }
  void merge(const ScaleHistogram& o) {
    for (auto [k, n] : o.by_dimension) add(k, n);
  }
  bool operator==(const ScaleHistogram&) const = default;
};

struct EnumerationOptions {
  unsigned threads = 1;
  /// Only scales of at least this dimension are reported.
  std::size_t min_dimension = 1;
  /// Search only the (k-1, k-1)-core for k = min_dimension. Opt-in: it
  /// changes nothing for dimensions >= k but drops smaller scales.
  bool use_core = false;
  /// Enumerate on the clarified and reduced context and rebuild the scales
  /// of the input from there.
  bool preprocess = false;
  Deadline deadline;
};

namespace detail {

// Runs one task per top-level attribute and returns their results in
// attribute order, so the merged output does not depend on the thread count.
template <class Result, class Task>
std::vector<Result> run_branches(std::size_t branches, unsigned threads, Task task) {
  std::vector<Result> out(branches);
  if (threads <= 1 || branches <= 1) {
    for (std::size_t b = 0; b < branches; ++b) out[b] = task(b);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t b; !failed && (b = next++) < branches;) {
          try {
            out[b] = task(b);
          } catch (...) {
            if (!failed.exchange(true)) error = std::current_exception();
          }
        }
      });
  }
  if (error) std::rethrow_exception(error);
  return out;
}

inline ContranominalScale reindex(const ContranominalScale& s, const SubcontextSelection& sel) {
  ContranominalScale out;
  for (const auto& p : s.pairs) out.pairs.push_back({sel.objects[p.object], sel.attributes[p.attribute]});
  return out;
}

}  // namespace detail

/// Streams every scale of ctx in canonical order, serially. fn returns false to stop.
template <class Fn>
bool for_each_scale(const FormalContext& ctx, Fn&& fn, Deadline deadline = Deadline::none()) {
  ContraFinder finder(ctx, deadline);
  return finder.for_each_generator(
      [&](const CharacterizingTupleSet& t) { return unpack_contranominals(t, fn); });
}

/// Every scale on exactly this context (no preprocessing), canonical order.
inline std::vector<ContranominalScale> enumerate_raw(const FormalContext& ctx, unsigned threads = 1,
                                                     Deadline deadline = Deadline::none()) {
  auto parts = detail::run_branches<std::vector<ContranominalScale>>(
      ctx.num_attributes(), threads, [&](std::size_t b) {
        std::vector<ContranominalScale> local;
        ContraFinder finder(ctx, deadline);
        finder.branch(b, [&](const CharacterizingTupleSet& t) {
          return unpack_contranominals(t, [&](const ContranominalScale& s) {
            local.push_back(s);
            return true;
          });
        });
        return local;
      });
  std::vector<ContranominalScale> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  return out;
}

/// Per-dimension counts without materializing the scales.
inline ScaleHistogram count_raw(const FormalContext& ctx, unsigned threads = 1, Deadline deadline = Deadline::none()) {
  auto parts = detail::run_branches<ScaleHistogram>(ctx.num_attributes(), threads, [&](std::size_t b) {
    ScaleHistogram h;
    ContraFinder finder(ctx, deadline);
    finder.branch(b, [&](const CharacterizingTupleSet& t) {
      h.add(t.dimension(), t.scale_count());
      return true;
    });
    return h;
  });
  ScaleHistogram total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

// ---------------------------------------------------------------------------
// Reconstruction from clarified / reduced contexts

/// Scales of the unclarified context from those of its clarification: every
/// scale is repeated once per choice of class members for its objects and
/// attributes. Output is in canonical order.
inline std::vector<ContranominalScale> scales_from_clarified(const std::vector<ContranominalScale>& scales,
                                                            const ClarificationMap& map) {
  std::vector<ContranominalScale> out;
  for (const auto& s : scales) {
    const std::size_t k = s.pairs.size();
    std::vector<const IndexList*> obj_opts(k), att_opts(k);
    for (std::size_t i = 0; i < k; ++i) {
      if (s.pairs[i].object >= map.object_classes.size() || s.pairs[i].attribute >= map.attribute_classes.size())
        throw ContextError("scale does not belong to the clarified context of this map");
      obj_opts[i] = &map.object_classes[s.pairs[i].object];
      att_opts[i] = &map.attribute_classes[s.pairs[i].attribute];
    }
    // Odometer over 2k positions: attributes first, then objects.
    std::vector<std::size_t> pos(2 * k, 0);
    for (bool more = k > 0; more;) {
      std::vector<ScalePair> pairs(k);
      for (std::size_t i = 0; i < k; ++i) pairs[i] = {(*obj_opts[i])[pos[k + i]], (*att_opts[i])[pos[i]]};
      out.push_back(make_scale(std::move(pairs)));
      more = false;
      for (std::size_t j = 2 * k; j-- > 0;) {
        const std::size_t limit = j < k ? att_opts[j]->size() : obj_opts[j - k]->size();
        if (++pos[j] < limit) {
          more = true;
          break;
        }
        pos[j] = 0;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// For each position i of a scale, the alternatives for its element on one
// side. A removed element x can stand in for the scale element e_i (paired
// with partner p_i) when e_i is in omega(x) and x is incident to every other
// partner; among the omega members non-incident to p_i only the smallest is
// used as the source, so every rebuilt scale is produced once.
inline std::vector<ContranominalScale> expand_side(
    const ContranominalScale& s, const std::vector<RemovedElement>& removed, bool attribute_side,
    const FormalContext& ctx) {
  const std::size_t k = s.pairs.size();
  auto elem = [&](std::size_t i) { return attribute_side ? s.pairs[i].attribute : s.pairs[i].object; };
  auto partner = [&](std::size_t i) { return attribute_side ? s.pairs[i].object : s.pairs[i].attribute; };
  auto inc = [&](std::size_t e, std::size_t p) { return attribute_side ? ctx.incident(p, e) : ctx.incident(e, p); };

  std::vector<IndexList> options(k);
  for (std::size_t i = 0; i < k; ++i) {
    options[i].push_back(elem(i));
    for (const auto& r : removed) {
      const std::size_t x = r.index;
      if (std::find(r.omega.begin(), r.omega.end(), elem(i)) == r.omega.end()) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j)
        if (j != i && !inc(x, partner(j))) ok = false;
      if (!ok) continue;
      std::size_t first = SIZE_MAX;
      for (auto y : r.omega)
        if (!inc(y, partner(i))) {
          first = y;
          break;
        }
      if (first == elem(i)) options[i].push_back(x);
    }
  }
  std::vector<ContranominalScale> out;
  std::vector<std::size_t> pos(k, 0);
  for (bool more = k > 0; more;) {
    std::vector<ScalePair> pairs = s.pairs;
    for (std::size_t i = 0; i < k; ++i) (attribute_side ? pairs[i].attribute : pairs[i].object) = options[i][pos[i]];
    out.push_back(make_scale(std::move(pairs)));
    more = false;
    for (std::size_t j = k; j-- > 0;) {
      if (++pos[j] < options[j].size()) {
        more = true;
        break;
      }
      pos[j] = 0;
    }
  }
  return out;
}

}  // namespace detail

/// Scales of the context given to reduce() from the scales of its reduced
/// form. Attributes are substituted first (with objects still restricted to
/// the irreducible ones), then objects, using the omega sets of the trace.
/// Output is in canonical order.
inline std::vector<ContranominalScale> scales_from_reduced(const std::vector<ContranominalScale>& scales,
                                                          const ReductionTrace& trace,
                                                          const FormalContext& original) {
  if (original.num_objects() != trace.input_objects || original.num_attributes() != trace.input_attributes)
    throw ContextError("reduction trace does not match context");
  std::vector<ContranominalScale> out;
  for (const auto& s : scales) {
    ContranominalScale lifted;
    for (const auto& p : s.pairs) {
      if (p.object >= trace.kept_objects.size() || p.attribute >= trace.kept_attributes.size())
        throw ContextError("scale does not belong to the reduced context of this trace");
      lifted.pairs.push_back({trace.kept_objects[p.object], trace.kept_attributes[p.attribute]});
    }
    for (const auto& a : detail::expand_side(lifted, trace.removed_attributes, true, original))
      for (auto& b : detail::expand_side(a, trace.removed_objects, false, original)) out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Enumeration entry point with the optional speedups. Output is in canonical
/// order for every thread count.
inline std::vector<ContranominalScale> enumerate_contrafinder(const FormalContext& ctx,
                                                             const EnumerationOptions& opt = {}) {
  std::vector<ContranominalScale> out;
  if (opt.preprocess) {
    auto cl = clarify(ctx);
    auto red = reduce(cl.context);
    EnumerationOptions inner = opt;
    inner.preprocess = false;
    inner.min_dimension = 1;
    inner.use_core = false;
    out = scales_from_clarified(scales_from_reduced(enumerate_contrafinder(red.context, inner), red.trace, cl.context),
                                cl.map);
  } else if (opt.use_core && opt.min_dimension >= 2) {
    const std::size_t c = opt.min_dimension - 1;
    auto sel = pq_core(ctx, c, c);
    auto sub = apply_selection(ctx, sel);
    for (const auto& s : enumerate_raw(sub, opt.threads, opt.deadline)) out.push_back(detail::reindex(s, sel));
    std::sort(out.begin(), out.end());
  } else {
    out = enumerate_raw(ctx, opt.threads, opt.deadline);
  }
  if (opt.min_dimension > 1)
    std::erase_if(out, [&](const ContranominalScale& s) { return s.dimension() < opt.min_dimension; });
  return out;
}

/// Histogram of scale dimensions. With preprocessing the scales are rebuilt
/// and counted, so prefer the plain mode on large inputs.
inline ScaleHistogram count_contranominal_scales(const FormalContext& ctx, const EnumerationOptions& opt = {}) {
  ScaleHistogram h;
  if (opt.preprocess) {
    for (const auto& s : enumerate_contrafinder(ctx, opt)) h.add(s.dimension(), 1);
    return h;
  }
  if (opt.use_core && opt.min_dimension >= 2) {
    const std::size_t c = opt.min_dimension - 1;
    h = count_raw(apply_selection(ctx, pq_core(ctx, c, c)), opt.threads, opt.deadline);
  } else {
    h = count_raw(ctx, opt.threads, opt.deadline);
  }
  std::erase_if(h.by_dimension, [&](const auto& kv) { return kv.first < opt.min_dimension; });
  return h;
}

inline std::size_t max_dimension(const FormalContext& ctx, unsigned threads = 1) {
  return count_raw(ctx, threads).max_dimension();
}

// ---------------------------------------------------------------------------
// Conflict graph and the Bron–Kerbosch oracle

/// Vertices are the non-incident pairs in row-major order; (g,m) and (h,n)
/// are adjacent iff (g,n) and (h,m) are both incident.
struct ConflictGraph {
  std::vector<ScalePair> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<Bits> adjacency;
};

inline ConflictGraph conflict_graph(const FormalContext& ctx) {
  ConflictGraph cg;
  for (std::size_t g = 0; g < ctx.num_objects(); ++g)
    for (std::size_t m = 0; m < ctx.num_attributes(); ++m)
      if (!ctx.incident(g, m)) cg.vertices.push_back({g, m});
  const std::size_t n = cg.vertices.size();
  cg.adjacency.assign(n, Bits(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      const auto [g, m] = cg.vertices[u];
      const auto [h, x] = cg.vertices[v];
      if (ctx.incident(g, x) && ctx.incident(h, m)) {
        cg.edges.emplace_back(u, v);
        cg.adjacency[u].set(v);
        cg.adjacency[v].set(u);
      }
    }
  return cg;
}

namespace detail {

// Bron–Kerbosch with Tomita pivoting; reports maximal cliques.
template <class Fn>
void bk_pivot(const std::vector<Bits>& adj, IndexList& r, Bits p, Bits x, Fn& fn, const Deadline& dl,
              std::uint64_t& ticks) {
  if ((++ticks & 0x3ff) == 0 && dl.expired()) throw DeadlineExceeded();
  if (p.none() && x.none()) {
    fn(std::as_const(r));
    return;
  }
  std::size_t pivot = Bits::npos, best = 0;
  for (const Bits* s : {&p, &x})
    for_each_bit(*s, [&](std::size_t u) {
      const std::size_t c = (p & adj[u]).count();
      if (pivot == Bits::npos || c > best) {
        pivot = u;
        best = c;
      }
    });
  Bits cand = p;
  cand -= adj[pivot];
  for_each_bit(cand, [&](std::size_t v) {
    r.push_back(v);
    bk_pivot(adj, r, p & adj[v], x & adj[v], fn, dl, ticks);
    r.pop_back();
    p.reset(v);
    x.set(v);
  });
}

// Bron–Kerbosch without pivoting; every node of the search tree is a distinct
// clique, so reporting at each node yields all cliques exactly once.
template <class Fn>
void bk_all(const std::vector<Bits>& adj, IndexList& r, Bits p, Fn& fn, const Deadline& dl, std::uint64_t& ticks) {
  if ((++ticks & 0x3ff) == 0 && dl.expired()) throw DeadlineExceeded();
  for_each_bit(p, [&](std::size_t v) {
    r.push_back(v);
    fn(std::as_const(r));
    bk_all(adj, r, p & adj[v], fn, dl, ticks);
    r.pop_back();
    p.reset(v);
  });
}

inline ContranominalScale clique_to_scale(const ConflictGraph& cg, const IndexList& clique) {
  std::vector<ScalePair> pairs;
  for (auto v : clique) pairs.push_back(cg.vertices[v]);
  return make_scale(std::move(pairs));
}

}  // namespace detail

/// Calls fn with the vertex list of every maximal clique.
template <class Fn>
void for_each_maximal_clique(const ConflictGraph& cg, Fn&& fn, Deadline deadline = Deadline::none()) {
  const std::size_t n = cg.vertices.size();
  if (n == 0) return;
  IndexList r;
  std::uint64_t ticks = 0;
  detail::bk_pivot(cg.adjacency, r, full_bits(n), Bits(n), fn, deadline, ticks);
}

/// Calls fn with the vertex list of every nonempty clique, each exactly once.
template <class Fn>
void for_each_clique(const ConflictGraph& cg, Fn&& fn, Deadline deadline = Deadline::none()) {
  const std::size_t n = cg.vertices.size();
  if (n == 0) return;
  IndexList r;
  std::uint64_t ticks = 0;
  detail::bk_all(cg.adjacency, r, full_bits(n), fn, deadline, ticks);
}

/// All scales via cliques of the conflict graph: maximal cliques from
/// Bron–Kerbosch, expanded to all their nonempty subsets and de-duplicated.
/// Exponential in the clique size; meant as an oracle. Canonical order.
inline std::vector<ContranominalScale> enumerate_bronkerbosch(const FormalContext& ctx,
                                                             Deadline deadline = Deadline::none()) {
  const auto cg = conflict_graph(ctx);
  std::set<IndexList> cliques;
  for_each_maximal_clique(
      cg,
      [&](const IndexList& maximal) {
        IndexList sorted = maximal;
        std::sort(sorted.begin(), sorted.end());
        if (sorted.size() >= 64) throw std::length_error("clique too large for subset expansion");
        const std::uint64_t subsets = std::uint64_t{1} << sorted.size();
        for (std::uint64_t mask = 1; mask < subsets; ++mask) {
          IndexList sub;
          for (std::size_t i = 0; i < sorted.size(); ++i)
            if (mask >> i & 1) sub.push_back(sorted[i]);
          cliques.insert(std::move(sub));
        }
      },
      deadline);
  std::vector<ContranominalScale> out;
  out.reserve(cliques.size());
  for (const auto& c : cliques) out.push_back(detail::clique_to_scale(cg, c));
  std::sort(out.begin(), out.end());
  return out;
}

/// Histogram via the all-cliques traversal; memory stays linear in the depth.
inline ScaleHistogram count_bronkerbosch(const FormalContext& ctx, Deadline deadline = Deadline::none()) {
  const auto cg = conflict_graph(ctx);
  ScaleHistogram h;
  for_each_clique(cg, [&](const IndexList& c) { h.add(c.size(), 1); }, deadline);
  return h;
}

// ---------------------------------------------------------------------------
// Bipartite graphs and induced matchings

struct BipartiteGraph {
  std::vector<std::string> left;
  std::vector<std::string> right;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (left, right), sorted
};

/// The associated bipartite graph of the complement of ctx: objects on the
/// left, attributes on the right, an edge for every non-incident pair.
inline BipartiteGraph to_bipartite(const FormalContext& ctx) {
  BipartiteGraph b{ctx.objects(), ctx.attributes(), {}};
  for (std::size_t g = 0; g < ctx.num_objects(); ++g)
    for (std::size_t m = 0; m < ctx.num_attributes(); ++m)
      if (!ctx.incident(g, m)) b.edges.emplace_back(g, m);
  return b;
}

using EdgeSet = std::vector<std::pair<std::size_t, std::size_t>>;

/// Every nonempty induced matching, found as the contranominal scales of the
/// context (S, T, (S x T) \ E).
inline std::vector<EdgeSet> induced_matchings(const BipartiteGraph& g) {
  std::vector<Bits> rows(g.left.size(), full_bits(g.right.size()));
  for (auto [s, t] : g.edges) {
    if (s >= g.left.size() || t >= g.right.size()) throw std::out_of_range("edge endpoint out of range");
    rows[s].reset(t);
  }
  FormalContext ctx(g.left, g.right, std::move(rows));
  std::vector<EdgeSet> out;
  for (const auto& s : enumerate_raw(ctx)) {
    EdgeSet e;
    for (const auto& p : s.pairs) e.emplace_back(p.object, p.attribute);
    std::sort(e.begin(), e.end());
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace contra
