#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "contra/bits.hpp"

namespace contra {

class ContextError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Objects, attributes and a binary incidence relation between them.
///
/// Immutable once built. Both the row view (object intents) and the column
/// view (attribute extents) are kept, so derivations in either direction are
/// a sequence of word-wise intersections. The attribute order is the order
/// given at construction; every lexicographic procedure in the library
/// (scale enumeration, NextClosure) iterates in that order.
class FormalContext {
 public:
  FormalContext() = default;

  /// rows[g] is the intent of object g and must have attributes.size() bits.
  FormalContext(std::vector<std::string> objects, std::vector<std::string> attributes,
                std::vector<Bits> rows)
      : objects_(std::move(objects)), attributes_(std::move(attributes)), rows_(std::move(rows)) {
    require_distinct(objects_, "object");
    require_distinct(attributes_, "attribute");
    if (rows_.size() != objects_.size())
      throw ContextError("incidence has " + std::to_string(rows_.size()) + " rows for " +
                         std::to_string(objects_.size()) + " objects");
    for (const auto& r : rows_)
      if (r.size() != attributes_.size())
        throw ContextError("incidence row width does not match attribute count");
    cols_.assign(attributes_.size(), Bits(objects_.size()));
    for (std::size_t g = 0; g < rows_.size(); ++g)
      for_each_bit(rows_[g], [&](std::size_t m) { cols_[m].set(g); });
  }

  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_attributes() const { return attributes_.size(); }

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<std::string>& attributes() const { return attributes_; }
  const std::string& object(std::size_t g) const { return objects_.at(g); }
  const std::string& attribute(std::size_t m) const { return attributes_.at(m); }

  bool incident(std::size_t g, std::size_t m) const { return rows_[g].test(m); }

  /// g'
  const Bits& intent(std::size_t g) const { return rows_[g]; }
  /// m'
  const Bits& extent(std::size_t m) const { return cols_[m]; }

  const std::vector<Bits>& rows() const { return rows_; }
  const std::vector<Bits>& columns() const { return cols_; }

  Bits all_objects() const { return full_bits(num_objects()); }
  Bits all_attributes() const { return full_bits(num_attributes()); }

  /// A' for an object set A. The empty set derives to all attributes.
  Bits derive_attributes(const Bits& objs) const {
    check_width(objs, num_objects(), "object");
    Bits out = all_attributes();
    for_each_bit(objs, [&](std::size_t g) { out &= rows_[g]; });
    return out;
  }

  /// B' for an attribute set B. The empty set derives to all objects.
  Bits derive_objects(const Bits& attrs) const {
    check_width(attrs, num_attributes(), "attribute");
    Bits out = all_objects();
    for_each_bit(attrs, [&](std::size_t m) { out &= cols_[m]; });
    return out;
  }

  Bits derive_attributes(const IndexList& objs) const {
    return derive_attributes(checked_bits(objs, num_objects(), "object"));
  }
  Bits derive_objects(const IndexList& attrs) const {
    return derive_objects(checked_bits(attrs, num_attributes(), "attribute"));
  }

  /// B''
  Bits attribute_closure(const Bits& attrs) const { return derive_attributes(derive_objects(attrs)); }
  /// A''
  Bits object_closure(const Bits& objs) const { return derive_objects(derive_attributes(objs)); }

  std::size_t incidence_count() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.count();
    return n;
  }

  double density() const {
    const double cells = static_cast<double>(num_objects()) * static_cast<double>(num_attributes());
    return cells == 0 ? 0.0 : static_cast<double>(incidence_count()) / cells;
  }

  friend bool operator==(const FormalContext&, const FormalContext&) = default;

 private:
  static void require_distinct(const std::vector<std::string>& labels, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second) throw ContextError(std::string("duplicate ") + what + " label '" + l + "'");
  }

  static void check_width(const Bits& b, std::size_t n, const char* what) {
    if (b.size() != n) throw std::out_of_range(std::string(what) + " set has wrong universe size");
  }

  static Bits checked_bits(const IndexList& idx, std::size_t n, const char* what) {
    Bits b(n);
    for (auto i : idx) {
      if (i >= n) throw std::out_of_range(std::string(what) + " index " + std::to_string(i) + " out of range");
      b.set(i);
    }
    return b;
  }

  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<Bits> rows_;
  std::vector<Bits> cols_;
};

/// Index-based view K[H,N] of a parent context. Records the parent's shape so a
/// selection cannot silently be applied to a different context.
struct SubcontextSelection {
  std::size_t parent_objects = 0;
  std::size_t parent_attributes = 0;
  IndexList objects;     // sorted, unique
  IndexList attributes;  // sorted, unique

  static SubcontextSelection full(const FormalContext& ctx) {
    SubcontextSelection s{ctx.num_objects(), ctx.num_attributes(), {}, {}};
    for (std::size_t g = 0; g < ctx.num_objects(); ++g) s.objects.push_back(g);
    for (std::size_t m = 0; m < ctx.num_attributes(); ++m) s.attributes.push_back(m);
    return s;
  }

  static SubcontextSelection of(const FormalContext& ctx, IndexList objs, IndexList attrs) {
    auto norm = [](IndexList& v, std::size_t n, const char* what) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      if (!v.empty() && v.back() >= n)
        throw std::out_of_range(std::string(what) + " index " + std::to_string(v.back()) + " out of range");
    };
    norm(objs, ctx.num_objects(), "object");
    norm(attrs, ctx.num_attributes(), "attribute");
    return {ctx.num_objects(), ctx.num_attributes(), std::move(objs), std::move(attrs)};
  }

  /// Keep all objects, restrict attributes: K[G,N].
  static SubcontextSelection attributes_only(const FormalContext& ctx, IndexList attrs) {
    IndexList objs;
    for (std::size_t g = 0; g < ctx.num_objects(); ++g) objs.push_back(g);
    return of(ctx, std::move(objs), std::move(attrs));
  }

  bool operator==(const SubcontextSelection&) const = default;
};

/// Materializes K[H,N]; relative orders of objects and attributes are kept.
inline FormalContext apply_selection(const FormalContext& parent, const SubcontextSelection& sel) {
  if (sel.parent_objects != parent.num_objects() || sel.parent_attributes != parent.num_attributes())
    throw ContextError("selection was made for a different context");
  std::vector<std::string> objs, attrs;
  for (auto g : sel.objects) objs.push_back(parent.object(g));
  for (auto m : sel.attributes) attrs.push_back(parent.attribute(m));
  std::vector<Bits> rows;
  rows.reserve(sel.objects.size());
  for (auto g : sel.objects) {
    Bits r(sel.attributes.size());
    for (std::size_t j = 0; j < sel.attributes.size(); ++j)
      if (parent.incident(g, sel.attributes[j])) r.set(j);
    rows.push_back(std::move(r));
  }
  return FormalContext(std::move(objs), std::move(attrs), std::move(rows));
}

/// (G, M, (G x M) \ I)
inline FormalContext complement(const FormalContext& ctx) {
  std::vector<Bits> rows = ctx.rows();
  for (auto& r : rows) r.flip();
  return FormalContext(ctx.objects(), ctx.attributes(), std::move(rows));
}

/// ({1..k}, {1..k}, !=)
inline FormalContext make_contranominal(std::size_t k) {
  if (k == 0) throw std::invalid_argument("contranominal scale needs dimension >= 1");
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= k; ++i) labels.push_back(std::to_string(i));
  std::vector<Bits> rows;
  for (std::size_t g = 0; g < k; ++g) {
    Bits r = full_bits(k);
    r.reset(g);
    rows.push_back(std::move(r));
  }
  return FormalContext(labels, labels, std::move(rows));
}

/// Builds a context from 0/1 rows; labels default to g0.. / m0.. .
inline FormalContext context_from_rows(const std::vector<std::vector<int>>& cells) {
  const std::size_t n = cells.size();
  const std::size_t m = n == 0 ? 0 : cells.front().size();
  std::vector<std::string> objs, attrs;
  for (std::size_t g = 0; g < n; ++g) objs.push_back("g" + std::to_string(g));
  for (std::size_t a = 0; a < m; ++a) attrs.push_back("m" + std::to_string(a));
  std::vector<Bits> rows;
  for (const auto& row : cells) {
    if (row.size() != m) throw ContextError("ragged cell matrix");
    Bits r(m);
    for (std::size_t a = 0; a < m; ++a)
      if (row[a]) r.set(a);
    rows.push_back(std::move(r));
  }
  return FormalContext(std::move(objs), std::move(attrs), std::move(rows));
}

}  // namespace contra
