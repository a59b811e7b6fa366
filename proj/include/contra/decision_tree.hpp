#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "contra/context.hpp"
#include "contra/random.hpp"

namespace contra {

/// Binary classification tree over boolean features.
///
/// Splits on one feature at a time, choosing the lowest weighted Gini impurity
/// (first feature wins ties). A node becomes a leaf when it is pure or every
/// feature is constant on it. Leaves predict the majority label, true on a tie.
class DecisionTree {
 public:
  /// rows: feature vectors; labels[i] belongs to rows[i]; only `train` rows are used.
  static DecisionTree fit(const std::vector<Bits>& rows, const std::vector<bool>& labels, const IndexList& train) {
    if (train.empty()) throw std::invalid_argument("cannot fit a tree on no rows");
    DecisionTree t;
    t.grow(rows, labels, train);
    return t;
  }

  bool predict(const Bits& row) const {
    std::size_t n = 0;
    while (nodes_[n].feature != leaf) n = row.test(nodes_[n].feature) ? nodes_[n].yes : nodes_[n].no;
    return nodes_[n].prediction;
  }

  std::size_t size() const { return nodes_.size(); }

 private:
  static constexpr std::size_t leaf = std::numeric_limits<std::size_t>::max();

  struct Node {
    std::size_t feature = leaf;
    bool prediction = false;
    std::size_t no = 0, yes = 0;
  };

  static double gini(std::size_t pos, std::size_t n) {
    if (n == 0) return 0;
    const double p = static_cast<double>(pos) / static_cast<double>(n);
    return 2 * p * (1 - p);
  }

  std::size_t grow(const std::vector<Bits>& rows, const std::vector<bool>& labels, const IndexList& idx) {
    const std::size_t self = nodes_.size();
    nodes_.emplace_back();
    std::size_t pos = 0;
    for (auto i : idx) pos += labels[i];
    nodes_[self].prediction = 2 * pos >= idx.size();
    if (pos == 0 || pos == idx.size()) return self;

    const std::size_t width = rows[idx.front()].size();
    std::size_t best = leaf;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < width; ++f) {
      std::size_t n1 = 0, p1 = 0;
      for (auto i : idx)
        if (rows[i].test(f)) {
          ++n1;
          p1 += labels[i];
        }
      const std::size_t n0 = idx.size() - n1;
      if (n1 == 0 || n0 == 0) continue;
      const double score = static_cast<double>(n0) * gini(pos - p1, n0) + static_cast<double>(n1) * gini(p1, n1);
      if (score < best_score - 1e-12) {
        best_score = score;
        best = f;
      }
    }
    if (best == leaf) return self;

    IndexList no, yes;
    for (auto i : idx) (rows[i].test(best) ? yes : no).push_back(i);
    nodes_[self].feature = best;
    const std::size_t a = grow(rows, labels, no);
    const std::size_t b = grow(rows, labels, yes);
    nodes_[self].no = a;
    nodes_[self].yes = b;
    return self;
  }

  std::vector<Node> nodes_;
};

/// Row permutation for a train/test split: the first floor(n * split) rows
/// of the shuffled order train, the rest test.
inline std::pair<IndexList, IndexList> train_test_split(std::size_t n, double split_fraction, std::uint64_t seed) {
  if (!(split_fraction > 0 && split_fraction < 1)) throw std::invalid_argument("split fraction must lie in (0, 1)");
  IndexList order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);
  const auto cut = static_cast<std::size_t>(static_cast<double>(n) * split_fraction);
  if (cut == 0 || cut == n) throw std::invalid_argument("split leaves the train or test part empty");
  return {IndexList(order.begin(), order.begin() + cut), IndexList(order.begin() + cut, order.end())};
}

/// Test accuracy of a tree predicting attribute `label` from `features`.
inline double decision_tree_accuracy(const FormalContext& ctx, const IndexList& features, std::size_t label,
                                     double split_fraction, std::uint64_t seed) {
  if (label >= ctx.num_attributes()) throw std::out_of_range("label attribute out of range");
  for (auto f : features) {
    if (f >= ctx.num_attributes()) throw std::out_of_range("feature attribute out of range");
    if (f == label) throw std::invalid_argument("label attribute is among the features");
  }
  if (ctx.num_objects() < 2) throw std::invalid_argument("need at least two objects");
  auto [train, test] = train_test_split(ctx.num_objects(), split_fraction, seed);

  std::vector<Bits> rows(ctx.num_objects(), Bits(features.size()));
  std::vector<bool> labels(ctx.num_objects());
  for (std::size_t g = 0; g < ctx.num_objects(); ++g) {
    for (std::size_t j = 0; j < features.size(); ++j)
      if (ctx.incident(g, features[j])) rows[g].set(j);
    labels[g] = ctx.incident(g, label);
  }
  const auto tree = DecisionTree::fit(rows, labels, train);
  std::size_t hit = 0;
  for (auto g : test) hit += tree.predict(rows[g]) == labels[g];
  return static_cast<double>(hit) / static_cast<double>(test.size());
}

}  // namespace contra
