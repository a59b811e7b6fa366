#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "contra/adjust.hpp"
#include "contra/decision_tree.hpp"
#include "contra/implications.hpp"
#include "contra/lattice.hpp"
#include "contra/random.hpp"
#include "contra/scales.hpp"

namespace contra {

/// Uniform sample of n attributes without replacement, ascending.
inline IndexList sample_attributes(const FormalContext& ctx, std::size_t n, std::uint64_t seed) {
  if (n > ctx.num_attributes()) throw std::out_of_range("sample size exceeds attribute count");
  Rng rng(seed);
  return sample_indices(ctx.num_attributes(), n, rng);
}

enum class SelectionMethod { adjusted, sampled };

inline const char* method_name(SelectionMethod m) { return m == SelectionMethod::adjusted ? "adjusted" : "sampled"; }

struct ExperimentConfig {
  double delta = 0.5;
  std::size_t repetitions = 1000;
  double split_fraction = 0.5;
  std::uint64_t seed = 0;
  SelectionMethod method = SelectionMethod::adjusted;
  unsigned threads = 1;

  void validate() const {
    if (!(delta >= 0 && delta <= 1)) throw std::invalid_argument("delta must lie in [0, 1]");
    if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
    if (!(split_fraction > 0 && split_fraction < 1)) throw std::invalid_argument("split fraction must lie in (0, 1)");
  }
};

struct Repetition {
  std::size_t index = 0;
  std::size_t label = 0;
  IndexList features;
  double accuracy = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<Repetition> repetitions;
  double mean_accuracy = 0;
  double std_accuracy = 0;  // population standard deviation
};

namespace detail {

// Runs fn(i) for i in [0, n) on up to `threads` workers; results land by index.
template <class T, class Fn>
std::vector<T> parallel_indexed(std::size_t n, unsigned threads, Fn fn) {
  std::vector<T> out(n);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i; !failed && (i = next++) < n;) {
          try {
            out[i] = fn(i);
          } catch (...) {
            if (!failed.exchange(true)) error = std::current_exception();
          }
        }
      });
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace detail

/// Repeated label-prediction experiment. Each repetition draws a label
/// attribute, a split seed, and (sampled arm) a feature sample from its own
/// sub-seed, so both arms see the same labels and splits for equal seeds.
/// The adjusted arm uses the delta-adjusted attributes of the whole context
/// minus the label; the sampled arm draws as many attributes from M \ {label}.
inline ExperimentResult run_knowledge_experiment(const FormalContext& ctx, const ExperimentConfig& cfg) {
  cfg.validate();
  require_preprocessed(ctx);
  if (ctx.num_attributes() == 0) throw std::invalid_argument("context has no attributes");
  const IndexList adjusted = delta_adjust(ctx, cfg.delta).attributes;

  ExperimentResult res;
  res.config = cfg;
  res.repetitions = detail::parallel_indexed<Repetition>(cfg.repetitions, cfg.threads, [&](std::size_t r) {
    Rng rng(derive_seed(cfg.seed, r));
    Repetition rep;
    rep.index = r;
    rep.label = static_cast<std::size_t>(rng.below(ctx.num_attributes()));
    const std::uint64_t split_seed = rng.next();
    IndexList chosen;
    for (auto m : adjusted)
      if (m != rep.label) chosen.push_back(m);
    if (cfg.method == SelectionMethod::adjusted) {
      rep.features = std::move(chosen);
    } else {
      for (auto i : sample_indices(ctx.num_attributes() - 1, chosen.size(), rng))
        rep.features.push_back(i < rep.label ? i : i + 1);
    }
    rep.accuracy = decision_tree_accuracy(ctx, rep.features, rep.label, cfg.split_fraction, split_seed);
    return rep;
  });

  double sum = 0;
  for (const auto& r : res.repetitions) sum += r.accuracy;
  res.mean_accuracy = sum / static_cast<double>(res.repetitions.size());
  double sq = 0;
  for (const auto& r : res.repetitions) sq += (r.accuracy - res.mean_accuracy) * (r.accuracy - res.mean_accuracy);
  res.std_accuracy = std::sqrt(sq / static_cast<double>(res.repetitions.size()));
  return res;
}

struct StructureResult {
  double delta = 0;
  std::size_t attributes_original = 0;
  std::size_t attributes_adjusted = 0;
  std::size_t concepts_original = 0;
  std::size_t concepts_adjusted = 0;
  std::size_t base_original = 0;
  std::size_t base_adjusted = 0;
  std::size_t sampled_runs = 0;
  double concepts_sampled_mean = 0;
  double base_sampled_mean = 0;
};

/// Concept counts and canonical-base sizes of the context, its delta-adjusted
/// subcontext, and the mean over `sampled_runs` same-size random samples.
inline StructureResult run_structure_experiment(const FormalContext& ctx, double delta, std::uint64_t seed = 0,
                                                std::size_t sampled_runs = 10, unsigned threads = 1) {
  require_preprocessed(ctx);
  StructureResult r;
  r.delta = delta;
  const auto sel = delta_adjust(ctx, delta);
  const auto adj = adjusted_context(ctx, sel);
  r.attributes_original = ctx.num_attributes();
  r.attributes_adjusted = adj.num_attributes();
  r.concepts_original = count_concepts(ctx);
  r.base_original = canonical_base(ctx).size();
  r.concepts_adjusted = count_concepts(adj);
  r.base_adjusted = canonical_base(adj).size();
  r.sampled_runs = sampled_runs;
  struct Pair {
    std::size_t concepts = 0, base = 0;
  };
  auto runs = detail::parallel_indexed<Pair>(sampled_runs, threads, [&](std::size_t i) {
    auto attrs = sample_attributes(ctx, sel.attributes.size(), derive_seed(seed, i));
    auto sub = apply_selection(ctx, SubcontextSelection::attributes_only(ctx, attrs));
    return Pair{count_concepts(sub), canonical_base(sub).size()};
  });
  for (const auto& p : runs) {
    r.concepts_sampled_mean += static_cast<double>(p.concepts);
    r.base_sampled_mean += static_cast<double>(p.base);
  }
  if (sampled_runs > 0) {
    r.concepts_sampled_mean /= static_cast<double>(sampled_runs);
    r.base_sampled_mean /= static_cast<double>(sampled_runs);
  }
  return r;
}

enum class Algorithm { contrafinder, bronkerbosch };

inline const char* algorithm_name(Algorithm a) { return a == Algorithm::contrafinder ? "contrafinder" : "bronkerbosch"; }

inline std::optional<Algorithm> parse_algorithm(const std::string& s) {
  if (s == "contrafinder") return Algorithm::contrafinder;
  if (s == "bronkerbosch") return Algorithm::bronkerbosch;
  return std::nullopt;
}

struct TimingEntry {
  Algorithm algorithm = Algorithm::contrafinder;
  double seconds = 0;
  bool finished = false;
  std::uint64_t count = 0;
  std::size_t max_dimension = 0;
};

struct TimingReport {
  std::vector<TimingEntry> entries;
  /// False when two finished algorithms disagree on the histogram.
  bool consistent = true;
};

/// Wall-clock time to count all scales per algorithm, each under its own
/// timeout. ContraFinder counts per generator; Bron–Kerbosch walks every
/// clique of the conflict graph.
inline TimingReport benchmark_enumeration(const FormalContext& ctx, const std::vector<Algorithm>& algorithms,
                                          std::chrono::duration<double> timeout) {
  TimingReport rep;
  std::optional<ScaleHistogram> reference;
  for (auto a : algorithms) {
    TimingEntry e;
    e.algorithm = a;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto deadline = Deadline::after(timeout);
      const auto h = a == Algorithm::contrafinder ? count_raw(ctx, 1, deadline) : count_bronkerbosch(ctx, deadline);
      e.finished = true;
      e.count = h.total();
      e.max_dimension = h.max_dimension();
      if (reference && *reference != h) rep.consistent = false;
      if (!reference) reference = h;
    } catch (const DeadlineExceeded&) {
      e.finished = false;
    }
    e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace contra
