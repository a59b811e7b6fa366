#pragma once

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contra/adjust.hpp"
#include "contra/bench.hpp"
#include "contra/implications.hpp"
#include "contra/io.hpp"
#include "contra/lattice.hpp"
#include "contra/preprocess.hpp"
#include "contra/scales.hpp"
#include "contra/serialize.hpp"

namespace contra::cli {

enum ExitCode : int { ok = 0, usage_error = 1, data_error = 2 };

inline constexpr const char* threads_env = "CONTRA_THREADS";

inline unsigned default_threads() {
  if (const char* v = std::getenv(threads_env)) {
    try {
      const long n = std::stol(v);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

namespace detail {

struct Options {
  std::string input;
  std::string format;
  std::string output;
  bool pretty = false;
  unsigned threads = 1;
};

inline FormalContext load(const Options& o) {
  std::optional<Format> fmt;
  if (!o.format.empty()) fmt = parse_format(o.format);
  return load_context_file(o.input, fmt);
}

// Data goes to --output when given, otherwise to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ContextError("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

inline void write_context_to(const std::string& path, const FormalContext& ctx) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ContextError("cannot write '" + path + "'");
  save_context(f, ctx, format_for_path(path));
}

inline std::string labels_line(const std::vector<std::string>& all, const IndexList& idx) {
  std::string s;
  for (auto i : idx) s += (s.empty() ? "" : ", ") + all[i];
  return s;
}

}  // namespace detail

/// Parses argv and runs one subcommand. Data goes to `out` (or --output),
/// diagnostics to `err`. Returns 0, 1 for usage errors, 2 for data errors.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  detail::Options o;
  o.threads = default_threads();

  CLI::App app{"Contranominal scales, contranominal influence and delta-adjusting of formal contexts", "contra"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Input format (cxt or csv); default from extension")
      ->check(CLI::IsMember({"cxt", "burmeister", "csv"}));
  app.add_option("-o,--output", o.output, "Write data output to this file instead of stdout");
  app.add_flag("--pretty", o.pretty, "Human-readable tables instead of JSON");
  app.add_option("--threads", o.threads, std::string("Worker threads (default 1, or $") + threads_env + ")")
      ->check(CLI::PositiveNumber);

  auto input = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "Context file (.cxt or .csv)")->required();
  };

  auto* convert = app.add_subcommand("convert", "Convert between cxt and csv");
  std::string to;
  input(convert);
  convert->add_option("--to", to, "Output format; default from --output extension, else cxt")
      ->check(CLI::IsMember({"cxt", "csv"}));

  auto* stats = app.add_subcommand("stats", "Size, density and preprocessing status");
  bool with_lattice = false;
  input(stats);
  stats->add_flag("--lattice", with_lattice, "Also count concepts and the canonical base");

  auto* preprocess = app.add_subcommand("preprocess", "Clarify and reduce, reporting what was merged or removed");
  std::string context_out;
  bool clarify_only = false;
  input(preprocess);
  preprocess->add_option("--write-context", context_out, "Save the resulting context here");
  preprocess->add_flag("--clarify-only", clarify_only, "Skip reduction");

  auto* core = app.add_subcommand("core", "(p,q)-core selection");
  std::size_t p = 0, q = 0;
  input(core);
  core->add_option("-p", p, "Minimum attributes per object")->required();
  core->add_option("-q", q, "Minimum objects per attribute")->required();
  core->add_option("--write-context", context_out, "Save the core subcontext here");

  auto* scales = app.add_subcommand("scales", "Enumerate or count contranominal scales");
  bool count_only = false, use_core = false, with_preprocess = false;
  std::string algorithm = "contrafinder";
  std::size_t min_dim = 1;
  input(scales);
  scales->add_flag("--count-only", count_only, "Histogram of dimensions instead of the scales");
  scales->add_option("--algorithm", algorithm, "contrafinder or bronkerbosch")
      ->check(CLI::IsMember({"contrafinder", "bronkerbosch"}));
  scales->add_option("--min-dim", min_dim, "Report only scales of at least this dimension")->check(CLI::PositiveNumber);
  scales->add_flag("--core", use_core, "Search the (k-1,k-1)-core for k = --min-dim");
  scales->add_flag("--preprocess", with_preprocess, "Enumerate on the clarified and reduced context and rebuild");

  auto* influence_cmd = app.add_subcommand("influence", "Per-attribute k-cubic counts and contranominal influence");
  std::string semantics = "maximal";
  std::optional<double> mark_delta;
  bool as_csv = false;
  input(influence_cmd);
  influence_cmd->add_option("--semantics", semantics, "maximal or alternating")
      ->check(CLI::IsMember({"maximal", "alternating"}));
  influence_cmd->add_option("--delta", mark_delta, "Mark the delta-adjusted selection")->check(CLI::Range(0.0, 1.0));
  influence_cmd->add_flag("--csv", as_csv, "CSV table");

  auto* adjust = app.add_subcommand("adjust", "Select the delta-adjusted attribute subset");
  double delta = 0.5;
  input(adjust);
  adjust->add_option("--delta", delta, "Fraction of attributes to keep")->required()->check(CLI::Range(0.0, 1.0));
  adjust->add_option("--semantics", semantics, "maximal or alternating")
      ->check(CLI::IsMember({"maximal", "alternating"}));
  adjust->add_option("--write-context", context_out, "Save the adjusted subcontext here");

  auto* concepts = app.add_subcommand("concepts", "Enumerate formal concepts");
  input(concepts);
  concepts->add_flag("--count-only", count_only, "Only the number of concepts");

  auto* base = app.add_subcommand("base", "Canonical implication base");
  input(base);
  base->add_flag("--count-only", count_only, "Only the number of implications");

  auto* experiment = app.add_subcommand("experiment", "Evaluation experiments");
  experiment->require_subcommand(1);
  std::uint64_t seed = 0;
  std::size_t samples = 10, repetitions = 1000;
  double split = 0.5;
  std::string method = "both";
  bool no_log = false;
  auto* structure = experiment->add_subcommand("structure", "Concepts and base sizes: original, adjusted, sampled");
  input(structure);
  structure->add_option("--delta", delta, "Fraction of attributes to keep")->check(CLI::Range(0.0, 1.0));
  structure->add_option("--seed", seed, "Seed for the sampled baseline");
  structure->add_option("--samples", samples, "Number of random samples to average");
  auto* knowledge = experiment->add_subcommand("knowledge", "Decision-tree accuracy on held-out objects");
  input(knowledge);
  knowledge->add_option("--delta", delta, "Fraction of attributes to keep")->check(CLI::Range(0.0, 1.0));
  knowledge->add_option("--seed", seed, "Master seed");
  knowledge->add_option("--repetitions", repetitions, "Repetitions")->check(CLI::PositiveNumber);
  knowledge->add_option("--split", split, "Train fraction")->check(CLI::Range(0.0, 1.0));
  knowledge->add_option("--method", method, "adjusted, sampled or both")
      ->check(CLI::IsMember({"adjusted", "sampled", "both"}));
  knowledge->add_flag("--no-log", no_log, "Omit per-repetition records");

  auto* bench = app.add_subcommand("bench", "Time scale counting per algorithm");
  std::vector<std::string> algorithms{"contrafinder", "bronkerbosch"};
  double timeout = 60;
  input(bench);
  bench->add_option("--algorithms", algorithms, "Algorithms to run")
      ->delimiter(',')
      ->check(CLI::IsMember({"contrafinder", "bronkerbosch"}));
  bench->add_option("--timeout", timeout, "Seconds per algorithm")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }
  if (split <= 0 || split >= 1) {
    err << "--split must lie strictly between 0 and 1\n";
    return usage_error;
  }
  const auto sem = semantics == "alternating" ? CubicSemantics::alternating : CubicSemantics::maximal;

  try {
    const FormalContext ctx = detail::load(o);
    auto dump = [&](const Json& j) {
      detail::Sink sink(o.output, out);
      *sink << j.dump() << '\n';
    };

    if (convert->parsed()) {
      Format fmt = to.empty() ? (o.output.empty() ? Format::cxt : format_for_path(o.output)) : *parse_format(to);
      detail::Sink sink(o.output, out);
      save_context(*sink, ctx, fmt);
    } else if (stats->parsed()) {
      const auto cl = clarify(ctx);
      const auto red = reduce(cl.context);
      Json j = {{"objects", ctx.num_objects()},
                {"attributes", ctx.num_attributes()},
                {"incidences", ctx.incidence_count()},
                {"density", ctx.density()},
                {"clarified", cl.map.trivial()},
                {"reduced", cl.map.trivial() && red.trace.trivial()},
                {"clarified_shape", {cl.context.num_objects(), cl.context.num_attributes()}},
                {"reduced_shape", {red.context.num_objects(), red.context.num_attributes()}}};
      if (with_lattice) {
        std::size_t n = 0, objs = 0, attrs = 0;
        for_each_concept(ctx, [&](const Bits& e, const Bits& i) {
          ++n;
          objs += e.count();
          attrs += i.count();
        });
        j["concepts"] = n;
        j["mean_objects_per_concept"] = static_cast<double>(objs) / static_cast<double>(n);
        j["mean_attributes_per_concept"] = static_cast<double>(attrs) / static_cast<double>(n);
        j["canonical_base"] = canonical_base(ctx).size();
      }
      if (o.pretty) {
        detail::Sink sink(o.output, out);
        for (const auto& [k, v] : j.items()) *sink << k << ": " << v.dump() << '\n';
      } else {
        dump(j);
      }
    } else if (preprocess->parsed()) {
      const auto cl = clarify(ctx);
      Json j = {{"input_shape", {ctx.num_objects(), ctx.num_attributes()}},
                {"clarification", clarification_json(ctx, cl.map)}};
      FormalContext result = cl.context;
      if (!clarify_only) {
        auto red = reduce(cl.context);
        j["reduction"] = reduction_json(cl.context, red.trace);
        result = std::move(red.context);
      }
      j["output_shape"] = {result.num_objects(), result.num_attributes()};
      if (!context_out.empty()) detail::write_context_to(context_out, result);
      if (o.pretty) {
        detail::Sink sink(o.output, out);
        *sink << "input: " << ctx.num_objects() << " x " << ctx.num_attributes() << '\n';
        for (const auto& c : j["clarification"]["merged_objects"]) *sink << "merged objects: " << c.dump() << '\n';
        for (const auto& c : j["clarification"]["merged_attributes"]) *sink << "merged attributes: " << c.dump() << '\n';
        if (j.contains("reduction")) {
          for (const auto& r : j["reduction"]["removed_attributes"])
            *sink << "removed attribute " << r["label"].get<std::string>() << " = meet of " << r["omega"].dump() << '\n';
          for (const auto& r : j["reduction"]["removed_objects"])
            *sink << "removed object " << r["label"].get<std::string>() << " = join of " << r["omega"].dump() << '\n';
        }
        *sink << "output: " << result.num_objects() << " x " << result.num_attributes() << '\n';
      } else {
        dump(j);
      }
    } else if (core->parsed()) {
      const auto sel = pq_core(ctx, p, q);
      if (!context_out.empty()) detail::write_context_to(context_out, apply_selection(ctx, sel));
      Json j = {{"p", p}, {"q", q}, {"objects", object_labels(ctx, sel.objects)},
                {"attributes", attribute_labels(ctx, sel.attributes)}};
      if (o.pretty) {
        detail::Sink sink(o.output, out);
        *sink << "objects (" << sel.objects.size() << "): " << detail::labels_line(ctx.objects(), sel.objects) << '\n';
        *sink << "attributes (" << sel.attributes.size()
              << "): " << detail::labels_line(ctx.attributes(), sel.attributes) << '\n';
      } else {
        dump(j);
      }
    } else if (scales->parsed()) {
      if (use_core && min_dim < 2) {
        err << "--core needs --min-dim of at least 2\n";
        return usage_error;
      }
      if (algorithm == "bronkerbosch" && (use_core || with_preprocess)) {
        err << "--core and --preprocess apply to contrafinder only\n";
        return usage_error;
      }
      EnumerationOptions opt;
      opt.threads = o.threads;
      opt.min_dimension = min_dim;
      opt.use_core = use_core;
      opt.preprocess = with_preprocess;
      detail::Sink sink(o.output, out);
      if (count_only) {
        ScaleHistogram h;
        if (algorithm == "bronkerbosch") {
          h = count_bronkerbosch(ctx);
          std::erase_if(h.by_dimension, [&](const auto& kv) { return kv.first < min_dim; });
        } else {
          h = count_contranominal_scales(ctx, opt);
        }
        if (o.pretty) {
          for (auto [k, n] : h.by_dimension) *sink << "dim " << k << ": " << n << '\n';
          *sink << "total: " << h.total() << '\n';
        } else {
          *sink << histogram_json(h).dump() << '\n';
        }
      } else {
        bool first = true;
        auto emit = [&](const ContranominalScale& s) {
          if (s.dimension() < min_dim) return true;
          if (o.pretty) {
            *sink << scale_line(ctx, s) << '\n';
          } else {
            *sink << (first ? "[\n" : ",\n") << scale_json(ctx, s).dump();
          }
          first = false;
          return true;
        };
        if (algorithm == "bronkerbosch") {
          for (const auto& s : enumerate_bronkerbosch(ctx)) emit(s);
        } else if (o.threads <= 1 && !use_core && !with_preprocess) {
          for_each_scale(ctx, emit);
        } else {
          for (const auto& s : enumerate_contrafinder(ctx, opt)) emit(s);
        }
        if (!o.pretty) *sink << (first ? "[]\n" : "\n]\n");
      }
    } else if (influence_cmd->parsed()) {
      const auto rep = influence(ctx, sem);
      IndexList chosen;
      if (mark_delta) chosen = select_by_influence(rep, *mark_delta);
      detail::Sink sink(o.output, out);
      if (as_csv) *sink << influence_csv(ctx, rep, chosen);
      else if (o.pretty) *sink << influence_table(ctx, rep, chosen);
      else *sink << influence_json(ctx, rep).dump() << '\n';
    } else if (adjust->parsed()) {
      const auto sel = delta_adjust(ctx, delta, sem);
      if (!context_out.empty()) detail::write_context_to(context_out, adjusted_context(ctx, sel));
      if (o.pretty) {
        detail::Sink sink(o.output, out);
        *sink << "delta " << delta << ": " << sel.attributes.size() << " of " << ctx.num_attributes() << " attributes\n";
        *sink << influence_table(ctx, sel.report, sel.attributes);
      } else {
        dump(selection_json(ctx, delta, sel.attributes));
      }
    } else if (concepts->parsed()) {
      detail::Sink sink(o.output, out);
      if (count_only) {
        const auto n = count_concepts(ctx);
        if (o.pretty) *sink << n << '\n';
        else *sink << Json{{"count", n}}.dump() << '\n';
      } else {
        const auto all = enumerate_concepts(ctx);
        if (o.pretty) {
          for (const auto& c : all)
            *sink << '{' << detail::labels_line(ctx.objects(), to_indices(c.extent)) << "} | {"
                  << detail::labels_line(ctx.attributes(), to_indices(c.intent)) << "}\n";
        } else {
          *sink << "[";
          for (std::size_t i = 0; i < all.size(); ++i) *sink << (i ? ",\n" : "\n") << concept_json(ctx, all[i]).dump();
          *sink << (all.empty() ? "]\n" : "\n]\n");
        }
      }
    } else if (base->parsed()) {
      const auto b = canonical_base(ctx);
      detail::Sink sink(o.output, out);
      if (count_only) {
        if (o.pretty) *sink << b.size() << '\n';
        else *sink << Json{{"count", b.size()}}.dump() << '\n';
      } else if (o.pretty) {
        for (const auto& imp : b) *sink << implication_line(ctx, imp) << '\n';
      } else {
        Json arr = Json::array();
        for (const auto& imp : b) arr.push_back(implication_json(ctx, imp));
        *sink << arr.dump() << '\n';
      }
    } else if (structure->parsed()) {
      const auto r = run_structure_experiment(ctx, delta, seed, samples, o.threads);
      if (o.pretty) {
        detail::Sink sink(o.output, out);
        *sink << std::fixed << std::setprecision(1);
        *sink << "                original  adjusted  sampled(mean of " << r.sampled_runs << ")\n";
        *sink << "attributes      " << std::setw(8) << r.attributes_original << "  " << std::setw(8)
              << r.attributes_adjusted << "  " << std::setw(8) << r.attributes_adjusted << '\n';
        *sink << "concepts        " << std::setw(8) << r.concepts_original << "  " << std::setw(8)
              << r.concepts_adjusted << "  " << std::setw(8) << r.concepts_sampled_mean << '\n';
        *sink << "canonical base  " << std::setw(8) << r.base_original << "  " << std::setw(8) << r.base_adjusted
              << "  " << std::setw(8) << r.base_sampled_mean << '\n';
      } else {
        dump(structure_json(r));
      }
    } else if (knowledge->parsed()) {
      std::vector<SelectionMethod> arms;
      if (method != "sampled") arms.push_back(SelectionMethod::adjusted);
      if (method != "adjusted") arms.push_back(SelectionMethod::sampled);
      Json all = Json::array();
      std::vector<ExperimentResult> results;
      for (auto arm : arms) {
        ExperimentConfig cfg;
        cfg.delta = delta;
        cfg.repetitions = repetitions;
        cfg.split_fraction = split;
        cfg.seed = seed;
        cfg.method = arm;
        cfg.threads = o.threads;
        results.push_back(run_knowledge_experiment(ctx, cfg));
        all.push_back(experiment_json(ctx, results.back(), !no_log));
      }
      if (o.pretty) {
        detail::Sink sink(o.output, out);
        *sink << std::fixed << std::setprecision(3);
        for (const auto& r : results)
          *sink << std::left << std::setw(10) << method_name(r.config.method) << " accuracy " << r.mean_accuracy
                << " (" << r.std_accuracy << ") over " << r.repetitions.size() << " repetitions\n";
      } else {
        dump(all);
      }
    } else if (bench->parsed()) {
      std::vector<Algorithm> algs;
      for (const auto& a : algorithms) algs.push_back(*parse_algorithm(a));
      const auto t = benchmark_enumeration(ctx, algs, std::chrono::duration<double>(timeout));
      if (o.pretty) {
        detail::Sink sink(o.output, out);
        for (const auto& e : t.entries) {
          *sink << std::left << std::setw(14) << algorithm_name(e.algorithm) << std::fixed << std::setprecision(3)
                << e.seconds << " s";
          if (e.finished) *sink << "  count " << e.count << "  max dim " << e.max_dimension << '\n';
          else *sink << "  timed out\n";
        }
        if (!t.consistent) *sink << "algorithms disagree\n";
      } else {
        dump(timing_json(t));
      }
    }
  } catch (const ContextError& e) {
    err << "error: " << e.what() << '\n';
    return data_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return data_error;
  }
  return ok;
}

}  // namespace contra::cli
