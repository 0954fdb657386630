#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tsr/coloring.hpp"
#include "tsr/exact.hpp"
#include "tsr/io.hpp"
#include "tsr/ordering.hpp"
#include "tsr/verify.hpp"

namespace tsr {

namespace {

struct GlobalFlags {
  std::uint64_t seed = 0;
  int r = 2;
  bool check = false;
  int escalation_cap = 10;
};

struct GenFlags {
  std::string kind;
  GeneratorArgs args;
  std::string output;
};

struct ColorFlags {
  std::string graph;
  std::string output;
  std::string report;
  int max_attempts = 100;
  bool no_cache = false;
  std::int64_t small_step = 0;
};

struct VerifyFlags {
  std::string graph;
  std::string coloring;
  std::size_t list_limit = 20;
};

struct ExactFlags {
  std::string graph;
  int k_max = 10;
  std::int64_t node_cap = kDefaultNodeCap;
  std::string witness;
};

struct LemmaFlags {
  std::string graph;
  std::int64_t trials = 200;
  int max_attempts = 100;
};

struct BenchFlags {
  std::string family = "gnp";
  std::int64_t n = 300;
  std::vector<double> p{0.1};
  std::vector<std::int64_t> d{8};
  int seeds = 5;
  unsigned threads = 1;
  bool reports = false;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

RunOptions run_options(const GlobalFlags& global, int max_attempts, bool cache) {
  RunOptions opt;
  opt.seed = global.seed;
  opt.max_attempts = max_attempts;
  opt.escalation.cap = global.escalation_cap;
  opt.check_invariants = global.check;
  opt.cache_neighborhoods = cache;
  return opt;
}

int cmd_gen(const GlobalFlags& global, const GenFlags& flags, std::ostream& out) {
  const auto kind = parse_graph_kind(flags.kind);
  if (!kind) throw Error(ErrorCode::InvalidArgs, "unknown graph kind '" + flags.kind + "'");
  const auto g = generate_graph(*kind, flags.args, global.seed);
  if (flags.output.empty()) {
    write_graph(out, g);
  } else {
    write_graph(g, flags.output);
  }
  return kExitOk;
}

int cmd_color(const GlobalFlags& global, const ColorFlags& flags, std::ostream& out) {
  const auto g = read_graph(flags.graph);
  const auto start = std::chrono::steady_clock::now();
  auto opts = run_options(global, flags.max_attempts, !flags.no_cache);
  if (flags.small_step > 0) opts.small_step_override = flags.small_step;
  const auto run = run_algorithm(g, global.r, opts);
  const auto elapsed = seconds_since(start);
  write_coloring(flags.output, g, run.coloring, global.r);
  const auto report = format_run_report(make_run_report(g, global.r, global.seed, run, elapsed));
  if (flags.report.empty()) {
    out << report;
  } else {
    std::ofstream(flags.report) << report;
  }
  return kExitOk;
}

int cmd_verify(const GlobalFlags& global, bool r_given, const VerifyFlags& flags, std::ostream& out) {
  const auto g = read_graph(flags.graph);
  const auto file = read_coloring(flags.coloring, g);
  const int r = r_given ? global.r : file.r;
  const auto report = verify(g, file.coloring, r, file.caps());
  out << "valid=" << (report.valid ? 1 : 0) << '\n'
      << "r=" << r << '\n'
      << "conflicts=" << report.conflicts.size() << '\n'
      << "palette_ok=" << (report.palette_ok ? 1 : 0) << '\n'
      << "max_vertex_color=" << report.max_vertex_color << '\n'
      << "max_edge_color=" << report.max_edge_color << '\n';
  for (std::size_t i = 0; i < report.conflicts.size() && i < flags.list_limit; ++i) {
    out << "conflict " << report.conflicts[i].first << ' ' << report.conflicts[i].second << '\n';
  }
  return report.valid ? kExitOk : kExitInvalid;
}

int cmd_exact(const GlobalFlags& global, const ExactFlags& flags, std::ostream& out) {
  const auto g = read_graph(flags.graph);
  const auto result = min_strength(g, global.r, flags.k_max, flags.node_cap);
  if (!result) {
    out << "none\n";
    return kExitOk;
  }
  out << result->strength << '\n';
  if (!flags.witness.empty()) write_coloring(flags.witness, g, result->witness, global.r);
  return kExitOk;
}

int cmd_lemma_stats(const GlobalFlags& global, const LemmaFlags& flags, std::ostream& out) {
  const auto g = read_graph(flags.graph);
  const auto freq = estimate_event_frequency(g, global.r, flags.trials, global.seed);
  const double delta = static_cast<double>(g.max_degree());
  const double ln = std::log(delta);
  out << std::setprecision(6);
  out << "max_degree=" << g.max_degree() << '\n'
      << "r=" << global.r << '\n'
      << "trials=" << freq.trials << '\n'
      << "initial_threshold=" << initial_threshold(g.max_degree()) << '\n'
      << "tracking_threshold=" << tracking_threshold(g.max_degree()) << '\n'
      << "tracked_samples=" << freq.tracked_samples << '\n'
      << "empty_sample=" << (freq.empty_sample() ? 1 : 0) << '\n';
  const char* names[] = {"F1", "F2", "F3"};
  for (std::size_t i = 0; i < 3; ++i) {
    out << "violations_" << names[i] << '=' << freq.violations[i] << '\n'
        << "frequency_" << names[i] << '=' << freq.frequency[i] << '\n';
  }
  // Each event is a deviation of sqrt(mean) * ln(Delta) above/below a
  // binomial mean, so the tail bound is exp(-ln^2(Delta) / 3) per event.
  out << "chernoff_event_bound=" << std::exp(-ln * ln / 3.0) << '\n';
  out << "chernoff_event_bound_delta_pow=" << std::pow(delta, -3.0 * global.r) << '\n';

  const auto part = degree_partition(g);
  const RNeighborhoods nbhd(g, global.r);
  const auto search = search_ordering(g, part, global.r, &nbhd, global.seed, flags.max_attempts);
  out << "resample_attempts=" << search.attempts << '\n' << "resample_good=" << (search.good ? 1 : 0) << '\n';
  return kExitOk;
}

struct BenchRow {
  std::string label;
  std::uint64_t seed = 0;
  RunReport report;
  bool valid = false;
  std::string error;
};

int cmd_bench(const GlobalFlags& global, const BenchFlags& flags, std::ostream& out) {
  const auto kind = parse_graph_kind(flags.family);
  if (!kind) throw Error(ErrorCode::InvalidArgs, "unknown family '" + flags.family + "'");

  struct Instance {
    GeneratorArgs args;
    std::string label;
    std::uint64_t seed;
  };
  std::vector<Instance> instances;
  auto add_instances = [&](GeneratorArgs args, const std::string& label) {
    for (int s = 0; s < flags.seeds; ++s) instances.push_back({args, label, global.seed + static_cast<std::uint64_t>(s)});
  };
  if (*kind == GraphKind::Gnp) {
    for (double p : flags.p) {
      std::ostringstream label;
      label << "gnp(n=" << flags.n << ",p=" << p << ')';
      add_instances({flags.n, p, 0}, label.str());
    }
  } else if (*kind == GraphKind::Regular) {
    for (auto d : flags.d) add_instances({flags.n, 0.0, d}, "regular(n=" + std::to_string(flags.n) + ",d=" + std::to_string(d) + ")");
  } else {
    add_instances({flags.n, 0.0, 0}, std::string(to_string(*kind)) + "(n=" + std::to_string(flags.n) + ")");
  }

  std::vector<BenchRow> rows(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (auto i = next++; i < instances.size(); i = next++) {
      const auto& inst = instances[i];
      auto& row = rows[i];
      row.label = inst.label;
      row.seed = inst.seed;
      try {
        const auto g = generate_graph(*kind, inst.args, inst.seed);
        auto opts = run_options(global, 100, true);
        opts.seed = inst.seed;
        const auto start = std::chrono::steady_clock::now();
        const auto run = run_algorithm(g, global.r, opts);
        row.report = make_run_report(g, global.r, inst.seed, run, seconds_since(start));
        row.valid = verify(g, run.coloring, global.r, run.coloring.params_used).valid;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(flags.threads, static_cast<unsigned>(instances.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (flags.reports) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << "[instance " << i << "] " << rows[i].label << " seed=" << rows[i].seed << '\n';
      if (rows[i].error.empty()) out << format_run_report(rows[i].report);
      else out << "error=" << rows[i].error << '\n';
    }
  }

  out << std::left << std::setw(28) << "instance" << std::right << std::setw(6) << "seed" << std::setw(6) << "Delta"
      << std::setw(12) << "max_color" << std::setw(12) << "cap" << std::setw(14) << "bound_new" << std::setw(12)
      << "bound_prior" << std::setw(12) << "conjecture" << std::setw(5) << "esc" << std::setw(7) << "valid" << '\n';
  int status = kExitOk;
  for (const auto& row : rows) {
    out << std::left << std::setw(28) << row.label << std::right << std::setw(6) << row.seed;
    if (!row.error.empty()) {
      out << "  error: " << row.error << '\n';
      status = kExitInternal;
      continue;
    }
    const auto& rep = row.report;
    out << std::setw(6) << rep.max_degree << std::setw(12) << rep.max_color << std::setw(12)
        << (rep.params ? rep.params->palette_cap : 0);
    if (rep.bounds) {
      out << std::setw(14) << std::fixed << std::setprecision(1) << static_cast<double>(rep.bounds->improved)
          << std::setw(12) << rep.bounds->prior << std::setw(12) << checked_pow(rep.max_degree, rep.r - 1);
    } else {
      out << std::setw(14) << "-" << std::setw(12) << "-" << std::setw(12) << "-";
    }
    out << std::setw(5) << rep.escalations << std::setw(7) << (row.valid ? "yes" : "NO") << '\n';
    if (!row.valid && status == kExitOk) status = kExitInvalid;
  }
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance-r sum-distinguishing total colourings"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags global;
  auto* r_opt = app.add_option("--r", global.r, "Distance radius r")->capture_default_str();
  app.add_option("--seed", global.seed, "Random seed")->capture_default_str();
  app.add_flag("--assert", global.check, "Check construction invariants after every step");
  app.add_option("--escalation-cap", global.escalation_cap, "Maximum number of k-doublings")->capture_default_str();

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph file");
  gen_cmd->add_option("--kind", gen.kind, "path|cycle|complete|star|gnp|regular")->required();
  gen_cmd->add_option("--n", gen.args.n, "Vertex count")->required();
  gen_cmd->add_option("--p", gen.args.p, "Edge probability (gnp)");
  gen_cmd->add_option("--d", gen.args.d, "Degree (regular)");
  gen_cmd->add_option("-o,--output", gen.output, "Output file (default stdout)");

  ColorFlags color;
  auto* color_cmd = app.add_subcommand("color", "Colour a graph and print a run report");
  color_cmd->add_option("graph", color.graph, "Graph file")->required();
  color_cmd->add_option("-o,--output", color.output, "Colouring file to write")->required();
  color_cmd->add_option("--report", color.report, "Write the run report here instead of stdout");
  color_cmd->add_option("--max-attempts", color.max_attempts, "Ordering resample budget")->capture_default_str();
  color_cmd->add_flag("--no-cache", color.no_cache, "Recompute r-neighbourhoods instead of caching them");
  color_cmd->add_option("--small-step", color.small_step, "Start from this k instead of the derived one");

  VerifyFlags ver;
  auto* verify_cmd = app.add_subcommand("verify", "Check a colouring; exit 0 iff valid");
  verify_cmd->add_option("graph", ver.graph, "Graph file")->required();
  verify_cmd->add_option("coloring", ver.coloring, "Colouring file")->required();
  verify_cmd->add_option("--list", ver.list_limit, "Maximum conflicts to list")->capture_default_str();

  ExactFlags exact;
  auto* exact_cmd = app.add_subcommand("exact", "Compute ts_r exactly by backtracking");
  exact_cmd->add_option("graph", exact.graph, "Graph file")->required();
  exact_cmd->add_option("--k-max", exact.k_max, "Largest palette to try")->capture_default_str();
  exact_cmd->add_option("--node-cap", exact.node_cap, "Search node budget per palette")->capture_default_str();
  exact_cmd->add_option("--witness", exact.witness, "Write the optimal colouring here");

  LemmaFlags lemma;
  auto* lemma_cmd = app.add_subcommand("lemma-stats", "Estimate ordering-property violation frequencies");
  lemma_cmd->add_option("graph", lemma.graph, "Graph file")->required();
  lemma_cmd->add_option("--trials", lemma.trials, "Sampled orderings")->capture_default_str();
  lemma_cmd->add_option("--max-attempts", lemma.max_attempts, "Resample budget")->capture_default_str();

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "Sweep a graph family and tabulate palettes against bounds");
  bench_cmd->add_option("--family", bench.family, "gnp|regular|path|cycle|complete|star")->capture_default_str();
  bench_cmd->add_option("--n", bench.n, "Vertex count")->capture_default_str();
  bench_cmd->add_option("--p", bench.p, "Edge probabilities (gnp)")->delimiter(',');
  bench_cmd->add_option("--d", bench.d, "Degrees (regular)")->delimiter(',');
  bench_cmd->add_option("--seeds", bench.seeds, "Seeds per configuration")->capture_default_str();
  bench_cmd->add_option("--threads", bench.threads, "Worker threads")->capture_default_str();
  bench_cmd->add_flag("--reports", bench.reports, "Emit a run report per instance");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(global, gen, out);
    if (*color_cmd) return cmd_color(global, color, out);
    if (*verify_cmd) return cmd_verify(global, r_opt->count() > 0, ver, out);
    if (*exact_cmd) return cmd_exact(global, exact, out);
    if (*lemma_cmd) return cmd_lemma_stats(global, lemma, out);
    if (*bench_cmd) return cmd_bench(global, bench, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::InvalidArgs ? kExitUsage : kExitInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace tsr
