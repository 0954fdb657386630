#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "tsr/coloring.hpp"
#include "tsr/graph.hpp"
#include "tsr/params.hpp"

namespace tsr {

enum class GraphKind { Path, Cycle, Complete, Star, Gnp, Regular };

std::optional<GraphKind> parse_graph_kind(std::string_view name);
const char* to_string(GraphKind kind);

struct GeneratorArgs {
  std::int64_t n = 0;
  double p = 0.0;        // gnp
  std::int64_t d = 0;    // regular
};

// Deterministic for fixed (kind, args, seed). path/cycle/complete/star use
// n (star: centre 0 and n-1 leaves); gnp uses (n, p); regular uses (n, d)
// with n*d even, built by random stub pairing that rejects loops and
// repeated edges and restarts when the remaining stubs cannot be paired.
// Throws InvalidArgs.
Graph generate_graph(GraphKind kind, const GeneratorArgs& args, std::uint64_t seed);

// Graph file: header "n m", then m lines "u v"; '#' lines and blank lines
// are skipped. Throws ParseError (with the line number) or the
// validation errors of Graph::build.
Graph read_graph(std::istream& in);
Graph read_graph(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph(const Graph& g, const std::string& path);

// Colouring file: header "n m r K k", n lines "v colour", then m lines
// "u v colour" in edge-id order.
struct ColoringFile {
  int r = 0;
  std::int64_t big_step = 0;    // K, 0 when no params apply
  std::int64_t small_step = 0;  // k
  TotalColoring coloring;

  // Palette caps implied by the header, if K > 0.
  std::optional<Params> caps() const;
};

ColoringFile read_coloring(std::istream& in, const Graph& g);
ColoringFile read_coloring(const std::string& path, const Graph& g);
void write_coloring(std::ostream& out, const Graph& g, const TotalColoring& coloring, int r);
void write_coloring(const std::string& path, const Graph& g, const TotalColoring& coloring, int r);

struct RunReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::int64_t max_degree = 0;
  int r = 0;
  std::uint64_t seed = 0;
  std::optional<Params> params;       // params actually used
  std::optional<Params> base_params;  // before escalation
  std::optional<TheoremBounds> bounds;
  std::int64_t max_color = 0;
  int escalations = 0;
  int resample_attempts = 0;
  bool ordering_good = false;
  std::size_t lemma_violations = 0;
  std::size_t tracked = 0;
  std::int64_t min_option_margin = 0;
  double wall_seconds = 0.0;
};

RunReport make_run_report(const Graph& g, int r, std::uint64_t seed, const ColoringRun& run, double wall_seconds);

// Line-oriented key=value rendering.
std::string format_run_report(const RunReport& report);

}  // namespace tsr
