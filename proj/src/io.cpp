#include "tsr/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tsr {

namespace {

std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % bound;
}

double unit_open_low(std::mt19937_64& gen) {
  // (0, 1]
  return (static_cast<double>(gen() >> 11) + 1.0) * 0x1.0p-53;
}

void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InvalidArgs, what);
}

std::uint64_t edge_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

std::vector<Edge> gnp_edges(std::int64_t n, double p, std::mt19937_64& gen) {
  std::vector<Edge> edges;
  if (p <= 0.0 || n < 2) return edges;
  if (p >= 1.0) {
    for (std::int64_t v = 1; v < n; ++v) {
      for (std::int64_t u = 0; u < v; ++u) edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    return edges;
  }
  // Geometric skipping over the lower triangle.
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    w += 1 + static_cast<std::int64_t>(std::floor(std::log(unit_open_low(gen)) / log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.push_back({static_cast<Vertex>(w), static_cast<Vertex>(v)});
  }
  return edges;
}

// True if some two distinct leftover stub owners are not yet adjacent.
bool pairable(const std::vector<Vertex>& stubs, const std::unordered_set<std::uint64_t>& present) {
  if (stubs.empty()) return true;
  std::vector<Vertex> owners(stubs);
  std::sort(owners.begin(), owners.end());
  owners.erase(std::unique(owners.begin(), owners.end()), owners.end());
  for (std::size_t i = 0; i < owners.size(); ++i) {
    for (std::size_t j = i + 1; j < owners.size(); ++j) {
      if (!present.contains(edge_key(owners[i], owners[j]))) return true;
    }
  }
  return false;
}

std::vector<Edge> regular_edges(std::int64_t n, std::int64_t d, std::mt19937_64& gen) {
  constexpr int kMaxRestarts = 10000;
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> present;
    present.reserve(static_cast<std::size_t>(n * d));
    std::vector<Vertex> stubs;
    stubs.reserve(static_cast<std::size_t>(n * d));
    for (std::int64_t v = 0; v < n; ++v) {
      for (std::int64_t i = 0; i < d; ++i) stubs.push_back(static_cast<Vertex>(v));
    }
    bool stuck = false;
    while (!stubs.empty()) {
      for (std::size_t i = stubs.size() - 1; i > 0; --i) {
        std::swap(stubs[i], stubs[uniform_below(gen, i + 1)]);
      }
      std::vector<Vertex> leftover;
      for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        const auto u = stubs[i];
        const auto v = stubs[i + 1];
        if (u != v && present.insert(edge_key(u, v)).second) {
          edges.push_back({std::min(u, v), std::max(u, v)});
        } else {
          leftover.push_back(u);
          leftover.push_back(v);
        }
      }
      if (!pairable(leftover, present)) {
        stuck = true;
        break;
      }
      stubs.swap(leftover);
    }
    if (!stuck) {
      std::sort(edges.begin(), edges.end(),
                [](const Edge& a, const Edge& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
      return edges;
    }
  }
  throw Error(ErrorCode::InvalidArgs, "regular graph generation did not converge");
}

[[noreturn]] void parse_failure(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

// Reads the next non-blank, non-comment line; false at end of input.
bool next_record(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

template <std::size_t N>
std::array<std::int64_t, N> parse_fields(const std::string& line, std::size_t line_no) {
  std::istringstream ss(line);
  std::array<std::int64_t, N> out{};
  for (auto& x : out) {
    if (!(ss >> x)) parse_failure(line_no, "expected " + std::to_string(N) + " integers in '" + line + "'");
  }
  std::string extra;
  if (ss >> extra) parse_failure(line_no, "trailing token '" + extra + "'");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  return out;
}

}  // namespace

std::optional<GraphKind> parse_graph_kind(std::string_view name) {
  if (name == "path") return GraphKind::Path;
  if (name == "cycle") return GraphKind::Cycle;
  if (name == "complete") return GraphKind::Complete;
  if (name == "star") return GraphKind::Star;
  if (name == "gnp") return GraphKind::Gnp;
  if (name == "regular") return GraphKind::Regular;
  return std::nullopt;
}

const char* to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::Path: return "path";
    case GraphKind::Cycle: return "cycle";
    case GraphKind::Complete: return "complete";
    case GraphKind::Star: return "star";
    case GraphKind::Gnp: return "gnp";
    case GraphKind::Regular: return "regular";
  }
  return "unknown";
}

Graph generate_graph(GraphKind kind, const GeneratorArgs& args, std::uint64_t seed) {
  const auto n = args.n;
  require(n >= 1 && n <= std::numeric_limits<Vertex>::max(), "n must be in [1, 2^31)");
  std::vector<Edge> edges;
  auto vx = [](std::int64_t i) { return static_cast<Vertex>(i); };
  switch (kind) {
    case GraphKind::Path:
      for (std::int64_t i = 0; i + 1 < n; ++i) edges.push_back({vx(i), vx(i + 1)});
      break;
    case GraphKind::Cycle:
      require(n >= 3, "cycle needs n >= 3");
      for (std::int64_t i = 0; i < n; ++i) edges.push_back({vx(i), vx((i + 1) % n)});
      break;
    case GraphKind::Complete:
      for (std::int64_t u = 0; u < n; ++u) {
        for (std::int64_t v = u + 1; v < n; ++v) edges.push_back({vx(u), vx(v)});
      }
      break;
    case GraphKind::Star:
      for (std::int64_t i = 1; i < n; ++i) edges.push_back({0, vx(i)});
      break;
    case GraphKind::Gnp: {
      require(args.p >= 0.0 && args.p <= 1.0, "gnp needs 0 <= p <= 1");
      std::mt19937_64 gen(seed);
      edges = gnp_edges(n, args.p, gen);
      break;
    }
    case GraphKind::Regular: {
      require(args.d >= 0 && args.d < n, "regular needs 0 <= d < n");
      require((n * args.d) % 2 == 0, "regular needs n*d even");
      std::mt19937_64 gen(seed);
      if (args.d > 0) edges = regular_edges(n, args.d, gen);
      break;
    }
  }
  return Graph::build(static_cast<std::size_t>(n), edges);
}

Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_record(in, line, line_no)) parse_failure(line_no, "missing header 'n m'");
  const auto [n, m] = parse_fields<2>(line, line_no);
  if (n < 0 || m < 0) parse_failure(line_no, "negative count in header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    if (!next_record(in, line, line_no)) {
      parse_failure(line_no, "expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    }
    const auto [u, v] = parse_fields<2>(line, line_no);
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw Error(ErrorCode::VertexOutOfRange, "line " + std::to_string(line_no) + ": edge (" +
                                                   std::to_string(u) + "," + std::to_string(v) + ")");
    }
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (next_record(in, line, line_no)) parse_failure(line_no, "more edge lines than the header's m");
  return Graph::build(static_cast<std::size_t>(n), edges);
}

Graph read_graph(const std::string& path) {
  auto in = open_in(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_graph(const Graph& g, const std::string& path) {
  auto out = open_out(path);
  write_graph(out, g);
}

std::optional<Params> ColoringFile::caps() const {
  if (big_step <= 0) return std::nullopt;
  Params p;
  p.r = r;
  p.big_step = big_step;
  p.small_step = small_step;
  p.vertex_cap = big_step + 1;
  p.palette_cap = 2 * big_step + small_step + 1;
  return p;
}

ColoringFile read_coloring(std::istream& in, const Graph& g) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_record(in, line, line_no)) parse_failure(line_no, "missing header 'n m r K k'");
  const auto header = parse_fields<5>(line, line_no);
  if (header[0] != static_cast<std::int64_t>(g.num_vertices()) ||
      header[1] != static_cast<std::int64_t>(g.num_edges())) {
    parse_failure(line_no, "header n/m do not match the graph");
  }
  ColoringFile file;
  file.r = static_cast<int>(header[2]);
  file.big_step = header[3];
  file.small_step = header[4];

  constexpr std::int64_t kUnset = std::numeric_limits<std::int64_t>::min();
  auto& coloring = file.coloring;
  coloring.vertex_colors.assign(g.num_vertices(), kUnset);
  coloring.edge_colors.assign(g.num_edges(), kUnset);
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    if (!next_record(in, line, line_no)) parse_failure(line_no, "missing vertex lines");
    const auto [v, c] = parse_fields<2>(line, line_no);
    if (v < 0 || v >= static_cast<std::int64_t>(g.num_vertices())) parse_failure(line_no, "vertex out of range");
    if (coloring.vertex_colors[v] != kUnset) parse_failure(line_no, "vertex " + std::to_string(v) + " repeated");
    coloring.vertex_colors[v] = c;
  }
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    if (!next_record(in, line, line_no)) parse_failure(line_no, "missing edge lines");
    const auto [u, v, c] = parse_fields<3>(line, line_no);
    const auto e = g.find_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    if (e < 0) parse_failure(line_no, "(" + std::to_string(u) + "," + std::to_string(v) + ") is not an edge");
    if (coloring.edge_colors[e] != kUnset) parse_failure(line_no, "edge repeated");
    coloring.edge_colors[e] = c;
  }
  if (next_record(in, line, line_no)) parse_failure(line_no, "unexpected trailing record");
  coloring.recompute_max_color();
  return file;
}

ColoringFile read_coloring(const std::string& path, const Graph& g) {
  auto in = open_in(path);
  return read_coloring(in, g);
}

void write_coloring(std::ostream& out, const Graph& g, const TotalColoring& coloring, int r) {
  const auto& p = coloring.params_used;
  out << g.num_vertices() << ' ' << g.num_edges() << ' ' << r << ' ' << (p ? p->big_step : 0) << ' '
      << (p ? p->small_step : 0) << '\n';
  for (std::size_t v = 0; v < g.num_vertices(); ++v) out << v << ' ' << coloring.vertex_colors[v] << '\n';
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto& edge = g.edge(static_cast<EdgeId>(e));
    out << edge.u << ' ' << edge.v << ' ' << coloring.edge_colors[e] << '\n';
  }
}

void write_coloring(const std::string& path, const Graph& g, const TotalColoring& coloring, int r) {
  auto out = open_out(path);
  write_coloring(out, g, coloring, r);
}

RunReport make_run_report(const Graph& g, int r, std::uint64_t seed, const ColoringRun& run, double wall_seconds) {
  RunReport rep;
  rep.n = g.num_vertices();
  rep.m = g.num_edges();
  rep.max_degree = g.max_degree();
  rep.r = r;
  rep.seed = seed;
  rep.params = run.coloring.params_used;
  if (g.max_degree() >= 2) {
    rep.base_params = derive_params(g.max_degree(), r);
    rep.bounds = theorem_bounds(g.max_degree(), r);
  }
  rep.max_color = run.coloring.max_color;
  rep.escalations = run.coloring.escalations;
  rep.resample_attempts = run.telemetry.resample_attempts;
  rep.ordering_good = run.telemetry.ordering_good;
  rep.lemma_violations = run.telemetry.lemma_violations;
  rep.tracked = run.telemetry.tracked;
  rep.min_option_margin = run.telemetry.min_option_margin;
  rep.wall_seconds = wall_seconds;
  return rep;
}

std::string format_run_report(const RunReport& rep) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "n=" << rep.n << '\n' << "m=" << rep.m << '\n' << "max_degree=" << rep.max_degree << '\n';
  out << "r=" << rep.r << '\n' << "seed=" << rep.seed << '\n';
  if (rep.params) {
    out << "K=" << rep.params->big_step << '\n'
        << "k=" << rep.params->small_step << '\n'
        << "palette_cap=" << rep.params->palette_cap << '\n';
  }
  if (rep.base_params) out << "base_palette_cap=" << rep.base_params->palette_cap << '\n';
  if (rep.bounds) {
    out << "bound_new=" << static_cast<double>(rep.bounds->improved) << '\n'
        << "bound_prior=" << rep.bounds->prior << '\n';
  }
  out << "max_color=" << rep.max_color << '\n'
      << "escalations=" << rep.escalations << '\n'
      << "resample_attempts=" << rep.resample_attempts << '\n'
      << "ordering_good=" << (rep.ordering_good ? 1 : 0) << '\n'
      << "lemma_violations=" << rep.lemma_violations << '\n'
      << "tracked=" << rep.tracked << '\n'
      << "min_option_margin=" << rep.min_option_margin << '\n'
      << std::setprecision(3) << "wall_seconds=" << rep.wall_seconds << '\n';
  return out.str();
}

}  // namespace tsr
