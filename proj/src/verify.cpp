#include "tsr/verify.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace tsr {

namespace {

void require_cover(const Graph& g, const TotalColoring& coloring) {
  if (coloring.vertex_colors.size() != g.num_vertices() || coloring.edge_colors.size() != g.num_edges()) {
    throw Error(ErrorCode::InvalidArgs, "colouring covers " + std::to_string(coloring.vertex_colors.size()) +
                                            " vertices / " + std::to_string(coloring.edge_colors.size()) +
                                            " edges, graph has " + std::to_string(g.num_vertices()) + " / " +
                                            std::to_string(g.num_edges()));
  }
}

}  // namespace

std::int64_t vertex_weight(const TotalColoring& coloring, const Graph& g, Vertex v) {
  if (!g.contains(v)) throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v));
  std::int64_t w = coloring.vertex_colors.at(v);
  for (EdgeId e : g.incident_edges(v)) w += coloring.edge_colors.at(e);
  return w;
}

std::vector<VertexPair> find_conflicts(const Graph& g, const TotalColoring& coloring, int r) {
  if (r < 1) throw Error(ErrorCode::RadiusTooSmall, "r=" + std::to_string(r));
  require_cover(g, coloring);
  const auto n = g.num_vertices();
  std::vector<std::int64_t> weight(n);
  for (std::size_t v = 0; v < n; ++v) weight[v] = vertex_weight(coloring, g, static_cast<Vertex>(v));

  std::vector<VertexPair> conflicts;
  std::vector<int> dist(n, -1);
  std::vector<Vertex> touched;
  std::queue<Vertex> queue;
  for (std::size_t s = 0; s < n; ++s) {
    const auto source = static_cast<Vertex>(s);
    dist[s] = 0;
    touched.assign(1, source);
    queue.push(source);
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop();
      if (x > source && weight[x] == weight[s]) conflicts.emplace_back(source, x);
      if (dist[x] == r) continue;
      for (Vertex y : g.neighbors(x)) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          touched.push_back(y);
          queue.push(y);
        }
      }
    }
    for (Vertex x : touched) dist[x] = -1;
  }
  std::sort(conflicts.begin(), conflicts.end());
  return conflicts;
}

PaletteCheck check_palette(const TotalColoring& coloring, std::int64_t vertex_cap, std::int64_t edge_cap) {
  PaletteCheck out;
  for (auto c : coloring.vertex_colors) {
    out.max_vertex_color = std::max(out.max_vertex_color, c);
    if (c < 1 || c > vertex_cap) out.ok = false;
  }
  for (auto c : coloring.edge_colors) {
    out.max_edge_color = std::max(out.max_edge_color, c);
    if (c < 1 || c > edge_cap) out.ok = false;
  }
  return out;
}

PaletteCheck check_palette(const TotalColoring& coloring, const Params& p) {
  return check_palette(coloring, p.vertex_cap, p.palette_cap);
}

VerifyReport verify(const Graph& g, const TotalColoring& coloring, int r, const std::optional<Params>& params) {
  VerifyReport report;
  report.conflicts = find_conflicts(g, coloring, r);
  constexpr auto unbounded = std::numeric_limits<std::int64_t>::max();
  const auto palette = params ? check_palette(coloring, *params) : check_palette(coloring, unbounded, unbounded);
  report.palette_ok = palette.ok;
  report.max_vertex_color = palette.max_vertex_color;
  report.max_edge_color = palette.max_edge_color;
  report.valid = report.conflicts.empty() && report.palette_ok;
  return report;
}

}  // namespace tsr
