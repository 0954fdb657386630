#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tsr/graph.hpp"
#include "tsr/params.hpp"

namespace tsr {

// Independent checker. Shares nothing with the construction beyond the
// Graph: weights are recomputed from raw colours and r-neighbourhoods come
// from a separate truncated BFS.

using VertexPair = std::pair<Vertex, Vertex>;

// f(v) + sum of colours of edges incident to v. Throws VertexOutOfRange.
std::int64_t vertex_weight(const TotalColoring& coloring, const Graph& g, Vertex v);

// All pairs u < v with 1 <= dist(u, v) <= r and equal weights, sorted.
// Throws InvalidArgs if the colouring does not cover the graph.
std::vector<VertexPair> find_conflicts(const Graph& g, const TotalColoring& coloring, int r);

struct PaletteCheck {
  bool ok = true;
  std::int64_t max_vertex_color = 0;
  std::int64_t max_edge_color = 0;
};

// Vertex colours in [1, vertex_cap], edge colours in [1, edge_cap].
PaletteCheck check_palette(const TotalColoring& coloring, std::int64_t vertex_cap, std::int64_t edge_cap);
// Vertex colours in [1, K+1], edge colours in [1, 2K+k+1].
PaletteCheck check_palette(const TotalColoring& coloring, const Params& p);

struct VerifyReport {
  bool valid = false;
  std::vector<VertexPair> conflicts;
  bool palette_ok = false;
  std::int64_t max_vertex_color = 0;
  std::int64_t max_edge_color = 0;
};

// With no params, the palette check only requires every colour >= 1.
VerifyReport verify(const Graph& g, const TotalColoring& coloring, int r,
                    const std::optional<Params>& params = std::nullopt);

}  // namespace tsr
