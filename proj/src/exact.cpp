#include "tsr/exact.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace tsr {

namespace {

struct Element {
  bool is_vertex;
  std::int32_t id;
};

// Edges in order of their lower-indexed unplaced endpoint; each vertex
// placed as soon as all of its edges are.
std::vector<Element> element_order(const Graph& g) {
  const auto n = g.num_vertices();
  std::vector<Element> order;
  order.reserve(n + g.num_edges());
  std::vector<std::uint8_t> edge_placed(g.num_edges(), 0);
  std::vector<std::int64_t> missing(n);
  std::vector<std::uint8_t> vertex_placed(n, 0);
  for (std::size_t v = 0; v < n; ++v) missing[v] = g.degree(static_cast<Vertex>(v));

  auto place_if_complete = [&](Vertex w) {
    if (!vertex_placed[w] && missing[w] == 0) {
      vertex_placed[w] = 1;
      order.push_back({true, w});
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<Vertex>(i);
    for (EdgeId e : g.incident_edges(v)) {
      if (edge_placed[e]) continue;
      edge_placed[e] = 1;
      order.push_back({false, e});
      const auto [a, b] = g.edge(e);
      --missing[a];
      --missing[b];
      place_if_complete(std::min(a, b));
      place_if_complete(std::max(a, b));
    }
    place_if_complete(v);
  }
  return order;
}

class Search {
 public:
  Search(const Graph& g, int r, int palette, std::int64_t node_cap)
      : g_(g),
        palette_(palette),
        node_cap_(node_cap),
        order_(element_order(g)),
        vertex_color_(g.num_vertices(), 0),
        edge_color_(g.num_edges(), 0),
        partial_(g.num_vertices(), 0),
        complete_(g.num_vertices(), 0) {
    nbhd_.reserve(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      nbhd_.push_back(r_neighborhood(g, static_cast<Vertex>(v), r));
    }
  }

  bool solve() { return descend(0); }

  TotalColoring witness() const {
    TotalColoring out;
    out.vertex_colors.assign(vertex_color_.begin(), vertex_color_.end());
    out.edge_colors.assign(edge_color_.begin(), edge_color_.end());
    out.recompute_max_color();
    return out;
  }

 private:
  bool descend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const auto el = order_[depth];
    for (int c = 1; c <= palette_; ++c) {
      if (++nodes_ > node_cap_) {
        throw Error(ErrorCode::SearchBudgetExceeded,
                    "node cap " + std::to_string(node_cap_) + " reached at palette " + std::to_string(palette_));
      }
      if (el.is_vertex) {
        vertex_color_[el.id] = c;
        partial_[el.id] += c;
        if (!conflicts(el.id)) {
          complete_[el.id] = 1;
          if (descend(depth + 1)) return true;
          complete_[el.id] = 0;
        }
        partial_[el.id] -= c;
      } else {
        const auto [a, b] = g_.edge(el.id);
        edge_color_[el.id] = c;
        partial_[a] += c;
        partial_[b] += c;
        if (descend(depth + 1)) return true;
        partial_[a] -= c;
        partial_[b] -= c;
      }
    }
    return false;
  }

  bool conflicts(Vertex v) const {
    for (Vertex u : nbhd_[v]) {
      if (complete_[u] && partial_[u] == partial_[v]) return true;
    }
    return false;
  }

  const Graph& g_;
  int palette_;
  std::int64_t node_cap_;
  std::int64_t nodes_ = 0;
  std::vector<Element> order_;
  std::vector<std::vector<Vertex>> nbhd_;
  std::vector<std::int64_t> vertex_color_;
  std::vector<std::int64_t> edge_color_;
  std::vector<std::int64_t> partial_;  // running weight
  std::vector<std::uint8_t> complete_;
};

}  // namespace

std::optional<TotalColoring> is_colorable(const Graph& g, int r, int palette, std::int64_t node_cap) {
  if (r < 1) throw Error(ErrorCode::RadiusTooSmall, "r=" + std::to_string(r));
  if (palette < 1) throw Error(ErrorCode::ParameterOutOfRange, "palette must be >= 1");
  Search search(g, r, palette, node_cap);
  if (!search.solve()) return std::nullopt;
  return search.witness();
}

std::optional<StrengthResult> min_strength(const Graph& g, int r, int k_max, std::int64_t node_cap) {
  if (k_max < 1) throw Error(ErrorCode::ParameterOutOfRange, "k_max must be >= 1");
  for (int palette = 1; palette <= k_max; ++palette) {
    if (auto witness = is_colorable(g, r, palette, node_cap)) {
      return StrengthResult{palette, std::move(*witness)};
    }
  }
  return std::nullopt;
}

}  // namespace tsr
