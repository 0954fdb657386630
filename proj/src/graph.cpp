#include "tsr/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace tsr {

Graph Graph::build(std::size_t n, std::span<const Edge> edges) {
  Graph g;
  g.offsets_.assign(n + 1, 0);
  g.edges_.assign(edges.begin(), edges.end());

  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw Error(ErrorCode::VertexOutOfRange,
                  "edge " + std::to_string(i) + " (" + std::to_string(u) + "," + std::to_string(v) +
                      ") with n=" + std::to_string(n));
    }
    if (u == v) {
      throw Error(ErrorCode::LoopEdge, "edge " + std::to_string(i) + " at vertex " + std::to_string(u));
    }
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());

  std::vector<std::pair<Vertex, EdgeId>> slots(2 * edges.size());
  std::vector<std::int64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    slots[fill[u]++] = {v, static_cast<EdgeId>(i)};
    slots[fill[v]++] = {u, static_cast<EdgeId>(i)};
  }

  g.adjacency_.resize(slots.size());
  g.incident_.resize(slots.size());
  for (std::size_t v = 0; v < n; ++v) {
    auto first = slots.begin() + g.offsets_[v];
    auto last = slots.begin() + g.offsets_[v + 1];
    std::sort(first, last);
    for (auto it = first; it != last; ++it) {
      if (it != first && it->first == std::prev(it)->first) {
        throw Error(ErrorCode::DuplicateEdge,
                    "(" + std::to_string(v) + "," + std::to_string(it->first) + ")");
      }
      const auto idx = it - slots.begin();
      g.adjacency_[idx] = it->first;
      g.incident_[idx] = it->second;
    }
    g.max_degree_ = std::max(g.max_degree_, g.offsets_[v + 1] - g.offsets_[v]);
  }

  g.neighbor_degree_sum_.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (Vertex u : g.neighbors(static_cast<Vertex>(v))) {
      g.neighbor_degree_sum_[v] += g.degree(u);
    }
  }
  return g;
}

EdgeId Graph::find_edge(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v)) return -1;
  const auto nbrs = neighbors(u);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return -1;
  return incident_edges(u)[it - nbrs.begin()];
}

NeighborhoodScanner::NeighborhoodScanner(const Graph& g)
    : graph_(&g), stamp_(g.num_vertices(), 0) {}

void NeighborhoodScanner::collect(Vertex v, int r, std::vector<Vertex>& out) {
  if (!graph_->contains(v)) {
    throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v));
  }
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  stamp_[v] = epoch_;
  frontier_.assign(1, v);
  for (int depth = 0; depth < r && !frontier_.empty(); ++depth) {
    next_.clear();
    for (Vertex x : frontier_) {
      for (Vertex y : graph_->neighbors(x)) {
        if (stamp_[y] != epoch_) {
          stamp_[y] = epoch_;
          next_.push_back(y);
          out.push_back(y);
        }
      }
    }
    frontier_.swap(next_);
  }
}

std::vector<Vertex> r_neighborhood(const Graph& g, Vertex v, int r) {
  if (r < 1) throw Error(ErrorCode::RadiusTooSmall, "r=" + std::to_string(r));
  NeighborhoodScanner scanner(g);
  std::vector<Vertex> out;
  scanner.collect(v, r, out);
  std::sort(out.begin(), out.end());
  return out;
}

RNeighborhoods::RNeighborhoods(const Graph& g, int r) : r_(r) {
  if (r < 1) throw Error(ErrorCode::RadiusTooSmall, "r=" + std::to_string(r));
  const auto n = g.num_vertices();
  offsets_.reserve(n + 1);
  offsets_.push_back(0);
  NeighborhoodScanner scanner(g);
  for (std::size_t v = 0; v < n; ++v) {
    scanner.collect(static_cast<Vertex>(v), r, members_);
    offsets_.push_back(static_cast<std::int64_t>(members_.size()));
  }
  members_.shrink_to_fit();
}

bool is_small_degree(std::int64_t degree, std::int64_t max_degree) {
  const __int128 d = degree;
  const __int128 m = max_degree;
  return d * d * d <= m * m;
}

DegreePartition degree_partition(const Graph& g) {
  const auto n = g.num_vertices();
  DegreePartition part;
  part.cls.resize(n);
  part.small_neighbors.assign(n, 0);
  part.big_neighbors.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    part.cls[v] = is_small_degree(g.degree(static_cast<Vertex>(v)), g.max_degree()) ? DegreeClass::Small
                                                                                    : DegreeClass::Big;
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (Vertex u : g.neighbors(static_cast<Vertex>(v))) {
      if (part.is_big(u)) {
        ++part.big_neighbors[v];
      } else {
        ++part.small_neighbors[v];
      }
    }
  }
  return part;
}

std::int64_t checked_pow(std::int64_t base, int exponent) {
  if (exponent < 0) throw Error(ErrorCode::ParameterOutOfRange, "negative exponent");
  std::int64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(result, base, &result)) {
      throw Error(ErrorCode::ParameterOutOfRange,
                  std::to_string(base) + "^" + std::to_string(exponent) + " overflows int64");
    }
  }
  return result;
}

DrUpperBounds dr_upper_bounds(const Graph& g, Vertex v, int r) {
  if (r < 2) throw Error(ErrorCode::RadiusTooSmall, "r=" + std::to_string(r) + ", need r >= 2");
  if (!g.contains(v)) throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v));
  DrUpperBounds out{};
  const auto delta = g.max_degree();
  if (__builtin_mul_overflow(g.neighbor_degree_sum(v), checked_pow(delta, r - 2), &out.via_neighbor_degrees) ||
      __builtin_mul_overflow(g.degree(v), checked_pow(delta, r - 1), &out.via_degree)) {
    throw Error(ErrorCode::ParameterOutOfRange, "d^r bound overflows int64");
  }
  return out;
}

}  // namespace tsr
