#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tsr/error.hpp"

namespace tsr {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph in CSR form. Neighbour lists are sorted
// ascending; incident_edges(v)[i] is the id of the edge {v, neighbors(v)[i]}.
// Edge ids follow input order.
class Graph {
 public:
  Graph() = default;

  // Throws LoopEdge, DuplicateEdge or VertexOutOfRange.
  static Graph build(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::span<const EdgeId> incident_edges(Vertex v) const {
    return {incident_.data() + offsets_[v], incident_.data() + offsets_[v + 1]};
  }

  std::int64_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::int64_t max_degree() const noexcept { return max_degree_; }
  // D(v): sum of the degrees of the neighbours of v.
  std::int64_t neighbor_degree_sum(Vertex v) const { return neighbor_degree_sum_[v]; }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  // Edge id joining u and v, or -1 if they are not adjacent.
  EdgeId find_edge(Vertex u, Vertex v) const;

  bool contains(Vertex v) const noexcept {
    return v >= 0 && static_cast<std::size_t>(v) < num_vertices();
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::int64_t> offsets_;
  std::vector<Vertex> adjacency_;
  std::vector<EdgeId> incident_;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> neighbor_degree_sum_;
  std::int64_t max_degree_ = 0;
};

// N^r(v) = {u != v : dist(u, v) <= r}, sorted ascending.
std::vector<Vertex> r_neighborhood(const Graph& g, Vertex v, int r);

// Reusable truncated-BFS scanner; amortises the visited array across queries.
class NeighborhoodScanner {
 public:
  explicit NeighborhoodScanner(const Graph& g);

  // Appends N^r(v) to out in BFS discovery order.
  void collect(Vertex v, int r, std::vector<Vertex>& out);

 private:
  const Graph* graph_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<Vertex> frontier_;
  std::vector<Vertex> next_;
};

// All r-neighbourhoods of a graph, stored contiguously. Memory is
// proportional to the sum of d^r(v).
class RNeighborhoods {
 public:
  RNeighborhoods(const Graph& g, int r);

  int radius() const noexcept { return r_; }
  std::span<const Vertex> of(Vertex v) const {
    return {members_.data() + offsets_[v], members_.data() + offsets_[v + 1]};
  }
  std::size_t total_size() const noexcept { return members_.size(); }

 private:
  int r_;
  std::vector<std::int64_t> offsets_;
  std::vector<Vertex> members_;
};

enum class DegreeClass : std::uint8_t { Small, Big };

// Small: d(v)^3 <= Delta^2, i.e. d(v) <= Delta^{2/3} evaluated exactly.
struct DegreePartition {
  std::vector<DegreeClass> cls;
  std::vector<std::int64_t> small_neighbors;
  std::vector<std::int64_t> big_neighbors;

  bool is_big(Vertex v) const { return cls[v] == DegreeClass::Big; }
};

bool is_small_degree(std::int64_t degree, std::int64_t max_degree);

DegreePartition degree_partition(const Graph& g);

struct DrUpperBounds {
  std::int64_t via_neighbor_degrees;  // D(v) * Delta^{r-2}
  std::int64_t via_degree;            // d(v) * Delta^{r-1}
};

// Throws RadiusTooSmall for r < 2 and ParameterOutOfRange on int64 overflow.
DrUpperBounds dr_upper_bounds(const Graph& g, Vertex v, int r);

// Exact integer power; throws ParameterOutOfRange on overflow.
std::int64_t checked_pow(std::int64_t base, int exponent);

}  // namespace tsr
