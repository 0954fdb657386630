#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "tsr/graph.hpp"

namespace tsr::testing {

inline Graph make_graph(std::size_t n, std::initializer_list<Edge> edges) {
  std::vector<Edge> list(edges);
  return Graph::build(n, list);
}

inline Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph::build(n, e);
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph::build(n, e);
}

inline Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.push_back({u, v});
  return Graph::build(n, e);
}

inline Graph star_graph(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph::build(leaves + 1, e);
}

// Plain O(n^2) Erdos-Renyi sampler, separate from the library generator.
inline Graph random_graph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(gen)) e.push_back({u, v});
  return Graph::build(n, e);
}

inline constexpr int kUnreachable = 1 << 29;

// Floyd-Warshall over the raw edge list.
inline std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
  const auto n = g.num_vertices();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kUnreachable));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

}  // namespace tsr::testing
