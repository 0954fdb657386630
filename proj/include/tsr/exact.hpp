#pragma once

#include <cstdint>
#include <optional>

#include "tsr/graph.hpp"
#include "tsr/params.hpp"

namespace tsr {

inline constexpr std::int64_t kDefaultNodeCap = 100'000'000;

// Backtracking search for a total colouring with colours in [1, palette]
// and no conflicts between r-neighbours. Elements are coloured edge by
// edge, each vertex directly after its last incident edge; a vertex's
// weight is compared against its already complete r-neighbours as soon as
// it is coloured.
//
// Returns nullopt only when the search space is exhausted. Throws
// SearchBudgetExceeded once node_cap colour assignments have been tried.
std::optional<TotalColoring> is_colorable(const Graph& g, int r, int palette,
                                          std::int64_t node_cap = kDefaultNodeCap);

struct StrengthResult {
  int strength = 0;
  TotalColoring witness;
};

// Least palette <= k_max admitting a colouring (ts_r), with its witness.
std::optional<StrengthResult> min_strength(const Graph& g, int r, int k_max,
                                           std::int64_t node_cap = kDefaultNodeCap);

}  // namespace tsr
