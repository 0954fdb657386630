#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace tsr {

// Step sizes and palette caps of the ordering-based construction.
//   k = ceil(Delta^{r-4/3} ln^2 Delta), K = Delta^{r-1} + k,
//   edge colours in [1, 2K+k+1], vertex colours in [1, K+1].
// Escalation level j replaces k by 2^j k (K follows).
struct Params {
  int r = 2;
  std::int64_t delta = 0;
  std::int64_t big_step = 0;    // K
  std::int64_t small_step = 0;  // k
  std::int64_t palette_cap = 0;
  std::int64_t vertex_cap = 0;
  int escalation_level = 0;

  // Next escalation: doubled small step. Throws ParameterOutOfRange on overflow.
  Params escalated() const;

  friend bool operator==(const Params&, const Params&) = default;
};

// Delta^{r-4/3} ln^2 Delta in double precision.
double small_step_real(std::int64_t delta, int r);

// Throws DegenerateGraph (Delta < 2), RadiusTooSmall (r < 2), or
// ParameterOutOfRange if any cap overflows int64.
Params derive_params(std::int64_t delta, int r);

// Builds params for an explicit small step (used by escalation and tests).
Params params_with_small_step(std::int64_t delta, int r, std::int64_t small_step);

struct TheoremBounds {
  long double improved;  // 2 Delta^{r-1} + 3 Delta^{r-4/3} ln^2 Delta + 4
  std::int64_t prior;    // 3 Delta^{r-1}
};

TheoremBounds theorem_bounds(std::int64_t delta, int r);

// A total colouring: colours for every vertex and every edge (by edge id).
struct TotalColoring {
  std::vector<std::int64_t> vertex_colors;
  std::vector<std::int64_t> edge_colors;
  std::int64_t max_color = 0;
  std::optional<Params> params_used;
  int escalations = 0;

  void recompute_max_color();
};

}  // namespace tsr
