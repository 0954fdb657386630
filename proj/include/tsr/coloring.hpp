#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tsr/graph.hpp"
#include "tsr/ordering.hpp"
#include "tsr/params.hpp"

namespace tsr {

// Closed integer interval [lo, hi].
struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::int64_t count() const noexcept { return hi - lo + 1; }
  bool contains(std::int64_t x) const noexcept { return lo <= x && x <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

using DeltaInterval = Interval;

// Working colours c_t of the construction together with cached weights
// w_{c_t}(v) and fixed targets w_f(v). A vertex is "processed" once its
// target has been fixed; the slack w_f(v) - w_{c_t}(v) must then stay in
// [0, K]. The graph must outlive the state.
class ColoringState {
 public:
  ColoringState(const Graph& g, const Params& p);

  const Graph& graph() const noexcept { return *graph_; }

  std::int64_t vertex_color(Vertex v) const { return vertex_color_[v]; }
  std::int64_t edge_color(EdgeId e) const { return edge_color_[e]; }
  std::int64_t weight(Vertex v) const { return weight_[v]; }
  bool processed(Vertex v) const { return processed_[v] != 0; }
  std::optional<std::int64_t> target(Vertex v) const;
  // Requires processed(v).
  std::int64_t slack(Vertex v) const { return target_[v] - weight_[v]; }

  // Adds delta to the colour of edge e and updates both endpoint weights.
  void shift_edge(EdgeId e, std::int64_t delta);
  void fix_target(Vertex v, std::int64_t target);
  // Adds the slack of every processed vertex to its colour.
  void finalize_vertex_colors();

  // Weight recomputed from raw colours, bypassing the cache.
  std::int64_t recompute_weight(Vertex v) const;

  std::span<const std::int64_t> vertex_colors() const noexcept { return vertex_color_; }
  std::span<const std::int64_t> edge_colors() const noexcept { return edge_color_; }

 private:
  const Graph* graph_;
  std::vector<std::int64_t> vertex_color_;
  std::vector<std::int64_t> edge_color_;
  std::vector<std::int64_t> weight_;
  std::vector<std::int64_t> target_;
  std::vector<std::uint8_t> processed_;
};

// Vertex colours 1, edge colours K+1.
ColoringState init_state(const Graph& g, const Params& p);

// Admitted additive range for edge vu while v is processed. u unprocessed
// (forward edge): [0, K] if v is Small and u is Big, else [0, k]. u processed
// (backward edge): [-K, K] if u is Big, else [-k, k], intersected with
// [s_u - K, s_u] so u keeps 0 <= slack <= K.
DeltaInterval edge_delta_interval(const ColoringState& state, const Params& p, const DegreePartition& part,
                                  Vertex v, Vertex u);

// Exact set of weights reachable by v through admitted alterations.
Interval feasible_sum_interval(const ColoringState& state, const Params& p, const DegreePartition& part,
                               Vertex v);

// Smallest value in `feasible` not in `forbidden`, if any.
std::optional<std::int64_t> choose_target(Interval feasible, std::span<const std::int64_t> forbidden);

// Distributes target - w(v) over the edges of v, backward edges first, each
// group by ascending neighbour index, saturating each edge in turn; then
// fixes w_f(v) = target. Throws InfeasibleTarget if target is unreachable.
void apply_target(ColoringState& state, const Params& p, const DegreePartition& part, Vertex v,
                  std::int64_t target);

enum class AvailabilityCase : std::uint8_t {
  Degenerate,         // isolated vertex
  InitialBigHeavy,    // v in I, v Big, b(v) >= Delta^{1/3} ln Delta
  Small,              // v Small
  BigLight,           // v Big, b(v) < Delta^{1/3} ln Delta
  RemainingBigHeavy,  // v in R, v Big, b(v) >= Delta^{1/3} ln Delta
};

inline constexpr std::size_t kAvailabilityCaseCount = 5;

const char* to_string(AvailabilityCase c);

struct AvailabilityAudit {
  std::int64_t options = 0;
  std::int64_t backward_r = 0;
  AvailabilityCase kind = AvailabilityCase::Degenerate;
};

AvailabilityAudit availability_audit(const ColoringState& state, const Params& p, const DegreePartition& part,
                                     const BackwardStats& stats, const RandomOrdering& ord, Vertex v);

struct EscalationPolicy {
  int cap = 10;  // maximum number of k-doublings
};

struct RunOptions {
  std::uint64_t seed = 0;
  int max_attempts = 100;
  EscalationPolicy escalation;
  bool check_invariants = false;
  bool cache_neighborhoods = true;
  // Start from this k instead of the derived one; K follows as Delta^{r-1} + k.
  std::optional<std::int64_t> small_step_override;
};

struct RunTelemetry {
  int resample_attempts = 0;
  bool ordering_good = false;
  std::size_t lemma_violations = 0;
  std::size_t tracked = 0;
  // Smallest (options - backward r-neighbours) over non-isolated vertices,
  // measured with the params of the final attempt.
  std::int64_t min_option_margin = 0;
  std::array<std::int64_t, kAvailabilityCaseCount> case_counts{};
  std::size_t neighborhood_entries = 0;  // cached r-neighbourhood size, 0 when not cached
};

struct ColoringRun {
  TotalColoring coloring;
  RunTelemetry telemetry;
};

// Full construction. Edgeless graphs get the all-ones colouring; graphs
// with Delta = 1 use the Delta = 2 step sizes. Throws RadiusTooSmall
// (r < 2), EscalationCapExceeded, and InvariantViolation when
// check_invariants catches a broken invariant.
ColoringRun run_algorithm(const Graph& g, int r, const RunOptions& options = {});

}  // namespace tsr
