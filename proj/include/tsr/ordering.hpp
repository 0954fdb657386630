#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "tsr/graph.hpp"

namespace tsr {

// Random vertex ordering induced by i.i.d. uniform variates X_v.
struct RandomOrdering {
  std::uint64_t seed = 0;
  std::vector<double> x;          // X_v in [0, 1)
  std::vector<Vertex> perm;       // vertices sorted by (x, index)
  std::vector<std::int32_t> pos;  // inverse of perm
  std::vector<std::uint8_t> in_initial;
  double initial_threshold = 1.0;  // min(1, ln(Delta) / Delta^{1/3})

  bool initial(Vertex v) const { return in_initial[v] != 0; }
  bool before(Vertex a, Vertex b) const { return pos[a] < pos[b]; }
};

struct BackwardStats {
  std::vector<std::int64_t> big_backward;       // b_-(v)
  std::vector<std::int64_t> backward_r;         // d^r_-(v)
  std::vector<std::int64_t> initial_r;          // d^r_I(v)
};

enum class LemmaProperty : std::uint8_t { F1 = 0, F2 = 1, F3 = 2 };

struct LemmaViolation {
  Vertex vertex;
  LemmaProperty property;

  friend bool operator==(const LemmaViolation&, const LemmaViolation&) = default;
};

struct LemmaReport {
  std::vector<Vertex> tracked;  // b(v) >= Delta^{1/3} ln(Delta)
  std::vector<LemmaViolation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

// min(1, ln(Delta) / Delta^{1/3}).
double initial_threshold(std::int64_t max_degree);

// Delta^{1/3} ln(Delta): the big-neighbour count above which a vertex is tracked.
double tracking_threshold(std::int64_t max_degree);

// n i.i.d. variates in [0, 1) drawn from mt19937_64(seed), 53 bits each.
std::vector<double> sample_variates(std::size_t n, std::uint64_t seed);

// Ordering induced by explicit variates: ties broken by vertex index, I
// split at `threshold`. x.size() must equal the vertex count.
RandomOrdering ordering_from_variates(const Graph& g, std::vector<double> x, double threshold);

// Throws DegenerateGraph when Delta < 2.
RandomOrdering sample_ordering(const Graph& g, std::uint64_t seed);

// Right-hand sides of F1-F3.
//   F1: d^r_I(v) <= 2 d(v) Delta^{r-4/3} ln Delta
//   F2: b_-(v)   >= X_v b(v) - sqrt(X_v b(v)) ln Delta
//   F3: d^r_-(v) <= X_v D(v) Delta^{r-2} + sqrt(X_v D(v) Delta^{r-2}) ln Delta
double f1_bound(std::int64_t degree, std::int64_t max_degree, int r);
double f2_bound(double x, std::int64_t big_neighbors, std::int64_t max_degree);
double f3_bound(double x, std::int64_t neighbor_degree_sum, std::int64_t max_degree, int r);

// Throws RadiusTooSmall when r < 2.
BackwardStats backward_stats(const Graph& g, const RandomOrdering& ord, const DegreePartition& part, int r);
BackwardStats backward_stats(const Graph& g, const RandomOrdering& ord, const DegreePartition& part,
                             const RNeighborhoods& nbhd);

LemmaReport check_lemma_properties(const Graph& g, const RandomOrdering& ord, const DegreePartition& part,
                                   const BackwardStats& stats, int r);

struct OrderingSearch {
  RandomOrdering ordering;  // first good ordering, or the one with fewest violations
  BackwardStats stats;      // stats and report for `ordering`
  LemmaReport report;
  int attempts = 0;
  bool good = false;
};

// Samples seeds seed, seed+1, ... until an ordering passes F1-F3 or the
// budget is spent. Never throws on budget exhaustion. nbhd may be null, in
// which case r-neighbourhoods are recomputed per attempt.
OrderingSearch search_ordering(const Graph& g, const DegreePartition& part, int r, const RNeighborhoods* nbhd,
                               std::uint64_t seed, int max_attempts);

class ResampleBudgetExceeded : public Error {
 public:
  ResampleBudgetExceeded(int attempts, LemmaReport last)
      : Error(ErrorCode::ResampleBudgetExceeded,
              "no ordering satisfied the lemma properties in " + std::to_string(attempts) + " attempts"),
        last_report(std::move(last)) {}

  LemmaReport last_report;
};

struct ResampleResult {
  RandomOrdering ordering;
  int attempts = 0;
};

// Throws ParameterOutOfRange when max_attempts < 1 and
// ResampleBudgetExceeded when every attempt fails.
ResampleResult resample_until_good(const Graph& g, const DegreePartition& part, int r, std::uint64_t seed,
                                   int max_attempts = 100);

// e^{-t^2 / (3np)}, the upper-tail bound for BIN(n, p) > np + t.
// Requires 0 < p <= 1 and 0 <= t <= np; throws ParameterOutOfRange otherwise.
double chernoff_tail_bound(std::int64_t n, double p, double t);

struct EventFrequencies {
  std::array<double, 3> frequency{};        // A1, A2, A3
  std::array<std::int64_t, 3> violations{};
  std::int64_t tracked_samples = 0;         // tracked vertices summed over trials
  std::vector<std::int64_t> tracked_per_trial;
  std::int64_t trials = 0;

  bool empty_sample() const noexcept { return tracked_samples == 0; }
};

// Throws NoTrials when trials == 0. Trial t uses seed + t.
EventFrequencies estimate_event_frequency(const Graph& g, int r, std::int64_t trials, std::uint64_t seed);

}  // namespace tsr
