#include "tsr/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace tsr {

namespace {

double unit_variate(std::mt19937_64& gen) {
  // 53 high bits -> [0, 1); bit-exact across standard libraries.
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

void require_radius(int r) {
  if (r < 2) throw Error(ErrorCode::RadiusTooSmall, "r=" + std::to_string(r) + ", need r >= 2");
}

}  // namespace

double initial_threshold(std::int64_t max_degree) {
  const double d = static_cast<double>(max_degree);
  return std::min(1.0, std::log(d) / std::cbrt(d));
}

double tracking_threshold(std::int64_t max_degree) {
  const double d = static_cast<double>(max_degree);
  return std::cbrt(d) * std::log(d);
}

std::vector<double> sample_variates(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> x(n);
  for (auto& xv : x) xv = unit_variate(gen);
  return x;
}

RandomOrdering ordering_from_variates(const Graph& g, std::vector<double> x, double threshold) {
  const auto n = g.num_vertices();
  if (x.size() != n) throw Error(ErrorCode::InvalidArgs, "need one variate per vertex");
  RandomOrdering ord;
  ord.initial_threshold = threshold;
  ord.x = std::move(x);

  ord.perm.resize(n);
  std::iota(ord.perm.begin(), ord.perm.end(), 0);
  std::sort(ord.perm.begin(), ord.perm.end(), [&](Vertex a, Vertex b) {
    return ord.x[a] < ord.x[b] || (ord.x[a] == ord.x[b] && a < b);
  });
  ord.pos.resize(n);
  for (std::size_t i = 0; i < n; ++i) ord.pos[ord.perm[i]] = static_cast<std::int32_t>(i);

  ord.in_initial.resize(n);
  for (std::size_t v = 0; v < n; ++v) ord.in_initial[v] = ord.x[v] < threshold ? 1 : 0;
  return ord;
}

RandomOrdering sample_ordering(const Graph& g, std::uint64_t seed) {
  if (g.max_degree() < 2) {
    throw Error(ErrorCode::DegenerateGraph, "max degree " + std::to_string(g.max_degree()) + " < 2");
  }
  auto ord = ordering_from_variates(g, sample_variates(g.num_vertices(), seed), initial_threshold(g.max_degree()));
  ord.seed = seed;
  return ord;
}

double f1_bound(std::int64_t degree, std::int64_t max_degree, int r) {
  const double delta = static_cast<double>(max_degree);
  return 2.0 * static_cast<double>(degree) * std::pow(delta, r - 4.0 / 3.0) * std::log(delta);
}

double f2_bound(double x, std::int64_t big_neighbors, std::int64_t max_degree) {
  const double xb = x * static_cast<double>(big_neighbors);
  return xb - std::sqrt(xb) * std::log(static_cast<double>(max_degree));
}

double f3_bound(double x, std::int64_t neighbor_degree_sum, std::int64_t max_degree, int r) {
  const double delta = static_cast<double>(max_degree);
  const double xd = x * static_cast<double>(neighbor_degree_sum) * std::pow(delta, r - 2);
  return xd + std::sqrt(xd) * std::log(delta);
}

namespace {

template <typename NeighborhoodOf>
BackwardStats tally_backward(const Graph& g, const RandomOrdering& ord, const DegreePartition& part,
                             NeighborhoodOf&& neighborhood_of) {
  const auto n = g.num_vertices();
  BackwardStats stats;
  stats.big_backward.assign(n, 0);
  stats.backward_r.assign(n, 0);
  stats.initial_r.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<Vertex>(i);
    for (Vertex u : g.neighbors(v)) {
      if (part.is_big(u) && ord.before(u, v)) ++stats.big_backward[i];
    }
    for (Vertex u : neighborhood_of(v)) {
      if (ord.before(u, v)) ++stats.backward_r[i];
      if (ord.initial(u)) ++stats.initial_r[i];
    }
  }
  return stats;
}

}  // namespace

BackwardStats backward_stats(const Graph& g, const RandomOrdering& ord, const DegreePartition& part,
                             const RNeighborhoods& nbhd) {
  require_radius(nbhd.radius());
  return tally_backward(g, ord, part, [&](Vertex v) { return nbhd.of(v); });
}

BackwardStats backward_stats(const Graph& g, const RandomOrdering& ord, const DegreePartition& part, int r) {
  require_radius(r);
  NeighborhoodScanner scanner(g);
  std::vector<Vertex> scratch;
  return tally_backward(g, ord, part, [&](Vertex v) -> const std::vector<Vertex>& {
    scratch.clear();
    scanner.collect(v, r, scratch);
    return scratch;
  });
}

LemmaReport check_lemma_properties(const Graph& g, const RandomOrdering& ord, const DegreePartition& part,
                                   const BackwardStats& stats, int r) {
  LemmaReport report;
  const auto delta = g.max_degree();
  const double track = tracking_threshold(delta);
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    const auto v = static_cast<Vertex>(i);
    const auto b = part.big_neighbors[i];
    if (static_cast<double>(b) < track) continue;
    report.tracked.push_back(v);

    if (static_cast<double>(stats.initial_r[i]) > f1_bound(g.degree(v), delta, r)) {
      report.violations.push_back({v, LemmaProperty::F1});
    }
    if (ord.initial(v)) continue;
    if (static_cast<double>(stats.big_backward[i]) < f2_bound(ord.x[i], b, delta)) {
      report.violations.push_back({v, LemmaProperty::F2});
    }
    if (static_cast<double>(stats.backward_r[i]) > f3_bound(ord.x[i], g.neighbor_degree_sum(v), delta, r)) {
      report.violations.push_back({v, LemmaProperty::F3});
    }
  }
  return report;
}

OrderingSearch search_ordering(const Graph& g, const DegreePartition& part, int r, const RNeighborhoods* nbhd,
                               std::uint64_t seed, int max_attempts) {
  if (max_attempts < 1) {
    throw Error(ErrorCode::ParameterOutOfRange, "max_attempts must be >= 1");
  }
  require_radius(r);
  OrderingSearch best;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    auto ord = sample_ordering(g, seed + static_cast<std::uint64_t>(attempt));
    auto stats = nbhd ? backward_stats(g, ord, part, *nbhd) : backward_stats(g, ord, part, r);
    auto report = check_lemma_properties(g, ord, part, stats, r);
    best.attempts = attempt + 1;
    if (attempt == 0 || report.violations.size() < best.report.violations.size()) {
      best.ordering = std::move(ord);
      best.stats = std::move(stats);
      best.report = std::move(report);
    }
    if (best.report.ok()) {
      best.good = true;
      break;
    }
  }
  return best;
}

ResampleResult resample_until_good(const Graph& g, const DegreePartition& part, int r, std::uint64_t seed,
                                   int max_attempts) {
  if (max_attempts < 1) {
    throw Error(ErrorCode::ParameterOutOfRange, "max_attempts must be >= 1");
  }
  require_radius(r);
  const RNeighborhoods nbhd(g, r);
  LemmaReport last;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    auto ord = sample_ordering(g, seed + static_cast<std::uint64_t>(attempt));
    const auto stats = backward_stats(g, ord, part, nbhd);
    last = check_lemma_properties(g, ord, part, stats, r);
    if (last.ok()) return {std::move(ord), attempt + 1};
  }
  throw ResampleBudgetExceeded(max_attempts, std::move(last));
}

double chernoff_tail_bound(std::int64_t n, double p, double t) {
  if (n < 1 || !(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::ParameterOutOfRange, "need n >= 1 and 0 < p <= 1");
  }
  const double mean = static_cast<double>(n) * p;
  if (!(t >= 0.0 && t <= mean)) {
    throw Error(ErrorCode::ParameterOutOfRange, "need 0 <= t <= np");
  }
  return std::exp(-t * t / (3.0 * mean));
}

EventFrequencies estimate_event_frequency(const Graph& g, int r, std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::NoTrials, "trials must be >= 1");
  require_radius(r);
  const auto part = degree_partition(g);
  const RNeighborhoods nbhd(g, r);

  EventFrequencies out;
  out.trials = trials;
  out.tracked_per_trial.reserve(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t) {
    const auto ord = sample_ordering(g, seed + static_cast<std::uint64_t>(t));
    const auto stats = backward_stats(g, ord, part, nbhd);
    const auto report = check_lemma_properties(g, ord, part, stats, r);
    out.tracked_per_trial.push_back(static_cast<std::int64_t>(report.tracked.size()));
    out.tracked_samples += static_cast<std::int64_t>(report.tracked.size());
    for (const auto& viol : report.violations) ++out.violations[static_cast<std::size_t>(viol.property)];
  }
  for (std::size_t i = 0; i < 3; ++i) {
    out.frequency[i] = out.empty_sample() ? 0.0
                                          : static_cast<double>(out.violations[i]) /
                                                static_cast<double>(out.tracked_samples);
  }
  return out;
}

}  // namespace tsr
