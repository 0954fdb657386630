#include "tsr/coloring.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace tsr {

namespace {

[[noreturn]] void invariant_failure(const std::string& what) { throw Error(ErrorCode::InvariantViolation, what); }

}  // namespace

ColoringState::ColoringState(const Graph& g, const Params& p)
    : graph_(&g),
      vertex_color_(g.num_vertices(), 1),
      edge_color_(g.num_edges(), p.big_step + 1),
      weight_(g.num_vertices()),
      target_(g.num_vertices(), 0),
      processed_(g.num_vertices(), 0) {
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    weight_[v] = 1 + g.degree(static_cast<Vertex>(v)) * (p.big_step + 1);
  }
}

std::optional<std::int64_t> ColoringState::target(Vertex v) const {
  if (!processed(v)) return std::nullopt;
  return target_[v];
}

void ColoringState::shift_edge(EdgeId e, std::int64_t delta) {
  const auto [a, b] = graph_->edge(e);
  edge_color_[e] += delta;
  weight_[a] += delta;
  weight_[b] += delta;
}

void ColoringState::fix_target(Vertex v, std::int64_t target) {
  target_[v] = target;
  processed_[v] = 1;
}

void ColoringState::finalize_vertex_colors() {
  for (std::size_t v = 0; v < vertex_color_.size(); ++v) {
    if (!processed_[v]) continue;
    const auto s = target_[v] - weight_[v];
    vertex_color_[v] += s;
    weight_[v] += s;
  }
}

std::int64_t ColoringState::recompute_weight(Vertex v) const {
  std::int64_t w = vertex_color_[v];
  for (EdgeId e : graph_->incident_edges(v)) w += edge_color_[e];
  return w;
}

ColoringState init_state(const Graph& g, const Params& p) { return ColoringState(g, p); }

DeltaInterval edge_delta_interval(const ColoringState& state, const Params& p, const DegreePartition& part,
                                  Vertex v, Vertex u) {
  const auto K = p.big_step;
  const auto k = p.small_step;
  if (!state.processed(u)) {
    return {0, (!part.is_big(v) && part.is_big(u)) ? K : k};
  }
  const auto raw = part.is_big(u) ? K : k;
  const auto s = state.slack(u);
  return {std::max(-raw, s - K), std::min(raw, s)};
}

Interval feasible_sum_interval(const ColoringState& state, const Params& p, const DegreePartition& part,
                               Vertex v) {
  Interval out{state.weight(v), state.weight(v)};
  for (Vertex u : state.graph().neighbors(v)) {
    const auto d = edge_delta_interval(state, p, part, v, u);
    out.lo += d.lo;
    out.hi += d.hi;
  }
  return out;
}

std::optional<std::int64_t> choose_target(Interval feasible, std::span<const std::int64_t> forbidden) {
  std::vector<std::int64_t> blocked;
  blocked.reserve(forbidden.size());
  for (auto f : forbidden) {
    if (feasible.contains(f)) blocked.push_back(f);
  }
  std::sort(blocked.begin(), blocked.end());
  auto candidate = feasible.lo;
  for (auto f : blocked) {
    if (f > candidate) break;
    if (f == candidate) ++candidate;
  }
  if (candidate > feasible.hi) return std::nullopt;
  return candidate;
}

void apply_target(ColoringState& state, const Params& p, const DegreePartition& part, Vertex v,
                  std::int64_t target) {
  const auto feasible = feasible_sum_interval(state, p, part, v);
  if (!feasible.contains(target)) {
    throw Error(ErrorCode::InfeasibleTarget, "target " + std::to_string(target) + " outside [" +
                                                 std::to_string(feasible.lo) + ", " + std::to_string(feasible.hi) +
                                                 "] at vertex " + std::to_string(v));
  }
  const auto& g = state.graph();
  const auto nbrs = g.neighbors(v);
  const auto edges = g.incident_edges(v);
  auto remaining = target - state.weight(v);

  // Pass 0: backward edges; pass 1: forward edges.
  for (int pass = 0; pass < 2 && remaining != 0; ++pass) {
    const bool want_processed = pass == 0;
    for (std::size_t i = 0; i < nbrs.size() && remaining != 0; ++i) {
      if (state.processed(nbrs[i]) != want_processed) continue;
      const auto range = edge_delta_interval(state, p, part, v, nbrs[i]);
      const auto delta = std::clamp(remaining, range.lo, range.hi);
      state.shift_edge(edges[i], delta);
      remaining -= delta;
    }
  }
  state.fix_target(v, target);
}

const char* to_string(AvailabilityCase c) {
  switch (c) {
    case AvailabilityCase::Degenerate: return "degenerate";
    case AvailabilityCase::InitialBigHeavy: return "initial-big-heavy";
    case AvailabilityCase::Small: return "small";
    case AvailabilityCase::BigLight: return "big-light";
    case AvailabilityCase::RemainingBigHeavy: return "remaining-big-heavy";
  }
  return "unknown";
}

AvailabilityAudit availability_audit(const ColoringState& state, const Params& p, const DegreePartition& part,
                                     const BackwardStats& stats, const RandomOrdering& ord, Vertex v) {
  AvailabilityAudit audit;
  audit.options = feasible_sum_interval(state, p, part, v).count();
  audit.backward_r = stats.backward_r[v];
  if (state.graph().degree(v) == 0) {
    audit.kind = AvailabilityCase::Degenerate;
  } else if (!part.is_big(v)) {
    audit.kind = AvailabilityCase::Small;
  } else if (static_cast<double>(part.big_neighbors[v]) < tracking_threshold(p.delta)) {
    audit.kind = AvailabilityCase::BigLight;
  } else {
    audit.kind = ord.initial(v) ? AvailabilityCase::InitialBigHeavy : AvailabilityCase::RemainingBigHeavy;
  }
  return audit;
}

namespace {

// Checks every quantity a single apply_target at v can have touched.
void check_step(const ColoringState& state, const Params& p, Vertex v) {
  const auto& g = state.graph();
  auto check_vertex = [&](Vertex x) {
    if (state.weight(x) != state.recompute_weight(x)) {
      invariant_failure("weight cache incoherent at vertex " + std::to_string(x));
    }
    const auto c = state.vertex_color(x);
    if (c < 1 || c > p.vertex_cap) invariant_failure("vertex colour out of range at " + std::to_string(x));
    if (state.processed(x) && (state.slack(x) < 0 || state.slack(x) > p.big_step)) {
      invariant_failure("slack " + std::to_string(state.slack(x)) + " outside [0, K] at vertex " +
                        std::to_string(x));
    }
  };
  check_vertex(v);
  if (state.slack(v) != 0) invariant_failure("nonzero slack right after processing " + std::to_string(v));
  for (Vertex u : g.neighbors(v)) check_vertex(u);
  for (EdgeId e : g.incident_edges(v)) {
    const auto c = state.edge_color(e);
    if (c < 1 || c > p.palette_cap) invariant_failure("edge colour out of range at edge " + std::to_string(e));
  }
}

void check_all(const ColoringState& state, const Params& p) {
  const auto& g = state.graph();
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    const auto v = static_cast<Vertex>(i);
    if (!state.processed(v)) invariant_failure("vertex " + std::to_string(v) + " never processed");
    if (state.weight(v) != state.recompute_weight(v)) {
      invariant_failure("weight cache incoherent at vertex " + std::to_string(v));
    }
    if (state.slack(v) < 0 || state.slack(v) > p.big_step) {
      invariant_failure("slack outside [0, K] at vertex " + std::to_string(v));
    }
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto c = state.edge_color(static_cast<EdgeId>(e));
    if (c < 1 || c > p.palette_cap) invariant_failure("edge colour out of range at edge " + std::to_string(e));
  }
}

void check_final(const ColoringState& state, const Params& p) {
  const auto& g = state.graph();
  for (std::size_t i = 0; i < g.num_vertices(); ++i) {
    const auto v = static_cast<Vertex>(i);
    const auto c = state.vertex_color(v);
    if (c < 1 || c > p.vertex_cap) invariant_failure("final vertex colour out of range at " + std::to_string(v));
    if (state.recompute_weight(v) != *state.target(v)) {
      invariant_failure("final weight differs from target at " + std::to_string(v));
    }
  }
}

struct Pass {
  bool complete = false;
  Vertex stuck_at = -1;
};

class Construction {
 public:
  Construction(const Graph& g, int r, const DegreePartition& part, const RNeighborhoods* nbhd,
               const OrderingSearch& search, bool check)
      : g_(g), r_(r), part_(part), nbhd_(nbhd), search_(search), check_(check), scanner_(g) {}

  Pass run(ColoringState& state, const Params& p, RunTelemetry& tel) {
    tel.case_counts.fill(0);
    tel.min_option_margin = std::numeric_limits<std::int64_t>::max();
    for (Vertex v : search_.ordering.perm) {
      if (g_.degree(v) == 0) {
        state.fix_target(v, state.weight(v));
        ++tel.case_counts[static_cast<std::size_t>(AvailabilityCase::Degenerate)];
        continue;
      }
      forbidden_.clear();
      for (Vertex u : neighborhood(v)) {
        if (const auto t = state.target(u)) forbidden_.push_back(*t);
      }
      const auto audit = availability_audit(state, p, part_, search_.stats, search_.ordering, v);
      ++tel.case_counts[static_cast<std::size_t>(audit.kind)];
      tel.min_option_margin = std::min(tel.min_option_margin, audit.options - audit.backward_r);

      const auto feasible = feasible_sum_interval(state, p, part_, v);
      const auto target = choose_target(feasible, forbidden_);
      if (!target) return {false, v};
      apply_target(state, p, part_, v, *target);
      if (check_) check_step(state, p, v);
    }
    if (tel.min_option_margin == std::numeric_limits<std::int64_t>::max()) tel.min_option_margin = 0;
    if (check_) check_all(state, p);
    return {true, -1};
  }

 private:
  std::span<const Vertex> neighborhood(Vertex v) {
    if (nbhd_) return nbhd_->of(v);
    scratch_.clear();
    scanner_.collect(v, r_, scratch_);
    return scratch_;
  }

  const Graph& g_;
  int r_;
  const DegreePartition& part_;
  const RNeighborhoods* nbhd_;
  const OrderingSearch& search_;
  bool check_;
  NeighborhoodScanner scanner_;
  std::vector<Vertex> scratch_;
  std::vector<std::int64_t> forbidden_;
};

}  // namespace

ColoringRun run_algorithm(const Graph& g, int r, const RunOptions& options) {
  if (r < 2) throw Error(ErrorCode::RadiusTooSmall, "r=" + std::to_string(r) + ", need r >= 2");
  ColoringRun out;
  auto& coloring = out.coloring;

  if (g.num_edges() == 0) {
    coloring.vertex_colors.assign(g.num_vertices(), 1);
    coloring.recompute_max_color();
    out.telemetry.case_counts[static_cast<std::size_t>(AvailabilityCase::Degenerate)] =
        static_cast<std::int64_t>(g.num_vertices());
    return out;
  }

  // A matching (Delta = 1) takes the Delta = 2 step sizes; the ordering
  // properties are vacuous there, so the first sample is used as is.
  const auto step_delta = std::max<std::int64_t>(g.max_degree(), 2);
  auto params = options.small_step_override
                    ? params_with_small_step(step_delta, r, *options.small_step_override)
                    : derive_params(step_delta, r);
  const auto part = degree_partition(g);
  std::optional<RNeighborhoods> cache;
  if (options.cache_neighborhoods) cache.emplace(g, r);
  OrderingSearch search;
  if (g.max_degree() >= 2) {
    search = search_ordering(g, part, r, cache ? &*cache : nullptr, options.seed, options.max_attempts);
  } else {
    search.ordering = ordering_from_variates(g, sample_variates(g.num_vertices(), options.seed), 1.0);
    search.ordering.seed = options.seed;
    search.stats = cache ? backward_stats(g, search.ordering, part, *cache)
                         : backward_stats(g, search.ordering, part, r);
    search.attempts = 1;
    search.good = true;
  }

  auto& tel = out.telemetry;
  tel.resample_attempts = search.attempts;
  tel.ordering_good = search.good;
  tel.lemma_violations = search.report.violations.size();
  tel.tracked = search.report.tracked.size();
  tel.neighborhood_entries = cache ? cache->total_size() : 0;

  Construction construction(g, r, part, cache ? &*cache : nullptr, search, options.check_invariants);
  for (;;) {
    ColoringState state(g, params);
    const auto pass = construction.run(state, params, tel);
    if (pass.complete) {
      state.finalize_vertex_colors();
      if (options.check_invariants) check_final(state, params);
      coloring.vertex_colors.assign(state.vertex_colors().begin(), state.vertex_colors().end());
      coloring.edge_colors.assign(state.edge_colors().begin(), state.edge_colors().end());
      break;
    }
    if (coloring.escalations >= options.escalation.cap) {
      throw Error(ErrorCode::EscalationCapExceeded,
                  "no free weight at vertex " + std::to_string(pass.stuck_at) + " after " +
                      std::to_string(coloring.escalations) + " escalations");
    }
    params = params.escalated();
    ++coloring.escalations;
  }
  coloring.params_used = params;
  coloring.recompute_max_color();
  return out;
}

}  // namespace tsr
