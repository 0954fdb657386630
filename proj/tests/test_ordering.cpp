#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "support.hpp"
#include "tsr/io.hpp"
#include "tsr/ordering.hpp"

using namespace tsr;
using namespace tsr::testing;

TEST_CASE("sample_ordering is deterministic and self-consistent") {
  const auto g = random_graph(120, 0.08, 11);
  const auto a = sample_ordering(g, 42);
  const auto b = sample_ordering(g, 42);
  CHECK(a.x == b.x);
  CHECK(a.perm == b.perm);
  CHECK(a.in_initial == b.in_initial);
  CHECK(sample_ordering(g, 43).x != a.x);

  for (std::size_t i = 0; i < a.perm.size(); ++i) {
    CHECK(a.pos[a.perm[i]] == static_cast<std::int32_t>(i));
    CHECK(a.x[a.perm[i]] >= 0.0);
    CHECK(a.x[a.perm[i]] < 1.0);
    if (i > 0) CHECK(a.x[a.perm[i - 1]] < a.x[a.perm[i]]);
  }
  for (std::size_t v = 0; v < 120; ++v) {
    CHECK(a.initial(static_cast<Vertex>(v)) == (a.x[v] < a.initial_threshold));
  }
}

TEST_CASE("ties in variates break by vertex index") {
  const auto g = path_graph(4);
  const auto ord = ordering_from_variates(g, {0.5, 0.2, 0.5, 0.2}, 0.3);
  CHECK(ord.perm == std::vector<Vertex>{1, 3, 0, 2});
  CHECK(ord.initial(1));
  CHECK_FALSE(ord.initial(0));
}

TEST_CASE("initial-set threshold and its clamp") {
  CHECK(initial_threshold(100) == doctest::Approx(0.99215384).epsilon(1e-7));
  CHECK(initial_threshold(50) == 1.0);  // ln 50 / 50^{1/3} ~ 1.062, clamped
  CHECK(initial_threshold(64) == 1.0);
  CHECK(initial_threshold(128) == doctest::Approx(0.96276474).epsilon(1e-7));

  const auto star100 = star_graph(100);
  const auto ord = sample_ordering(star100, 5);
  CHECK(ord.initial_threshold == doctest::Approx(0.99215384).epsilon(1e-7));
  const auto custom = ordering_from_variates(star100, std::vector<double>(101, 0.5), ord.initial_threshold);
  CHECK(custom.initial(0));

  const auto star50 = star_graph(50);
  const auto all_in = sample_ordering(star50, 9);
  for (Vertex v = 0; v <= 50; ++v) CHECK(all_in.initial(v));
}

TEST_CASE("sample_ordering rejects Delta < 2") {
  try {
    sample_ordering(make_graph(2, {{0, 1}}), 0);
    FAIL("expected DegenerateGraph");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateGraph);
  }
}

TEST_CASE("backward_stats on P3 with order (b, a, c)") {
  const auto p3 = path_graph(3);  // a=0, b=1, c=2
  const auto part = degree_partition(p3);
  CHECK(part.is_big(1));
  CHECK_FALSE(part.is_big(0));
  const auto ord = ordering_from_variates(p3, {0.5, 0.1, 0.9}, 1.0);
  CHECK(ord.perm == std::vector<Vertex>{1, 0, 2});

  const auto s = backward_stats(p3, ord, part, 2);
  CHECK(s.big_backward[0] == 1);
  CHECK(s.big_backward[2] == 1);
  CHECK(s.big_backward[1] == 0);
  CHECK(s.backward_r[2] == 2);
  CHECK(s.backward_r[1] == 0);  // first in the ordering
  CHECK(s.backward_r[0] == 1);
  CHECK(s.initial_r == std::vector<std::int64_t>{2, 2, 2});
  CHECK_THROWS_AS(backward_stats(p3, ord, part, 1), Error);
}

TEST_CASE("backward_stats properties on random graphs") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto g = random_graph(90, 0.06, 900 + seed);
    if (g.max_degree() < 2) continue;
    const auto part = degree_partition(g);
    const auto ord = sample_ordering(g, seed);
    for (int r : {2, 3}) {
      const auto cached = backward_stats(g, ord, part, RNeighborhoods(g, r));
      const auto streamed = backward_stats(g, ord, part, r);
      CHECK(cached.big_backward == streamed.big_backward);
      CHECK(cached.backward_r == streamed.backward_r);
      CHECK(cached.initial_r == streamed.initial_r);

      std::int64_t backward_total = 0;
      std::int64_t pair_count = 0;
      for (Vertex v = 0; v < 90; ++v) {
        const auto dr = static_cast<std::int64_t>(r_neighborhood(g, v, r).size());
        CHECK(cached.big_backward[v] >= 0);
        CHECK(cached.big_backward[v] <= part.big_neighbors[v]);
        CHECK(cached.backward_r[v] <= dr);
        CHECK(cached.initial_r[v] <= dr);
        backward_total += cached.backward_r[v];
        pair_count += dr;
      }
      CHECK(2 * backward_total == pair_count);
      CHECK(cached.backward_r[ord.perm.front()] == 0);
    }
  }
}

TEST_CASE("lemma property bounds evaluate as stated") {
  CHECK(f1_bound(50, 100, 2) == doctest::Approx(9921.5384).epsilon(1e-7));
  // ln 55 = 4.0073...: 16 - 4 * 4.0073 < 0, so any b_-(v) >= 0 passes F2.
  CHECK(f2_bound(0.25, 64, 55) == doctest::Approx(-0.0293).epsilon(1e-2));
  CHECK(f2_bound(0.25, 64, 55) < 0.0);
  CHECK(f3_bound(0.5, 200, 100, 2) == doctest::Approx(100.0 + 10.0 * std::log(100.0)));
}

TEST_CASE("check_lemma_properties: vacuous when nothing is tracked") {
  const auto g = star_graph(30);
  const auto part = degree_partition(g);
  const auto ord = sample_ordering(g, 1);
  const auto report = check_lemma_properties(g, ord, part, backward_stats(g, ord, part, 2), 2);
  CHECK(report.tracked.empty());
  CHECK(report.ok());
}

TEST_CASE("check_lemma_properties flags a hand-built F2 violation") {
  // K_130: Delta = 129, every vertex Big and tracked (b = 129 >= 24.5).
  const auto g = complete_graph(130);
  const auto part = degree_partition(g);
  std::vector<double> x(130);
  for (std::size_t i = 0; i < 130; ++i) x[i] = 0.995 + 0.00001 * static_cast<double>(i);
  x[0] = 0.99;  // first in the order, yet in R with X_v = 0.99
  const auto ord = ordering_from_variates(g, x, initial_threshold(g.max_degree()));
  const auto stats = backward_stats(g, ord, part, 2);
  const auto report = check_lemma_properties(g, ord, part, stats, 2);
  CHECK(report.tracked.size() == 130);
  CHECK(std::count(report.violations.begin(), report.violations.end(), LemmaViolation{0, LemmaProperty::F2}) == 1);
  for (const auto& viol : report.violations) {
    CHECK_FALSE(ord.initial(viol.vertex));
    CHECK(viol.property != LemmaProperty::F1);
  }
}

TEST_CASE("resample_until_good") {
  const auto star = star_graph(20);
  const auto part = degree_partition(star);
  const auto res = resample_until_good(star, part, 2, 77, 5);
  CHECK(res.attempts == 1);
  CHECK(res.ordering.seed == 77);

  try {
    resample_until_good(star, part, 2, 0, 0);
    FAIL("expected ParameterOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParameterOutOfRange);
  }

  const auto g = generate_graph(GraphKind::Regular, {400, 0.0, 128}, 3);
  const auto gp = degree_partition(g);
  const RNeighborhoods nbhd(g, 2);
  const auto search = search_ordering(g, gp, 2, &nbhd, 10, 5);
  CHECK(search.good);
  CHECK(search.attempts >= 1);
  CHECK(search.report.ok());
}

TEST_CASE("chernoff_tail_bound") {
  CHECK(chernoff_tail_bound(100, 0.5, 10) == doctest::Approx(0.513417119).epsilon(1e-9));
  CHECK(chernoff_tail_bound(37, 0.3, 0) == 1.0);
  CHECK_THROWS_AS(chernoff_tail_bound(100, 0.5, 60), Error);
  CHECK_THROWS_AS(chernoff_tail_bound(100, 0.0, 0), Error);
  CHECK_THROWS_AS(chernoff_tail_bound(100, 0.5, -1), Error);
}

TEST_CASE("chernoff bound dominates the empirical binomial tail") {
  std::mt19937_64 gen(2024);
  constexpr int kSamples = 20000;
  for (std::int64_t n : {50, 400}) {
    for (double p : {0.2, 0.6}) {
      const double mean = static_cast<double>(n) * p;
      for (double t : {0.5 * std::sqrt(mean), mean / 4}) {
        std::binomial_distribution<std::int64_t> bin(n, p);
        int hits = 0;
        for (int i = 0; i < kSamples; ++i) hits += static_cast<double>(bin(gen)) > mean + t;
        const double est = static_cast<double>(hits) / kSamples;
        const double se = std::sqrt(std::max(est * (1 - est), 1e-12) / kSamples);
        CHECK(est <= chernoff_tail_bound(n, p, t) + 3 * se);
      }
    }
  }
}

TEST_CASE("estimate_event_frequency") {
  const auto star = star_graph(40);
  const auto f = estimate_event_frequency(star, 2, 3, 0);
  CHECK(f.empty_sample());
  CHECK(f.frequency == std::array<double, 3>{0, 0, 0});
  CHECK(f.tracked_per_trial == std::vector<std::int64_t>{0, 0, 0});

  try {
    estimate_event_frequency(star, 2, 0, 0);
    FAIL("expected NoTrials");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoTrials);
  }

  // Delta = 128 puts the initial-set threshold below 1, so F2/F3 are live.
  const auto g = generate_graph(GraphKind::Regular, {500, 0.0, 128}, 8);
  const auto a = estimate_event_frequency(g, 2, 10, 4);
  const auto b = estimate_event_frequency(g, 2, 10, 4);
  CHECK(a.violations == b.violations);
  CHECK(a.tracked_samples == 10 * 500);
  for (double freq : a.frequency) {
    CHECK(freq >= 0.0);
    CHECK(freq <= 0.01);
  }
}
