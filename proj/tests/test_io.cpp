#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>

#include "support.hpp"
#include "tsr/io.hpp"
#include "tsr/verify.hpp"

using namespace tsr;
using namespace tsr::testing;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

Graph parse(const std::string& text) {
  std::istringstream in(text);
  return read_graph(in);
}

}  // namespace

TEST_CASE("graph kinds") {
  for (auto k : {GraphKind::Path, GraphKind::Cycle, GraphKind::Complete, GraphKind::Star, GraphKind::Gnp,
                 GraphKind::Regular})
    CHECK(parse_graph_kind(to_string(k)) == k);
  CHECK_FALSE(parse_graph_kind("petersen").has_value());
}

TEST_CASE("deterministic generators") {
  const auto path = generate_graph(GraphKind::Path, {3, 0, 0}, 0);
  CHECK(path == path_graph(3));
  CHECK(generate_graph(GraphKind::Complete, {4, 0, 0}, 0).num_edges() == 6);
  CHECK(generate_graph(GraphKind::Cycle, {5, 0, 0}, 0) == cycle_graph(5));
  const auto star = generate_graph(GraphKind::Star, {5, 0, 0}, 0);
  CHECK(star == star_graph(4));
  CHECK(generate_graph(GraphKind::Gnp, {10, 0.0, 0}, 3).num_edges() == 0);
  CHECK(generate_graph(GraphKind::Gnp, {10, 1.0, 0}, 3).num_edges() == 45);
  CHECK(code_of([] { generate_graph(GraphKind::Cycle, {2, 0, 0}, 0); }) == ErrorCode::InvalidArgs);
  CHECK(code_of([] { generate_graph(GraphKind::Gnp, {10, 1.5, 0}, 0); }) == ErrorCode::InvalidArgs);
}

TEST_CASE("gnp is seeded and has the expected density") {
  const auto a = generate_graph(GraphKind::Gnp, {2000, 0.01, 0}, 42);
  const auto b = generate_graph(GraphKind::Gnp, {2000, 0.01, 0}, 42);
  const auto c = generate_graph(GraphKind::Gnp, {2000, 0.01, 0}, 43);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  const double expected = 0.01 * 2000.0 * 1999.0 / 2.0;
  const double sd = std::sqrt(expected);
  CHECK(std::abs(static_cast<double>(a.num_edges()) - expected) < 5 * sd);
}

TEST_CASE("regular graphs are simple and regular") {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{10, 3}, {50, 4}, {500, 32}, {2000, 64}, {7, 6}}) {
    const auto g = generate_graph(GraphKind::Regular, {n, 0, d}, 17);
    REQUIRE(g.num_vertices() == static_cast<std::size_t>(n));
    CHECK(g.num_edges() == static_cast<std::size_t>(n) * d / 2);
    for (Vertex v = 0; v < n; ++v) CHECK(g.degree(v) == d);
    CHECK(g == generate_graph(GraphKind::Regular, {n, 0, d}, 17));
  }
  CHECK(code_of([] { generate_graph(GraphKind::Regular, {5, 0, 3}, 0); }) == ErrorCode::InvalidArgs);
  CHECK(code_of([] { generate_graph(GraphKind::Regular, {5, 0, 5}, 0); }) == ErrorCode::InvalidArgs);
}

TEST_CASE("graph file round trip") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = generate_graph(GraphKind::Gnp, {60, 0.1, 0}, seed);
    std::stringstream buf;
    write_graph(buf, g);
    CHECK(read_graph(buf) == g);
  }
  const auto path = (std::filesystem::temp_directory_path() / "tsr_io_roundtrip.graph").string();
  write_graph(path_graph(3), path);
  CHECK(read_graph(path) == path_graph(3));
  std::filesystem::remove(path);
  CHECK(code_of([] { read_graph(std::string("/nonexistent/dir/x.graph")); }) == ErrorCode::IoError);
}

TEST_CASE("graph file parsing") {
  CHECK(parse("# header follows\n3 2\n0 1\n\n# middle\n1 2\n") == path_graph(3));
  CHECK(code_of([] { parse("3 2\n0 1\n1 2\n0 2\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse("3 2\n0 1\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse("3 x\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse("3 1\n0 1 7\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse("3 1\n0 3\n"); }) == ErrorCode::VertexOutOfRange);
  CHECK(code_of([] { parse("3 1\n1 1\n"); }) == ErrorCode::LoopEdge);
  CHECK(code_of([] { parse("3 2\n0 1\n1 0\n"); }) == ErrorCode::DuplicateEdge);
  try {
    parse("3 2\n0 1\n1 q\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("coloring file round trip") {
  const auto g = generate_graph(GraphKind::Gnp, {80, 0.08, 0}, 5);
  const auto run = run_algorithm(g, 2, {});
  std::stringstream buf;
  write_coloring(buf, g, run.coloring, 2);
  const auto file = read_coloring(buf, g);
  CHECK(file.r == 2);
  CHECK(file.coloring.vertex_colors == run.coloring.vertex_colors);
  CHECK(file.coloring.edge_colors == run.coloring.edge_colors);
  CHECK(file.coloring.max_color == run.coloring.max_color);
  REQUIRE(file.caps().has_value());
  CHECK(file.caps()->palette_cap == run.coloring.params_used->palette_cap);
  CHECK(file.caps()->vertex_cap == run.coloring.params_used->vertex_cap);
  CHECK(verify(g, file.coloring, file.r, file.caps()).valid);

  const auto empty = make_graph(3, {});
  TotalColoring ones;
  ones.vertex_colors = {1, 1, 1};
  ones.max_color = 1;
  std::stringstream eb;
  write_coloring(eb, empty, ones, 3);
  const auto ef = read_coloring(eb, empty);
  CHECK_FALSE(ef.caps().has_value());
  CHECK(ef.r == 3);
}

TEST_CASE("coloring file parsing") {
  const auto p3 = path_graph(3);
  const auto read = [&](const std::string& text) {
    std::istringstream in(text);
    return read_coloring(in, p3);
  };
  const auto ok = read("3 2 2 3 1\n0 1\n1 1\n2 2\n0 1 3\n1 2 1\n");
  CHECK(ok.coloring.vertex_colors == std::vector<std::int64_t>{1, 1, 2});
  CHECK(ok.coloring.edge_colors[p3.find_edge(0, 1)] == 3);
  CHECK(ok.coloring.max_color == 3);

  CHECK(code_of([&] { read("4 2 2 3 1\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { read("3 2 2 3 1\n0 1\n1 1\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { read("3 2 2 3 1\n0 1\n0 1\n2 2\n0 1 3\n1 2 1\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { read("3 2 2 3 1\n0 1\n1 1\n2 2\n0 2 3\n1 2 1\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { read("3 2 2 3 1\n0 1\n1 1\n2 2\n0 1 3\n0 1 1\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("run report") {
  const auto g = generate_graph(GraphKind::Gnp, {100, 0.05, 0}, 9);
  RunOptions opt;
  opt.seed = 4;
  const auto run = run_algorithm(g, 2, opt);
  const auto rep = make_run_report(g, 2, 4, run, 0.25);
  CHECK(rep.n == 100);
  CHECK(rep.m == g.num_edges());
  CHECK(rep.max_color == run.coloring.max_color);
  REQUIRE(rep.params.has_value());
  CHECK(rep.max_color <= rep.params->palette_cap);
  const auto text = format_run_report(rep);
  for (const char* key : {"n=100\n", "r=2\n", "seed=4\n", "\nK=", "\nk=", "palette_cap=",
                          "bound_new=", "bound_prior=", "max_color=", "escalations=0\n", "resample_attempts=",
                          "lemma_violations=", "wall_seconds="})
    CHECK_MESSAGE(text.find(key) != std::string::npos, key);
}
