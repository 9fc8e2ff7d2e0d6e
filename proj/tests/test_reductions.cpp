#include <algorithm>

#include "doctest.h"
#include "dsn/error.hpp"
#include "dsn/generate.hpp"
#include "dsn/reductions.hpp"

using namespace dsn;

namespace {

Digraph digraph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> arcs) {
  Digraph d;
  for (std::size_t i = 0; i < n; ++i) d.vertices.push_back("v" + std::to_string(i));
  for (auto [u, v] : arcs) d.arcs.push_back({u, v, 1.0});
  return d;
}

Digraph complete(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v) arcs.push_back({u, v});
  return digraph(n, arcs);
}

// Transitive closure by repeated squaring of the boolean matrix, independent
// of the library's traversal.
std::vector<std::vector<bool>> closure(std::size_t n, const std::vector<Edge>& arcs) {
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (const auto& a : arcs) r[a.from][a.to] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = true;
  return r;
}

std::vector<Edge> all_arcs(const Digraph& d) {
  std::vector<Edge> out;
  for (const auto& a : d.arcs) out.push_back({a.from, a.to});
  return out;
}

}  // namespace

TEST_CASE("directed 3-cycle") {
  auto d = digraph(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK(solve_med(d).size() == 3);
  CHECK(brute_force_med(d).size() == 3);
}

TEST_CASE("complete digraphs") {
  CHECK(brute_force_med(complete(3)).size() == 3);
  CHECK(solve_med(complete(3)).size() == 3);
  CHECK(brute_force_med(complete(4)).size() == 4);
  CHECK(solve_med(complete(4)).size() == 4);
}

TEST_CASE("2-cycle keeps both arcs") {
  auto d = digraph(2, {{0, 1}, {1, 0}});
  auto arcs = solve_med(d);
  REQUIRE(arcs.size() == 2);
  CHECK(arcs[0] == Edge{0, 1});
  CHECK(arcs[1] == Edge{1, 0});
}

TEST_CASE("directed path keeps both arcs") {
  auto d = digraph(3, {{0, 1}, {1, 2}});
  CHECK(brute_force_med(d).size() == 2);
  CHECK_THROWS_AS(med_to_instance(d), PreconditionError);
}

TEST_CASE("3-cycle plus chord drops the chord") {
  auto d = digraph(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}});
  auto arcs = brute_force_med(d);
  CHECK(arcs.size() == 3);
  CHECK(std::find(arcs.begin(), arcs.end(), Edge{0, 2}) == arcs.end());
}

TEST_CASE("refusals") {
  auto path = digraph(3, {{0, 1}, {1, 2}});
  try {
    med_to_instance(path);
    FAIL("expected refusal");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("v1") != std::string::npos);
  }
  CHECK_THROWS_AS(brute_force_med(complete(8)), BudgetExceeded);
  CHECK_THROWS_AS(validate(digraph(2, {{0, 0}})), InvalidSpace);
}

TEST_CASE("round trip keeps the digraph") {
  auto d = random_strong_digraph(7, 5);
  d.arcs[0].weight = 3.5;
  auto inst = med_to_instance(d);
  const auto& space = *inst.space;
  CHECK(space.mode() == SpaceMode::ambient_digraph);
  CHECK(space.labels() == d.vertices);
  REQUIRE(space.declared_edges().size() == d.arcs.size());
  for (std::size_t i = 0; i < d.arcs.size(); ++i) {
    CHECK(space.declared_edges()[i].from == d.arcs[i].from);
    CHECK(space.declared_edges()[i].to == d.arcs[i].to);
    CHECK(space.declared_edges()[i].weight == 1.0);
  }
  CHECK(inst.m() == 5);
  CHECK(inst.n() == 5);
}

TEST_CASE("random strong digraphs: pipeline matches brute force") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const std::size_t n = 3 + seed % 4;
    auto d = random_strong_digraph(seed, n);
    auto brute = brute_force_med(d);
    auto piped = solve_med(d);
    INFO("seed " << seed);
    CHECK(brute.size() == piped.size());
    CHECK(closure(n, brute) == closure(n, all_arcs(d)));
    CHECK(closure(n, piped) == closure(n, all_arcs(d)));
  }
}
