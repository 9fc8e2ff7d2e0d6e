#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dsn/error.hpp"
#include "dsn/generate.hpp"
#include "dsn/solver.hpp"
#include "support.hpp"

using namespace dsn;
using dsn::testing::finite;
using dsn::testing::planar;

namespace {

const double kSqrt3 = std::sqrt(3.0);

SolveConfig budget(std::size_t k) {
  SolveConfig c;
  c.max_steiner = k;
  return c;
}

std::string encode(const Network& net) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& v : net.vertices()) {
    out << v.id << ' ' << to_string(v.role);
    if (const auto* c = std::get_if<Coordinates>(&v.location))
      for (double x : *c) out << ' ' << x;
    else
      out << ' ' << std::get<PointId>(v.location).index;
    out << '\n';
  }
  for (const auto& e : net.edges()) out << e.from << "->" << e.to << '\n';
  return out.str();
}

}  // namespace

TEST_CASE("single pair is a straight edge") {
  auto sol = solve(planar({{0, 0}}, {{3, 4}}), budget(2));
  CHECK(sol.length == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(sol.network.steiner_count() == 0);
  CHECK(sol.network.edges().size() == 1);
  CHECK(sol.status == SolveStatus::optimal_within_budget);
}

TEST_CASE("equilateral triangle gets its Fermat point") {
  auto sol = solve(planar({{0, 0}, {1, 0}}, {{0.5, kSqrt3 / 2}}), budget(1));
  CHECK(std::abs(sol.length - kSqrt3) < 1e-6);
  REQUIRE(sol.network.steiner_count() == 1);
  const auto& s = std::get<Coordinates>(sol.network.vertices()[sol.network.steiner_points()[0]].location);
  CHECK(std::abs(s[0] - 0.5) < 1e-4);
  CHECK(std::abs(s[1] - kSqrt3 / 6) < 1e-4);
}

TEST_CASE("unit square reaches the Steiner tree length") {
  auto sol = solve(planar({{0, 0}, {0, 1}}, {{1, 0}, {1, 1}}), budget(2));
  CHECK(std::abs(sol.length - (1 + kSqrt3)) < 1e-6);
  CHECK(sol.network.steiner_count() == 2);
  CHECK(is_connecting(sol.network));
  CHECK(is_simple(sol.network));
}

TEST_CASE("oracle on tiny explicit spaces") {
  auto two = finite({"p", "q"}, {{0, 7}, {7, 0}}, {0}, {1});
  CHECK(brute_force_oracle(two).length == 7);
  CHECK(brute_force_oracle(two).status == SolveStatus::oracle_exact);

  auto three = finite({"a", "x", "b"}, {{0, 2, 5}, {2, 0, 3}, {5, 3, 0}}, {0}, {2});
  auto o = brute_force_oracle(three);
  CHECK(o.length == 5);
  CHECK(o.length == brute_force_oracle(three).length);
  CHECK(encode(o.network) == encode(brute_force_oracle(three).network));
}

TEST_CASE("oracle refuses large spaces") {
  std::vector<std::vector<double>> m(8, std::vector<double>(8, 1.0));
  std::vector<std::string> labels;
  for (int i = 0; i < 8; ++i) { m[i][i] = 0; labels.push_back("p" + std::to_string(i)); }
  CHECK_THROWS_AS(brute_force_oracle(finite(labels, m, {0}, {1})), BudgetExceeded);
}

TEST_CASE("solve equals the oracle on random finite metrics") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t points = 4 + seed % 3;
    const std::size_t m = 1 + seed % 2, n = 1 + (seed / 2) % 2;
    auto mode = seed % 4 == 0 ? SpaceMode::graph_metric : SpaceMode::explicit_matrix;
    auto inst = random_finite_instance(seed, points, m, n, mode);
    auto s = solve(inst, {});
    auto o = brute_force_oracle(inst);
    INFO("seed " << seed);
    CHECK(s.length == o.length);
    CHECK(is_connecting(s.network));
    CHECK(is_simple(s.network));
  }
}

TEST_CASE("length never increases with the Steiner budget") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto inst = random_euclidean_instance(seed, 2, 2);
    double last = INFINITY;
    for (std::size_t k = 0; k <= 2; ++k) {
      auto sol = solve(inst, budget(k));
      CHECK(sol.length <= last + 1e-12);
      last = sol.length;
    }
  }
  auto inst = random_finite_instance(9, 6, 2, 2);
  double last = INFINITY;
  for (std::size_t k = 0; k <= 4; ++k) {
    auto sol = solve(inst, budget(k));
    CHECK(sol.length <= last);
    last = sol.length;
  }
}

TEST_CASE("parallel and serial give identical networks") {
  for (std::uint64_t seed = 3; seed <= 5; ++seed) {
    auto inst = random_euclidean_instance(seed, 2, 2);
    auto serial = budget(2);
    auto parallel = serial;
    parallel.parallel = true;
    auto a = solve(inst, serial), b = solve(inst, parallel);
    CHECK(encode(a.network) == encode(b.network));
    CHECK(a.length == b.length);
  }
}

TEST_CASE("rectilinear solve matches a finite grid discretization") {
  // Hanan grid of the terminals holds an optimal rectilinear network.
  auto inst = planar({{0, 0}, {0, 2}}, {{3, 1}}, SpaceMode::rectilinear);
  auto sol = solve(inst, budget(1));
  CHECK(sol.length == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("point-to-point variant") {
  SUBCASE("one pair") {
    auto inst = planar({{0, 0}}, {{1, 0}});
    inst.pairs = PairList{{0, 0}};
    CHECK(solve_point_to_point(inst, budget(1)).length == doctest::Approx(1.0));
  }
  SUBCASE("disjoint far pairs") {
    auto inst = planar({{0, 0}, {100, 0}}, {{1, 0}, {100, 2}});
    inst.pairs = PairList{{0, 0}, {1, 1}};
    auto sol = solve_point_to_point(inst, budget(2));
    CHECK(sol.length == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(sol.network.steiner_count() == 0);
  }
  SUBCASE("shared corridor beats separate edges") {
    // Two pairs whose shortest routes both run through the s-t corridor.
    Instance inst;
    inst.space = std::make_shared<Space>(Space::graph_metric(
        {"a1", "a2", "b1", "b2", "s", "t"},
        {{0, 4, 2}, {1, 4, 2}, {4, 5, 5}, {5, 2, 2}, {5, 3, 2}, {0, 2, 10}, {1, 3, 10}}));
    inst.sources = {PointId{0}, PointId{1}};
    inst.sinks = {PointId{2}, PointId{3}};
    inst.pairs = PairList{{0, 0}, {1, 1}};
    auto sol = solve_point_to_point(inst, {});
    auto oracle = brute_force_oracle(inst);
    CHECK(sol.length == oracle.length);
    CHECK(sol.length == 13);
    CHECK(sol.length < 18);

    auto plane = planar({{0, 1}, {0, -1}}, {{10, 1}, {10, -1}});
    plane.pairs = PairList{{0, 0}, {1, 1}};
    CHECK(solve_point_to_point(plane, budget(2)).length < 20 - 1e-6);
  }
  SUBCASE("missing pairs rejected") {
    auto inst = planar({{0, 0}}, {{1, 0}});
    CHECK_THROWS_AS(solve_point_to_point(inst, {}), InvalidTerminal);
  }
}

TEST_CASE("budget guard refuses oversized searches") {
  auto inst = random_euclidean_instance(1, 3, 3);
  CHECK_THROWS_AS(solve(inst, budget(3)), BudgetExceeded);
}

TEST_CASE("default budget is reported as binding") {
  auto sol = solve(planar({{0, 0}}, {{1, 1}}), {});
  CHECK(sol.theorem_bound == 20);
  CHECK(sol.budget_binding);
}
