#include <cmath>

#include "doctest.h"
#include "dsn/error.hpp"
#include "dsn/generate.hpp"
#include "dsn/io.hpp"
#include "dsn/solver.hpp"
#include "support.hpp"

using namespace dsn;
using dsn::testing::planar;

namespace {

std::string rewrite_instance(const std::string& text) {
  return canonical_dump(instance_to_json(instance_from_json(parse_json(text))));
}

std::string rewrite_solution(const std::string& text) {
  return canonical_dump(solution_to_json(solution_from_json(parse_json(text))));
}

}  // namespace

TEST_CASE("canonical dump") {
  Json j = {{"b", 0.1}, {"a", {1, 2}}, {"c", {{"z", true}, {"y", nullptr}}}};
  const auto text = canonical_dump(j);
  CHECK(text.find("\"a\"") < text.find("\"b\""));
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(text.find("[1, 2]") != std::string::npos);
  CHECK(canonical_dump(parse_json(text)) == text);
  CHECK_THROWS_AS(canonical_dump(Json(std::nan(""))), Error);
}

TEST_CASE("instance round trips are byte-identical") {
  std::vector<Instance> cases{
      random_euclidean_instance(1, 2, 3),
      random_rectilinear_instance(2, 1, 2, 3),
      random_finite_instance(3, 6, 2, 2, SpaceMode::explicit_matrix),
      random_finite_instance(4, 6, 2, 1, SpaceMode::graph_metric),
  };
  auto p2p = random_euclidean_instance(5, 2, 2);
  p2p.pairs = PairList{{0, 1}, {1, 0}};
  cases.push_back(p2p);
  cases.push_back(med_to_instance(random_strong_digraph(6, 4)));
  for (const auto& inst : cases) {
    const auto once = canonical_dump(instance_to_json(inst));
    CHECK(rewrite_instance(once) == once);
    CHECK(instance_digest(instance_from_json(parse_json(once))) == instance_digest(inst));
  }
}

TEST_CASE("solution round trips are byte-identical") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    SolveConfig config;
    config.max_steiner = 1;
    auto inst = seed == 3 ? random_finite_instance(seed, 5, 2, 2) : random_euclidean_instance(seed, 2, 1);
    auto sol = solve(inst, config);
    const auto once = canonical_dump(solution_to_json(make_record(inst, sol, config)));
    CHECK(rewrite_solution(once) == once);
  }
}

TEST_CASE("parse errors name the field or position") {
  auto expect = [](const std::string& text, const std::string& needle) {
    try {
      instance_from_json(parse_json(text));
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      INFO(std::string(e.what()));
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect(R"({"schema_version":1,"space":{"mode":"euclidean","dimension":2},"sources":[[0,0]],"sinks":[]})",
         "sinks");
  expect(R"({"schema_version":1,"space":{"mode":"euclidean","dimension":2},"sources":[[0,0]]})", "sinks: missing");
  expect(R"({"schema_version":1,"space":{"mode":"euclidean","dimension":2},"sources":[[0,"x"]],"sinks":[[1,1]]})",
         "sources[0][1]");
  expect(R"({"schema_version":1,"space":{"mode":"warped","dimension":2},"sources":[[0,0]],"sinks":[[1,1]]})",
         "space.mode");
  expect(R"({"schema_version":2})", "schema_version");
  expect("{\n  \"schema_version\": 1,\n  \"space\": {", "line 3");
  expect(R"({"schema_version":1,"space":{"mode":"explicit_matrix","points":["a","b","c"],
            "distances":[[0,1,5],[1,0,1],[5,1,0]]},"sources":["a"],"sinks":["c"]})",
         "d(a,c)");
}

TEST_CASE("solution verification") {
  SolveConfig config;
  auto inst = planar({{0, 0}}, {{3, 4}});
  auto record = make_record(inst, solve(inst, config), config);
  auto j = solution_to_json(record);
  SUBCASE("length mismatch") {
    j["length"] = 6.0;
    CHECK_THROWS_AS(solution_from_json(j), ParseError);
  }
  SUBCASE("digest mismatch") {
    j["instance_digest"] = "0000000000000000";
    CHECK_THROWS_AS(solution_from_json(j), ParseError);
  }
  SUBCASE("missing terminal") {
    j["network"]["vertices"].erase(1);
    j["network"]["edges"] = Json::array();
    CHECK_THROWS_AS(solution_from_json(j), ParseError);
  }
}

TEST_CASE("digraph round trip") {
  auto d = random_strong_digraph(3, 5);
  const auto once = canonical_dump(digraph_to_json(d));
  CHECK(canonical_dump(digraph_to_json(digraph_from_json(parse_json(once)))) == once);
}
