#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "dsn/cli.hpp"
#include "dsn/io.hpp"
#include "dsn/reductions.hpp"

using namespace dsn;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("dsn_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& text) {
    auto p = (dir / name).string();
    write_file(p, text);
    return p;
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

const char* kTwoPoint =
    R"({"schema_version":1,"space":{"mode":"euclidean","dimension":2},"sources":[[0,0]],"sinks":[[3,4]]})";
const char* kTriangle =
    R"({"schema_version":1,"space":{"mode":"euclidean","dimension":2},
        "sources":[[0,0],[1,0]],"sinks":[[0.5,0.8660254037844386]]})";

double stored_length(const std::string& path) { return parse_json(read_file(path))["length"].get<double>(); }

}  // namespace

TEST_CASE("solve") {
  Scratch s;
  auto r = run({"solve", s.file("two.json", kTwoPoint), "-o", s.path("two.sol")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("length: 5") != std::string::npos);
  CHECK(stored_length(s.path("two.sol")) == 5);

  r = run({"solve", s.file("tri.json", kTriangle), "--max-steiner", "1", "-o", s.path("tri.sol")});
  CHECK(r.code == kExitOk);
  CHECK(std::abs(stored_length(s.path("tri.sol")) - std::sqrt(3.0)) < 1e-6);
  CHECK(r.out.find("steiner points: 1") != std::string::npos);

  r = run({"solve", s.file("tri.json", kTriangle), "--max-steiner", "1", "--format", "json", "--parallel"});
  CHECK(r.code == kExitOk);
  CHECK(parse_json(r.out)["steiner_count"] == 1);
}

TEST_CASE("invalid input exits 2") {
  Scratch s;
  auto r = run({"solve", s.file("bad.json", R"({"schema_version":1,"space":{"mode":"euclidean","dimension":2},
                                              "sources":[[0,0]],"sinks":[]})")});
  CHECK(r.code == kExitInvalid);
  CHECK(r.err.find("sinks") != std::string::npos);
  CHECK(run({"solve", s.path("missing.json")}).code == kExitInvalid);
  CHECK(run({"solve"}).code == kExitInvalid);
  CHECK(run({"frobnicate"}).code == kExitInvalid);
  CHECK(run({"solve", s.file("two.json", kTwoPoint), "--tol", "-1"}).code == kExitInvalid);
}

TEST_CASE("budget refusal exits 3") {
  Scratch s;
  auto r = run({"solve", s.file("tri.json", kTriangle), "--max-steiner", "9"});
  CHECK(r.code == kExitBudget);
  CHECK(r.err.find("ceiling") != std::string::npos);
}

TEST_CASE("certify") {
  Scratch s;
  run({"solve", s.file("tri.json", kTriangle), "--max-steiner", "1", "-o", s.path("tri.sol")});
  CHECK(run({"certify", s.path("tri.sol")}).code == kExitOk);

  SUBCASE("25-vertex path") {
    // Hand-edit: replace the network by a source-to-sink path through 23
    // Steiner points, keeping length and digest valid.
    auto j = parse_json(read_file(s.file("two.json", kTwoPoint)));
    auto inst = instance_from_json(j);
    Json doc = parse_json(read_file(s.path("tri.sol")));
    doc["instance"] = instance_to_json(inst);
    doc["instance_digest"] = instance_digest(inst);
    Json vs = Json::array({{{"id", "a1"}, {"role", "source"}, {"location", {0, 0}}}});
    Json es = Json::array();
    std::string prev = "a1";
    for (int i = 1; i <= 23; ++i) {
      const std::string id = "x" + std::to_string(i);
      vs.push_back({{"id", id}, {"role", "steiner"}, {"location", {3.0 * i / 24, 4.0 * i / 24}}});
      es.push_back(Json::array({prev, id}));
      prev = id;
    }
    vs.push_back({{"id", "b1"}, {"role", "sink"}, {"location", {3, 4}}});
    es.push_back(Json::array({prev, "b1"}));
    doc["network"] = {{"vertices", vs}, {"edges", es}};
    doc["length"] = length(network_from_json(doc["network"], inst));
    auto r = run({"certify", s.file("long.sol", canonical_dump(doc))});
    CHECK(r.code == kExitInconsistent);
    CHECK(r.out.find("bound 20") != std::string::npos);
  }
  SUBCASE("truncated file") {
    auto text = read_file(s.path("tri.sol"));
    CHECK(run({"certify", s.file("cut.sol", text.substr(0, text.size() / 2))}).code == kExitInvalid);
  }
}

TEST_CASE("simplify") {
  Scratch s;
  Json doc = parse_json(kTwoPoint);
  Json net = {{"vertices",
               {{{"id", "a1"}, {"role", "source"}, {"location", {0, 0}}},
                {{"id", "b1"}, {"role", "sink"}, {"location", {3, 4}}},
                {{"id", "s"}, {"role", "steiner"}, {"location", {1, 3}}}}},
              {"edges", Json::array({Json::array({"a1", "s"}), Json::array({"s", "b1"})})}};
  Json file = {{"schema_version", 1}, {"instance", doc}, {"network", net}};
  auto r = run({"simplify", s.file("net.json", canonical_dump(file)), "--format", "json"});
  INFO(r.err);
  REQUIRE(r.code == kExitOk);
  auto out = parse_json(r.out);
  CHECK(out["network"]["edges"] == Json::array({Json::array({"a1", "b1"})}));
  CHECK(out["length"] == 5.0);
}

TEST_CASE("oracle matches solve on a finite instance") {
  Scratch s;
  auto gen = run({"gen", "--kind", "explicit", "--points", "5", "--m", "2", "--n", "2", "--seed", "7", "-o",
                  s.path("five.json")});
  REQUIRE(gen.code == kExitOk);
  REQUIRE(run({"solve", s.path("five.json"), "-o", s.path("a.sol")}).code == kExitOk);
  REQUIRE(run({"oracle", s.path("five.json"), "-o", s.path("b.sol")}).code == kExitOk);
  CHECK(stored_length(s.path("a.sol")) == stored_length(s.path("b.sol")));
}

TEST_CASE("reduce-med") {
  Scratch s;
  Digraph cycle{{"u", "v", "w"}, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}}};
  auto r = run({"reduce-med", s.file("c.json", canonical_dump(digraph_to_json(cycle))), "--format", "json"});
  CHECK(r.code == kExitOk);
  CHECK(parse_json(r.out)["arc_count"] == 3);

  Digraph path{{"u", "v"}, {{0, 1, 1}}};
  CHECK(run({"reduce-med", s.file("p.json", canonical_dump(digraph_to_json(path)))}).code == kExitInvalid);
}

TEST_CASE("gen is deterministic") {
  auto a = run({"gen", "--kind", "graph", "--seed", "11"});
  auto b = run({"gen", "--kind", "graph", "--seed", "11"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(run({"gen", "--kind", "nonsense"}).code == kExitInvalid);
}
