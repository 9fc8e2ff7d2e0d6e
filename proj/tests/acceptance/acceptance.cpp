// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "dsn/analyzer.hpp"
#include "dsn/generate.hpp"
#include "dsn/placement.hpp"
#include "dsn/reductions.hpp"
#include "dsn/solver.hpp"

using namespace dsn;

namespace {

const double kSqrt3 = std::sqrt(3.0);

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

// Networks produced by the solver along the way, certified at the end.
std::vector<Network> solved;

void criterion(const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    o.ok = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(limit_seconds)) + " s limit)";
  }
  if (!o.ok) ++failures;
  std::printf("%s %s [%.3f s] %s\n", o.ok ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

Instance planar(std::vector<Coordinates> sources, std::vector<Coordinates> sinks) {
  Instance inst;
  inst.space = std::make_shared<Space>(Space::euclidean(2));
  for (auto& s : sources) inst.sources.emplace_back(s);
  for (auto& s : sinks) inst.sinks.emplace_back(s);
  return inst;
}

SolveConfig budget(std::size_t k) {
  SolveConfig c;
  c.max_steiner = k;
  return c;
}

std::string num(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

// Network with a long path x0..x7, a source a1 entering at x4, jumps x4->x1
// and x2->x0 and a sink b1 off x0. All distances 1 except d(x1,x2) = 2.
Network reversal_network() {
  std::vector<std::string> labels;
  for (int t = 0; t < 8; ++t) labels.push_back("x" + std::to_string(t));
  labels.push_back("a1");
  labels.push_back("b1");
  std::vector<std::vector<double>> d(10, std::vector<double>(10, 1.0));
  for (int u = 0; u < 10; ++u) d[u][u] = 0;
  d[1][2] = d[2][1] = 2;
  auto space = std::make_shared<Space>(Space::explicit_matrix(labels, d));
  std::vector<Vertex> vs;
  for (std::size_t t = 0; t < 10; ++t) {
    Role role = Role::steiner;
    if (t == 0 || t == 8) role = Role::source;
    if (t == 7 || t == 9) role = Role::sink;
    vs.push_back({labels[t], role, PointId{t}});
  }
  std::set<Edge> edges{{8, 4}, {4, 1}, {2, 0}, {0, 9}};
  for (std::size_t t = 0; t < 7; ++t) edges.insert({t, t + 1});
  return Network(space, vs, edges);
}

}  // namespace

int main() {
  criterion("geodesic base case: 50 random m=n=1 instances", 1.0, [] {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      auto inst = random_euclidean_instance(seed, 1, 1, 2, 10.0);
      auto sol = solve(inst, {});
      const double rho = inst.space->distance(inst.sources[0], inst.sinks[0]);
      if (std::abs(sol.length - rho) > 1e-9 || sol.network.steiner_count() != 0)
        return Outcome{false, "seed " + std::to_string(seed) + ": length " + num(sol.length) + " vs " + num(rho)};
      solved.push_back(sol.network);
    }
    return Outcome{true, "all lengths equal rho(a,b), no Steiner points"};
  });

  criterion("Fermat instance", 1.0, [] {
    auto sol = solve(planar({{0, 0}, {1, 0}}, {{0.5, kSqrt3 / 2}}), budget(1));
    solved.push_back(sol.network);
    if (sol.network.steiner_count() != 1) return Outcome{false, "expected one Steiner point"};
    const auto& s = std::get<Coordinates>(sol.network.vertices()[sol.network.steiner_points()[0]].location);
    const double err_len = std::abs(sol.length - kSqrt3);
    const double err_pos = std::hypot(s[0] - 0.5, s[1] - kSqrt3 / 6);
    return Outcome{err_len <= 1e-6 && err_pos <= 1e-4,
                   "length error " + num(err_len) + ", Steiner point error " + num(err_pos)};
  });

  criterion("unit square, max_steiner=2", 300.0, [] {
    auto sol = solve(planar({{0, 0}, {0, 1}}, {{1, 0}, {1, 1}}), budget(2));
    solved.push_back(sol.network);
    const double err = std::abs(sol.length - (1 + kSqrt3));
    return Outcome{err <= 1e-6 && sol.network.steiner_count() == 2,
                   "length " + num(sol.length) + " (error " + num(err) + "), " +
                       std::to_string(sol.network.steiner_count()) + " Steiner points, " +
                       std::to_string(sol.topologies_examined) + " topologies"};
  });

  criterion("oracle equivalence: 100 random finite metrics", 300.0, [] {
    std::size_t mismatches = 0;
    std::string first;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const std::size_t points = 3 + seed % 4;
      const std::size_t m = 1 + seed % 2, n = 1 + (seed / 2) % 2;
      const auto mode = seed % 3 == 0 ? SpaceMode::graph_metric : SpaceMode::explicit_matrix;
      auto inst = random_finite_instance(1000 + seed, points, m, n, mode);
      auto s = solve(inst, {});
      auto o = brute_force_oracle(inst);
      solved.push_back(s.network);
      if (s.length != o.length) {
        if (!mismatches) first = "seed " + std::to_string(seed) + ": " + num(s.length) + " vs " + num(o.length);
        ++mismatches;
      }
    }
    return Outcome{mismatches == 0, mismatches ? first : "100/100 exactly equal"};
  });

  criterion("point-to-point variant", 0, [] {
    // Disjoint pairs far apart.
    auto far = planar({{0, 0}, {50, 50}}, {{2, 1}, {53, 50}});
    far.pairs = PairList{{0, 0}, {1, 1}};
    auto sol = solve_point_to_point(far, budget(2));
    solved.push_back(sol.network);
    const double expect = std::hypot(2, 1) + 3;
    if (std::abs(sol.length - expect) > 1e-9 || sol.network.steiner_count() != 0)
      return Outcome{false, "disjoint pairs: length " + num(sol.length) + " vs " + num(expect)};
    // Two pairs whose cheapest routes share the s-t corridor.
    Instance share;
    share.space = std::make_shared<Space>(Space::graph_metric(
        {"a1", "a2", "b1", "b2", "s", "t"},
        {{0, 4, 2}, {1, 4, 2}, {4, 5, 5}, {5, 2, 2}, {5, 3, 2}, {0, 2, 10}, {1, 3, 10}}));
    share.sources = {PointId{0}, PointId{1}};
    share.sinks = {PointId{2}, PointId{3}};
    share.pairs = PairList{{0, 0}, {1, 1}};
    auto shared = solve_point_to_point(share, {});
    auto oracle = brute_force_oracle(share);
    solved.push_back(shared.network);
    const double disjoint = share.space->distance(PointId{0}, PointId{2}) + share.space->distance(PointId{1}, PointId{3});
    return Outcome{shared.length == oracle.length && shared.length < disjoint,
                   "disjoint " + num(sol.length) + " = sum of geodesics; shared " + num(shared.length) + " (oracle " +
                       num(oracle.length) + ") < " + num(disjoint)};
  });

  criterion("theorem-consistency sweep over solver outputs", 0, [] {
    std::size_t bad = 0, worst_path = 0, worst_cover = 0;
    std::string first;
    for (const auto& net : solved) {
      auto c = certify(net);
      worst_path = std::max(worst_path, c.max_path_vertices);
      worst_cover = std::max(worst_cover, c.cover_size);
      if (!c.consistent) {
        if (!bad) first = c.witnesses.empty() ? "?" : c.witnesses.front();
        ++bad;
      }
    }
    return Outcome{bad == 0, std::to_string(solved.size()) + " networks, " + std::to_string(bad) +
                                 " inconsistent; largest path " + std::to_string(worst_path) + ", largest cover " +
                                 std::to_string(worst_cover) + (bad ? "; " + first : "")};
  });

  criterion("simplification suite: 500 random connecting networks", 60.0, [] {
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
      Instance inst;
      switch (seed % 3) {
        case 0: inst = random_euclidean_instance(seed, 1 + seed % 3, 1 + (seed / 3) % 3); break;
        case 1: inst = random_finite_instance(seed, 10, 1 + seed % 3, 1 + (seed / 3) % 3); break;
        default: inst = random_finite_instance(seed, 10, 2, 2, SpaceMode::graph_metric); break;
      }
      auto net = random_connecting_network(seed, inst, 6);
      auto s = simplify(net);
      const bool exact = inst.space->is_finite();
      const bool shorter = exact ? length(s) <= length(net) : length(s) <= length(net) * (1 + 1e-12);
      auto again = simplify(s);
      const bool idempotent = again.edges() == s.edges() && again.vertices().size() == s.vertices().size();
      if (!is_connecting(s) || !shorter || !is_simple(s) || !idempotent)
        return Outcome{false, "seed " + std::to_string(seed)};
    }
    return Outcome{true, "connecting, never longer, simple, idempotent"};
  });

  criterion("reversal move on the k-j=1 pattern", 0, [] {
    auto net = reversal_network();
    auto d = decompose(net);
    auto out = improve_by_reversal(net, d);
    if (!out) return Outcome{false, "pattern not found"};
    const double drop = length(net) - length(*out);
    const double rho = net.space().distance(PointId{1}, PointId{2});
    return Outcome{is_connecting(*out) && drop == rho,
                   "length " + num(length(net)) + " -> " + num(length(*out)) + ", drop " + num(drop) +
                       " = rho(x1,x2) " + num(rho)};
  });

  criterion("convexity: 10 starts on 20 random topologies", 0, [] {
    std::mt19937_64 rng(2024);
    double worst = 0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      const std::size_t shapes[3][2] = {{1, 2}, {2, 1}, {2, 2}};
      const std::size_t m = shapes[trial % 3][0], n = shapes[trial % 3][1];
      const std::size_t k = 1 + (trial / 3) % 2;
      auto inst = random_euclidean_instance(500 + trial, m, n);
      auto topologies = enumerate_topologies(all_pairs_layout(m, n), k, {});
      if (topologies.empty()) topologies = enumerate_topologies(all_pairs_layout(m, n), 1, {});
      if (topologies.empty()) return Outcome{false, "no topology for trial " + std::to_string(trial)};
      const auto& topo = topologies[rng() % topologies.size()];
      SolveConfig config;
      std::uniform_real_distribution<double> unit(-0.5, 1.5);
      double lo = INFINITY, hi = 0;
      for (int start = 0; start < 10; ++start) {
        std::vector<Coordinates> init(topo.steiner_count);
        for (auto& c : init) c = {unit(rng), unit(rng)};
        auto p = optimize_positions(topo, inst, config, start == 0 ? nullptr : &init);
        lo = std::min(lo, p->length);
        hi = std::max(hi, p->length);
      }
      worst = std::max(worst, (hi - lo) / lo);
    }
    return Outcome{worst <= 1e-6, "largest relative spread " + num(worst)};
  });

  criterion("MED pipeline: 50 random strongly connected digraphs", 300.0, [] {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const std::size_t n = 2 + seed % 5;
      auto d = random_strong_digraph(seed, n);
      const auto piped = solve_med(d).size();
      const auto brute = brute_force_med(d).size();
      if (piped != brute)
        return Outcome{false, "seed " + std::to_string(seed) + ": " + std::to_string(piped) + " vs " +
                                  std::to_string(brute)};
    }
    return Outcome{true, "50/50 arc counts equal"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures ? 1 : 0;
}
