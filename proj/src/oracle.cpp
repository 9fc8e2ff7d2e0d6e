#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>

#include "dsn/error.hpp"
#include "dsn/solver.hpp"

namespace dsn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kOraclePointLimit = 7;

struct Arc {
  std::size_t from, to;
  double cost;
};

// Include/exclude search over arcs sorted by cost. The bound is the cost of
// the included arcs plus, for the worst demand, its shortest path where
// included arcs are free and undecided arcs cost their length.
class BranchAndBound {
 public:
  BranchAndBound(std::size_t vertices, std::vector<Arc> arcs, std::vector<Demand> demands)
      : n_(vertices), arcs_(std::move(arcs)), demands_(std::move(demands)), included_(arcs_.size(), false) {}

  std::vector<bool> run() {
    descend(0, 0.0);
    return best_set_;
  }
  double best() const { return best_; }

 private:
  double shortest(std::size_t s, std::size_t t, std::size_t next) const {
    std::vector<double> dist(n_, kInf);
    dist[s] = 0.0;
    std::vector<bool> done(n_, false);
    for (std::size_t round = 0; round < n_; ++round) {
      std::size_t u = n_;
      for (std::size_t v = 0; v < n_; ++v)
        if (!done[v] && dist[v] < kInf && (u == n_ || dist[v] < dist[u])) u = v;
      if (u == n_) break;
      if (u == t) return dist[u];
      done[u] = true;
      for (std::size_t i = 0; i < arcs_.size(); ++i) {
        if (arcs_[i].from != u) continue;
        double w;
        if (included_[i]) w = 0.0;
        else if (i >= next) w = arcs_[i].cost;
        else continue;
        if (dist[u] + w < dist[arcs_[i].to]) dist[arcs_[i].to] = dist[u] + w;
      }
    }
    return dist[t];
  }

  void descend(std::size_t next, double cost) {
    double bound = 0.0;
    bool connected = true;
    for (const auto& [a, b] : demands_) {
      const double d = shortest(a, b, next);
      if (d == kInf) return;
      if (d > 0.0) connected = false;
      bound = std::max(bound, d);
    }
    if (cost + bound >= best_) return;
    if (connected) {
      // Zero-cost paths may still rely on undecided zero-length arcs.
      if (satisfied()) {
        best_ = cost;
        best_set_ = included_;
        return;
      }
    }
    if (next == arcs_.size()) return;
    included_[next] = true;
    descend(next + 1, cost + arcs_[next].cost);
    included_[next] = false;
    descend(next + 1, cost);
  }

  bool satisfied() const {
    for (const auto& [a, b] : demands_) {
      std::vector<bool> seen(n_, false);
      std::vector<std::size_t> stack{a};
      seen[a] = true;
      while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (std::size_t i = 0; i < arcs_.size(); ++i)
          if (included_[i] && arcs_[i].from == u && !seen[arcs_[i].to]) {
            seen[arcs_[i].to] = true;
            stack.push_back(arcs_[i].to);
          }
      }
      if (!seen[b]) return false;
    }
    return true;
  }

  std::size_t n_;
  std::vector<Arc> arcs_;
  std::vector<Demand> demands_;
  std::vector<bool> included_;
  std::vector<bool> best_set_;
  double best_ = kInf;
};

}  // namespace

Solution brute_force_oracle(const Instance& instance, const SolveConfig& config) {
  validate(instance);
  const auto& space = *instance.space;
  if (space.is_continuous()) throw PreconditionError("brute_force_oracle needs a finite space");
  if (space.point_count() > kOraclePointLimit) {
    std::ostringstream msg;
    msg << "oracle refused: " << space.point_count() << " points exceed the limit of " << kOraclePointLimit;
    throw BudgetExceeded(msg.str());
  }
  const auto variant = effective_variant(instance, config);
  const auto setup = terminal_setup(instance, variant);
  const std::size_t t = setup.layout.terminals;

  std::vector<std::size_t> points;
  std::vector<bool> occupied(space.point_count(), false);
  for (const auto& v : setup.vertices) {
    points.push_back(std::get<PointId>(v.location).index);
    occupied[points.back()] = true;
  }
  for (std::size_t p = 0; p < space.point_count(); ++p)
    if (!occupied[p]) points.push_back(p);
  const std::size_t nv = points.size();

  const bool ambient = space.mode() == SpaceMode::ambient_digraph;
  std::vector<Arc> arcs;
  for (std::size_t u = 0; u < nv; ++u)
    for (std::size_t v = 0; v < nv; ++v) {
      if (u == v) continue;
      if (ambient) {
        if (auto w = space.arc_weight(points[u], points[v])) arcs.push_back({u, v, *w});
      } else {
        arcs.push_back({u, v, space.distance_matrix()[points[u]][points[v]]});
      }
    }
  std::stable_sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
    return std::tie(x.cost, x.from, x.to) < std::tie(y.cost, y.from, y.to);
  });

  BranchAndBound search(nv, arcs, setup.layout.demands);
  const auto chosen = search.run();
  if (chosen.empty() && search.best() == kInf)
    throw PreconditionError("no connecting network exists in this space");

  std::set<Edge> local;
  std::vector<bool> used(nv, false);
  for (std::size_t i = 0; i < chosen.size(); ++i)
    if (chosen[i]) {
      local.insert({arcs[i].from, arcs[i].to});
      used[arcs[i].from] = used[arcs[i].to] = true;
    }
  auto vertices = setup.vertices;
  std::vector<std::size_t> remap(nv);
  for (std::size_t i = 0; i < t; ++i) remap[i] = i;
  for (std::size_t i = t; i < nv; ++i) {
    if (!used[i]) continue;
    remap[i] = vertices.size();
    vertices.push_back({space.labels()[points[i]], Role::steiner, PointId{points[i]}});
  }
  std::set<Edge> edges;
  for (const auto& e : local) edges.insert({remap[e.from], remap[e.to]});
  Network net = prune_redundant_edges(Network(instance.space, std::move(vertices), std::move(edges), setup.pairs));
  const double len = length(net);
  Solution sol{std::move(net), len, 0, SolveStatus::oracle_exact, nv - t,
               theorem_steiner_bound(instance.m(), instance.n()), false, true};
  return sol;
}

}  // namespace dsn
