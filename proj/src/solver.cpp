#include "dsn/solver.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "dsn/error.hpp"
#include "dsn/placement.hpp"
#include "dsn/topology.hpp"

namespace dsn {

std::string to_string(SolveStatus status) {
  return status == SolveStatus::oracle_exact ? "oracle_exact" : "optimal_within_budget";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Topologies depend only on the layout, so repeated solves share them.
const std::vector<Topology>& cached_topologies(const TerminalLayout& layout, std::size_t k,
                                               const EnumerationLimits& limits) {
  using Key = std::tuple<TerminalLayout, std::size_t, std::size_t, std::size_t>;
  static std::mutex mutex;
  static std::map<Key, std::vector<Topology>> cache;
  const Key key{layout, k, limits.max_vertices, limits.max_search_nodes};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto tops = enumerate_topologies(layout, k, limits);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(tops)).first->second;
}

struct Evaluated {
  std::optional<Network> network;
  double length = kInf;
  bool converged = true;
};

// Runs `work(i)` for i in [0, count), serially or across OpenMP threads.
// Results land in per-index slots, so the outcome is independent of the
// schedule.
template <typename Work>
void for_each_index(std::size_t count, bool parallel, Work&& work) {
  if (!parallel) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < n; ++i) {
    try {
      work(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::size_t free_points(const Instance& instance, const TerminalSetup& setup) {
  if (instance.space->is_continuous()) return std::numeric_limits<std::size_t>::max();
  return instance.space->point_count() - setup.layout.terminals;
}

// Ambient digraphs cannot take shortcut edges, so the search runs directly on
// located vertex sets: every k-subset of non-terminal vertices, every minimal
// connecting arc set within the ambient arcs.
void search_ambient(const Instance& instance, const TerminalSetup& setup, std::size_t max_k,
                    const EnumerationLimits& limits, std::vector<Evaluated>& out) {
  const auto& space = *instance.space;
  const std::size_t t = setup.layout.terminals;
  std::vector<bool> occupied(space.point_count(), false);
  for (const auto& v : setup.vertices) occupied[std::get<PointId>(v.location).index] = true;
  std::vector<std::size_t> free;
  for (std::size_t p = 0; p < space.point_count(); ++p)
    if (!occupied[p]) free.push_back(p);

  for (std::size_t k = 0; k <= std::min(max_k, free.size()); ++k) {
    std::vector<bool> pick(free.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
      std::vector<std::size_t> points;
      for (const auto& v : setup.vertices) points.push_back(std::get<PointId>(v.location).index);
      for (std::size_t i = 0; i < free.size(); ++i)
        if (pick[i]) points.push_back(free[i]);
      const std::size_t nv = points.size();
      ArcSetQuery q;
      q.vertex_count = nv;
      q.demands = setup.layout.demands;
      q.steiner_begin = t;
      q.require_simple = false;
      q.allowed = 0;
      for (std::size_t u = 0; u < nv; ++u)
        for (std::size_t v = 0; v < nv; ++v)
          if (u != v && space.arc_weight(points[u], points[v])) q.allowed |= ArcMask{1} << arc_bit(u, v, nv);
      for (auto mask : minimal_connecting_arc_sets(q, limits)) {
        auto vertices = setup.vertices;
        for (std::size_t i = t; i < nv; ++i) vertices.push_back({space.labels()[points[i]], Role::steiner, PointId{points[i]}});
        const auto arcs = mask_to_arcs(mask, nv);
        Network net(instance.space, std::move(vertices), std::set<Edge>(arcs.begin(), arcs.end()), setup.pairs);
        const double len = length(net);
        out.push_back({std::move(net), len, true});
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
}

}  // namespace

Network finalize_network(const Network& net) {
  if (net.space().mode() == SpaceMode::ambient_digraph) return prune_redundant_edges(net);
  Network current = contract_short_edges(net, 0.0);
  for (;;) {
    Network next = prune_redundant_edges(simplify(current));
    if (next.vertex_count() == current.vertex_count() && next.edges() == current.edges()) return next;
    current = std::move(next);
  }
}

Solution solve(const Instance& instance, const SolveConfig& config) {
  validate(instance);
  validate(config);
  const auto variant = effective_variant(instance, config);
  const auto setup = terminal_setup(instance, variant);
  const std::size_t t = setup.layout.terminals;
  const std::size_t bound = theorem_steiner_bound(instance.m(), instance.n());
  const std::size_t ceiling = std::min<std::size_t>(config.limits.max_vertices, 8);
  if (t > ceiling) {
    std::ostringstream msg;
    msg << "enumeration refused: " << t << " terminals exceed the vertex ceiling of " << ceiling;
    throw BudgetExceeded(msg.str());
  }
  const std::size_t budget = config.max_steiner.value_or(std::min(bound, ceiling - t));
  const std::size_t reachable = std::min(budget, free_points(instance, setup));
  const bool binding = reachable < std::min(bound, free_points(instance, setup));

  std::vector<Evaluated> results;
  std::size_t examined = 0;
  if (instance.space->mode() == SpaceMode::ambient_digraph) {
    search_ambient(instance, setup, reachable, config.limits, results);
    examined = results.size();
  } else {
    std::vector<const Topology*> work;
    for (std::size_t k = 0; k <= reachable; ++k)
      for (const auto& top : cached_topologies(setup.layout, k, config.limits)) work.push_back(&top);
    examined = work.size();
    results.resize(work.size());
    for_each_index(work.size(), config.parallel, [&](std::size_t i) {
      auto placed = optimize_positions(*work[i], instance, config);
      if (!placed) return;
      Network net = finalize_network(placed->network);
      const double len = length(net);
      results[i] = Evaluated{std::move(net), len, placed->converged};
    });
  }

  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < results.size(); ++i)
    if (results[i].network && (!best || results[i].length < results[*best].length)) best = i;
  if (!best) throw PreconditionError("no connecting network exists within the search space");

  auto& win = results[*best];
  Solution sol{std::move(*win.network), win.length, examined, SolveStatus::optimal_within_budget,
               reachable, bound, binding, win.converged};
  return sol;
}

Solution solve_point_to_point(const Instance& instance, SolveConfig config) {
  if (!instance.pairs || instance.pairs->empty()) throw InvalidTerminal("pairs: must be nonempty");
  config.variant = Variant::point_to_point;
  return solve(instance, config);
}

}  // namespace dsn
