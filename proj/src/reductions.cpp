#include "dsn/reductions.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dsn/error.hpp"
#include "dsn/solver.hpp"

namespace dsn {

void validate(const Digraph& d) {
  std::set<std::string> names(d.vertices.begin(), d.vertices.end());
  if (names.size() != d.vertices.size()) throw InvalidSpace("digraph: duplicate vertex name");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& a : d.arcs) {
    if (a.from >= d.vertices.size() || a.to >= d.vertices.size()) throw InvalidSpace("digraph: arc endpoint out of range");
    if (a.from == a.to) throw InvalidSpace("digraph: self-loop at '" + d.vertices[a.from] + "'");
    if (!(a.weight > 0.0)) throw InvalidSpace("digraph: arc weights must be positive");
    if (!seen.insert({a.from, a.to}).second) throw InvalidSpace("digraph: duplicate arc");
  }
}

std::vector<std::vector<bool>> reachability(std::size_t n, const std::vector<Edge>& arcs) {
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
  for (const auto& a : arcs) reach[a.from][a.to] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  return reach;
}

namespace {

std::vector<Edge> plain_arcs(const Digraph& d) {
  std::vector<Edge> arcs;
  for (const auto& a : d.arcs) arcs.push_back({a.from, a.to});
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

}  // namespace

std::vector<std::vector<bool>> reachability(const Digraph& d) {
  return reachability(d.vertices.size(), plain_arcs(d));
}

std::optional<std::pair<std::size_t, std::size_t>> unreachable_pair(const Digraph& d) {
  const auto reach = reachability(d);
  for (std::size_t u = 0; u < reach.size(); ++u)
    for (std::size_t v = 0; v < reach.size(); ++v)
      if (!reach[u][v]) return std::pair{u, v};
  return std::nullopt;
}

Instance med_to_instance(const Digraph& d) {
  validate(d);
  if (d.vertices.empty()) throw InvalidSpace("digraph: no vertices");
  if (auto bad = unreachable_pair(d))
    throw PreconditionError("digraph is not strongly connected: '" + d.vertices[bad->second] +
                            "' is unreachable from '" + d.vertices[bad->first] + "'");
  std::vector<WeightedEdge> unit;
  for (const auto& a : d.arcs) unit.push_back({a.from, a.to, 1.0});
  Instance inst;
  inst.space = std::make_shared<Space>(Space::ambient_digraph(d.vertices, std::move(unit)));
  for (std::size_t i = 0; i < d.vertices.size(); ++i) {
    inst.sources.emplace_back(PointId{i});
    inst.sinks.emplace_back(PointId{i});
  }
  return inst;
}

std::vector<Edge> brute_force_med(const Digraph& d) {
  validate(d);
  const std::size_t n = d.vertices.size();
  if (n > 7) {
    std::ostringstream msg;
    msg << "brute_force_med refused: " << n << " vertices exceed the limit of 7";
    throw BudgetExceeded(msg.str());
  }
  const auto arcs = plain_arcs(d);
  const auto target = reachability(n, arcs);
  const std::size_t total = arcs.size();
  for (std::size_t size = 0; size <= total; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      std::vector<Edge> subset;
      for (auto i : idx) subset.push_back(arcs[i]);
      if (reachability(n, subset) == target) return subset;
      // Next combination in lexicographic order.
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == total - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return arcs;
}

std::vector<Edge> solve_med(const Digraph& d, SolveConfig config) {
  const auto inst = med_to_instance(d);
  config.max_steiner = 0;
  config.variant = Variant::all_pairs;
  const auto sol = solve(inst, config);
  std::vector<Edge> out;
  const auto& vs = sol.network.vertices();
  for (const auto& e : sol.network.edges())
    out.push_back({std::get<PointId>(vs[e.from].location).index, std::get<PointId>(vs[e.to].location).index});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dsn
