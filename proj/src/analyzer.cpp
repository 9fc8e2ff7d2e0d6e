#include "dsn/analyzer.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

#include "dsn/error.hpp"
#include "dsn/instance.hpp"

namespace dsn {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::vector<std::size_t> positions_on(const Network& net, const Path& P) {
  std::vector<std::size_t> pos(net.vertex_count(), kNone);
  for (std::size_t t = 0; t < P.size(); ++t) pos[P[t]] = t;
  return pos;
}

std::set<Edge> path_edges(const Path& path) {
  std::set<Edge> out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) out.insert({path[i], path[i + 1]});
  return out;
}

// Shortest path from `from` to `to` over `adj`, skipping vertices flagged in
// `blocked` (the endpoints are never blocked). Empty if none.
Path bfs_path(const std::vector<std::vector<std::size_t>>& adj, std::size_t from, std::size_t to,
              const std::vector<bool>* blocked = nullptr) {
  std::vector<std::size_t> parent(adj.size(), kNone);
  std::deque<std::size_t> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    if (u == to) break;
    for (auto v : adj[u]) {
      if (parent[v] != kNone) continue;
      if (blocked && (*blocked)[v] && v != to) continue;
      parent[v] = u;
      queue.push_back(v);
    }
  }
  if (parent[to] == kNone) return {};
  Path out{to};
  while (out.back() != from) out.push_back(parent[out.back()]);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> adjacency_of(std::size_t n, const std::set<Edge>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : edges) adj[e.from].push_back(e.to);
  return adj;
}

Path loop_erase(const Path& walk) {
  Path out;
  std::map<std::size_t, std::size_t> at;
  for (auto v : walk) {
    if (auto it = at.find(v); it != at.end()) {
      for (std::size_t i = it->second + 1; i < out.size(); ++i) at.erase(out[i]);
      out.resize(it->second + 1);
      continue;
    }
    at[v] = out.size();
    out.push_back(v);
  }
  return out;
}

std::string describe(const Network& net, const Path& path) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "," : "") + net.vertices()[path[i]].id;
  return s;
}

std::string jump_name(const Jump& jump) {
  return "(" + std::to_string(jump.i) + "," + std::to_string(jump.j) + ")";
}

}  // namespace

Path longest_ab_path(const Network& net, std::size_t max_paths) {
  const auto adj = net.out_adjacency();
  const auto& vs = net.vertices();
  std::vector<std::vector<bool>> wanted(net.vertex_count(), std::vector<bool>(net.vertex_count(), false));
  for (auto [a, b] : net.demands()) wanted[a][b] = true;

  auto ids_less = [&](const Path& x, const Path& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        [&](std::size_t u, std::size_t v) { return vs[u].id < vs[v].id; });
  };

  Path best, current;
  std::vector<bool> on(net.vertex_count(), false);
  std::size_t explored = 0;
  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    if (++explored > max_paths)
      throw BudgetExceeded("longest path search explored more than " + std::to_string(max_paths) + " paths");
    on[u] = true;
    current.push_back(u);
    if (wanted[current.front()][u] &&
        (current.size() > best.size() || (current.size() == best.size() && ids_less(current, best))))
      best = current;
    for (auto v : adj[u])
      if (!on[v]) dfs(v);
    current.pop_back();
    on[u] = false;
  };
  for (auto a : net.sources()) dfs(a);
  if (best.empty() && !net.demands().empty()) throw PreconditionError("longest path: network has no source-to-sink path");
  return best;
}

Reach first_reach(const Network& net, const Path& P, std::size_t a) {
  const auto seen = reachable_from(net, a);
  std::size_t x = kNone;
  for (std::size_t t = 0; t < P.size() && x == kNone; ++t)
    if (seen[P[t]]) x = t;
  if (x == kNone) return {Reach::none, {}};
  if (P[x] == a) return {x, {a}};
  const auto adj = net.out_adjacency();
  std::vector<bool> blocked(net.vertex_count(), false);
  for (auto v : P) blocked[v] = v != a;
  auto witness = bfs_path(adj, a, P[x], &blocked);
  if (witness.empty()) witness = bfs_path(adj, a, P[x]);
  return {x, witness};
}

Reach last_reach(const Network& net, const Path& P, std::size_t b) {
  const auto seen = reaching(net, b);
  std::size_t y = kNone;
  for (std::size_t t = P.size(); t-- > 0 && y == kNone;)
    if (seen[P[t]]) y = t;
  if (y == kNone) return {Reach::none, {}};
  if (P[y] == b) return {y, {b}};
  // Search backwards from b so ties resolve on the sink side as for sources.
  const auto radj = net.in_adjacency();
  std::vector<bool> blocked(net.vertex_count(), false);
  for (auto v : P) blocked[v] = v != b;
  auto witness = bfs_path(radj, b, P[y], &blocked);
  if (witness.empty()) witness = bfs_path(radj, b, P[y]);
  std::reverse(witness.begin(), witness.end());
  return {y, witness};
}

Path canonicalize_path(const Network& net, const Path& P, std::size_t a, std::size_t b, const Reach& x_of_a,
                       const Reach& y_of_b) {
  if (x_of_a.index == Reach::none || y_of_b.index == Reach::none || x_of_a.index > y_of_b.index) {
    // No a-b path meets P: any vertex of P on it would sit between x(a) and y(b).
    auto path = bfs_path(net.out_adjacency(), a, b);
    if (path.empty())
      throw StructuralCorruption("no path from " + net.vertices()[a].id + " to " + net.vertices()[b].id);
    return path;
  }
  const auto pos = positions_on(net, P);
  const auto& edges = net.edges();

  Path walk = x_of_a.witness;
  for (std::size_t t = x_of_a.index + 1; t <= y_of_b.index; ++t) walk.push_back(P[t]);
  walk.insert(walk.end(), y_of_b.witness.begin() + 1, y_of_b.witness.end());

  // Each pass removes at least one off-P edge, so the loop is bounded.
  for (std::size_t pass = 0; pass <= walk.size() + edges.size(); ++pass) {
    walk = loop_erase(walk);
    std::size_t prev = kNone, detour_from = kNone, detour_to = kNone;
    for (std::size_t q = 0; q < walk.size(); ++q) {
      if (pos[walk[q]] == kNone) continue;
      if (prev != kNone && pos[walk[q]] > pos[walk[prev]] && !(q == prev + 1 && pos[walk[q]] == pos[walk[prev]] + 1)) {
        detour_from = prev;
        detour_to = q;
        break;
      }
      prev = q;
    }
    if (detour_from == kNone) return walk;
    Path spliced(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(detour_from));
    for (std::size_t t = pos[walk[detour_from]]; t <= pos[walk[detour_to]]; ++t) spliced.push_back(P[t]);
    spliced.insert(spliced.end(), walk.begin() + static_cast<std::ptrdiff_t>(detour_to) + 1, walk.end());
    walk = std::move(spliced);
  }
  throw StructuralCorruption("canonical path normalization did not settle");
}

std::vector<Jump> path_jumps(const Path& P, const Path& path) {
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t t = 0; t < P.size(); ++t) pos[P[t]] = t;
  std::vector<Jump> out;
  std::size_t prev = kNone;
  for (std::size_t q = 0; q < path.size(); ++q) {
    auto it = pos.find(path[q]);
    if (it == pos.end()) continue;
    if (prev != kNone && it->second < pos[path[prev]])
      out.push_back({pos[path[prev]], it->second, Path(path.begin() + static_cast<std::ptrdiff_t>(prev),
                                                       path.begin() + static_cast<std::ptrdiff_t>(q) + 1)});
    prev = q;
  }
  return out;
}

CoverResult minimal_jump_cover(const Network& net, const std::set<Edge>& base, const std::vector<Jump>& jumps) {
  std::vector<Jump> order = jumps;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  std::map<Edge, std::size_t> count;
  for (const auto& e : net.edges()) count[e] = base.count(e) ? 1 : 0;
  std::vector<std::set<Edge>> own(order.size());
  for (std::size_t q = 0; q < order.size(); ++q) {
    own[q] = path_edges(order[q].vertices);
    for (const auto& e : own[q]) ++count[e];
  }

  CoverResult result;
  for (const auto& [e, c] : count)
    if (c == 0) result.uncovered.push_back(e);

  std::vector<bool> keep(order.size(), true);
  for (std::size_t q = 0; q < order.size(); ++q) {
    const bool needed = std::any_of(own[q].begin(), own[q].end(), [&](const Edge& e) { return count[e] == 1; });
    if (needed) continue;
    keep[q] = false;
    for (const auto& e : own[q]) --count[e];
  }
  for (std::size_t q = 0; q < order.size(); ++q)
    if (keep[q]) result.cover.push_back(order[q]);
  return result;
}

std::set<std::size_t> PathDecomposition::reach_indices() const {
  std::set<std::size_t> out;
  for (const auto& [v, r] : x_of_a)
    if (r.index != Reach::none) out.insert(r.index);
  for (const auto& [v, r] : y_of_b)
    if (r.index != Reach::none) out.insert(r.index);
  return out;
}

PathDecomposition decompose(const Network& net, std::size_t max_paths) {
  if (!is_connecting(net)) throw PreconditionError("decomposition needs a connecting network");
  PathDecomposition d;
  d.P = longest_ab_path(net, max_paths);
  // Terminals with no live demand (paired away, or merged with their
  // partner) play no part.
  for (const auto& [a, b] : net.demands()) {
    if (!d.x_of_a.count(a)) d.x_of_a[a] = first_reach(net, d.P, a);
    if (!d.y_of_b.count(b)) d.y_of_b[b] = last_reach(net, d.P, b);
  }

  const auto pos = positions_on(net, d.P);
  d.base = path_edges(d.P);
  for (const auto& demand : net.demands()) {
    const auto [a, b] = demand;
    auto path = canonicalize_path(net, d.P, a, b, d.x_of_a.at(a), d.y_of_b.at(b));
    std::size_t first = kNone, last = kNone;
    for (std::size_t q = 0; q < path.size(); ++q)
      if (pos[path[q]] != kNone) {
        if (first == kNone) first = q;
        last = q;
      }
    if (first == kNone) {
      auto e = path_edges(path);
      d.base.insert(e.begin(), e.end());
    } else {
      for (std::size_t q = 0; q < first; ++q) d.base.insert({path[q], path[q + 1]});
      for (std::size_t q = last; q + 1 < path.size(); ++q) d.base.insert({path[q], path[q + 1]});
      for (auto& jump : path_jumps(d.P, path)) d.jumps.push_back(std::move(jump));
    }
    d.canonical_paths[demand] = std::move(path);
  }
  std::sort(d.jumps.begin(), d.jumps.end());
  d.jumps.erase(std::unique(d.jumps.begin(), d.jumps.end()), d.jumps.end());

  auto cover = minimal_jump_cover(net, d.base, d.jumps);
  d.cover = std::move(cover.cover);
  d.uncovered = std::move(cover.uncovered);

  // Reroute jumps outside the cover through the base and the cover.
  std::set<Edge> h = d.base;
  for (const auto& jump : d.cover) {
    auto e = path_edges(jump.vertices);
    h.insert(e.begin(), e.end());
  }
  const auto h_adj = adjacency_of(net.vertex_count(), h);
  const std::set<Jump> in_cover(d.cover.begin(), d.cover.end());
  for (const auto& [demand, path] : d.canonical_paths) {
    Path out;
    std::size_t q = 0;
    for (const auto& jump : path_jumps(d.P, path)) {
      const auto start = static_cast<std::size_t>(
          std::search(path.begin() + static_cast<std::ptrdiff_t>(q), path.end(), jump.vertices.begin(),
                      jump.vertices.end()) -
          path.begin());
      out.insert(out.end(), path.begin() + static_cast<std::ptrdiff_t>(q), path.begin() + static_cast<std::ptrdiff_t>(start));
      Path route = in_cover.count(jump) ? jump.vertices : bfs_path(h_adj, jump.vertices.front(), jump.vertices.back());
      if (route.empty()) route = jump.vertices;  // only when coverage already failed
      out.insert(out.end(), route.begin(), route.end() - 1);
      q = start + jump.vertices.size() - 1;
    }
    out.insert(out.end(), path.begin() + static_cast<std::ptrdiff_t>(q), path.end());
    d.rewritten_paths[demand] = std::move(out);
  }
  return d;
}

Certificate certify(const Network& net, const CertifyOptions& options) {
  if (options.prune_first) {
    auto pruned = prune_redundant_edges(net);
    return certify(pruned, decompose(pruned, options.max_paths));
  }
  return certify(net, decompose(net, options.max_paths));
}

Certificate certify(const Network& net, const PathDecomposition& d) {
  Certificate c;
  c.m = net.sources().size();
  c.n = net.sinks().size();
  const std::size_t mn = c.m + c.n;
  c.path_bound = 9 * mn + 2;
  c.cover_bound = 4 * mn + 1;
  c.steiner_bound = theorem_steiner_bound(c.m, c.n);
  c.max_path_vertices = d.P.size();
  c.jump_count = d.jumps.size();
  c.cover_size = d.cover.size();
  c.steiner_count = net.steiner_count();
  auto fail = [&](bool& flag, std::string why) {
    flag = false;
    c.witnesses.push_back(std::move(why));
  };

  bool bounds = true;
  if (c.max_path_vertices > c.path_bound)
    fail(bounds, "path vertices " + std::to_string(c.max_path_vertices) + " > bound " + std::to_string(c.path_bound) +
                     " on " + describe(net, d.P));
  if (c.cover_size > c.cover_bound)
    fail(bounds, "cover size " + std::to_string(c.cover_size) + " > bound " + std::to_string(c.cover_bound));
  if (c.steiner_count > c.steiner_bound)
    fail(bounds,
         "steiner points " + std::to_string(c.steiner_count) + " > bound " + std::to_string(c.steiner_bound));

  for (auto s : net.steiner_points())
    if (neighbours(net, s).size() < 3)
      fail(c.simple_ok, "steiner point " + net.vertices()[s].id + " has fewer than 3 neighbours");

  for (const auto& e : d.uncovered)
    fail(c.coverage_ok, "edge " + net.vertices()[e.from].id + "->" + net.vertices()[e.to].id +
                            " lies on no canonical path");

  const auto X = d.reach_indices();
  std::set<std::size_t> endpoints;
  for (const auto& jump : d.cover) {
    endpoints.insert(jump.i);
    endpoints.insert(jump.j);
  }
  for (std::size_t t = 0; t < d.P.size(); ++t)
    if (!X.count(t) && !endpoints.count(t))
      fail(c.path_vertices_ok, "path vertex " + net.vertices()[d.P[t]].id + " (index " + std::to_string(t) +
                                   ") is no x(a), y(b) or cover jump endpoint");

  std::set<std::size_t> firsts, seconds;
  for (const auto& jump : d.cover) {
    if (!firsts.insert(jump.i).second)
      fail(c.cover_indices_ok, "two cover jumps start at index " + std::to_string(jump.i));
    if (!seconds.insert(jump.j).second)
      fail(c.cover_indices_ok, "two cover jumps end at index " + std::to_string(jump.j));
  }

  auto covers = [](const Jump& jump, std::size_t t) { return jump.j <= t && t <= jump.i; };
  for (auto t : X) {
    std::size_t hits = 0;
    for (const auto& jump : d.cover) hits += covers(jump, t);
    if (hits > 2)
      fail(c.property1_ok, "index " + std::to_string(t) + " lies under " + std::to_string(hits) + " cover jumps");
  }

  std::vector<Jump> by_i = d.cover;
  std::sort(by_i.begin(), by_i.end(), [](const Jump& x, const Jump& y) { return x.i > y.i; });
  for (std::size_t q = 0; q + 1 < by_i.size(); ++q) {
    const auto& hi = by_i[q];
    const auto& lo = by_i[q + 1];
    const bool witnessed =
        std::any_of(X.begin(), X.end(), [&](std::size_t t) { return covers(hi, t) || covers(lo, t); });
    if (!witnessed)
      fail(c.property2_ok, "consecutive cover jumps " + jump_name(hi) + " and " + jump_name(lo) +
                               " span no x(a) or y(b)");
  }

  c.consistent = bounds && c.simple_ok && c.coverage_ok && c.path_vertices_ok && c.cover_indices_ok &&
                 c.property1_ok && c.property2_ok;
  return c;
}

std::optional<Network> improve_by_reversal(const Network& net, const PathDecomposition& d) {
  if (net.space().mode() == SpaceMode::ambient_digraph)
    throw PreconditionError("reversal needs a symmetric metric; ambient arcs cannot be reversed");
  std::vector<Jump> by_i = d.cover;
  std::sort(by_i.begin(), by_i.end(), [](const Jump& x, const Jump& y) { return x.i > y.i; });
  for (std::size_t q = 0; q + 1 < by_i.size(); ++q) {
    const auto& [i, j, upper] = by_i[q];
    const auto& [k, l, lower] = by_i[q + 1];
    if (!(i > k && j > l && j < k && k - j == 1)) continue;

    auto edges = net.edges();
    for (std::size_t p = 0; p + 1 < lower.size(); ++p) edges.erase({lower[p], lower[p + 1]});
    for (std::size_t p = 0; p + 1 < lower.size(); ++p) edges.insert({lower[p + 1], lower[p]});
    for (std::size_t t = l; t < j; ++t) edges.erase({d.P[t], d.P[t + 1]});
    for (std::size_t t = l; t < j; ++t) edges.insert({d.P[t + 1], d.P[t]});
    edges.erase({d.P[j], d.P[k]});
    auto out = net.with_edges(std::move(edges));
    if (!is_connecting(out))
      throw StructuralCorruption("reversing jump " + jump_name(by_i[q + 1]) + " disconnected the network");
    return out;
  }
  return std::nullopt;
}

}  // namespace dsn
