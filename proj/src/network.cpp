#include "dsn/network.hpp"

#include <algorithm>
#include <numeric>

#include "dsn/error.hpp"

namespace dsn {

std::string to_string(Role role) {
  switch (role) {
    case Role::source: return "source";
    case Role::sink: return "sink";
    case Role::steiner: return "steiner";
    case Role::source_and_sink: return "source_and_sink";
  }
  return "unknown";
}

std::optional<Role> parse_role(const std::string& text) {
  for (auto r : {Role::source, Role::sink, Role::steiner, Role::source_and_sink})
    if (to_string(r) == text) return r;
  return std::nullopt;
}

Network::Network(std::shared_ptr<const Space> space, std::vector<Vertex> vertices, std::set<Edge> edges,
                 std::optional<std::vector<Demand>> pairs)
    : space_(std::move(space)), vertices_(std::move(vertices)), edges_(std::move(edges)), pairs_(std::move(pairs)) {
  if (!space_) throw PreconditionError("network requires a space");
  std::set<std::string> ids;
  for (const auto& v : vertices_) {
    if (!ids.insert(v.id).second) throw PreconditionError("duplicate vertex id '" + v.id + "'");
    space_->check_point(v.location);
  }
  for (const auto& e : edges_) {
    if (e.from >= vertices_.size() || e.to >= vertices_.size())
      throw PreconditionError("edge endpoint out of range");
    if (e.from == e.to) throw PreconditionError("self-loop at '" + vertices_[e.from].id + "'");
    if (space_->mode() == SpaceMode::ambient_digraph) {
      const auto from = std::get<PointId>(vertices_[e.from].location).index;
      const auto to = std::get<PointId>(vertices_[e.to].location).index;
      if (!space_->arc_weight(from, to))
        throw PreconditionError("edge " + vertices_[e.from].id + " -> " + vertices_[e.to].id +
                                " is not an ambient arc");
    }
  }
  if (pairs_) {
    for (const auto& [a, b] : *pairs_) {
      if (a >= vertices_.size() || b >= vertices_.size())
        throw InvalidTerminal("pair references an unknown vertex");
      if (!is_source(vertices_[a].role) || !is_sink(vertices_[b].role))
        throw InvalidTerminal("pair (" + vertices_[a].id + ", " + vertices_[b].id +
                              ") is not a (source, sink) pair");
    }
  }
}

std::optional<std::size_t> Network::find(const std::string& id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].id == id) return i;
  return std::nullopt;
}

std::vector<std::size_t> Network::sources() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (is_source(vertices_[i].role)) out.push_back(i);
  return out;
}

std::vector<std::size_t> Network::sinks() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (is_sink(vertices_[i].role)) out.push_back(i);
  return out;
}

std::vector<std::size_t> Network::steiner_points() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].role == Role::steiner) out.push_back(i);
  return out;
}

std::vector<Demand> Network::demands() const {
  std::vector<Demand> out;
  if (pairs_) {
    for (const auto& d : *pairs_)
      if (d.first != d.second) out.push_back(d);
    return out;
  }
  for (auto a : sources())
    for (auto b : sinks())
      if (a != b) out.emplace_back(a, b);
  return out;
}

Network Network::with_edges(std::set<Edge> edges) const {
  return Network(space_, vertices_, std::move(edges), pairs_);
}

Network Network::without_vertices(const std::vector<bool>& drop) const {
  std::vector<std::size_t> remap(vertices_.size(), static_cast<std::size_t>(-1));
  std::vector<Vertex> kept;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i < drop.size() && drop[i]) {
      if (is_terminal(vertices_[i].role))
        throw PreconditionError("terminal '" + vertices_[i].id + "' cannot be removed");
      continue;
    }
    remap[i] = kept.size();
    kept.push_back(vertices_[i]);
  }
  std::set<Edge> edges;
  for (const auto& e : edges_)
    if (remap[e.from] != static_cast<std::size_t>(-1) && remap[e.to] != static_cast<std::size_t>(-1))
      edges.insert({remap[e.from], remap[e.to]});
  std::optional<std::vector<Demand>> pairs;
  if (pairs_) {
    pairs.emplace();
    for (const auto& [a, b] : *pairs_) pairs->emplace_back(remap[a], remap[b]);
  }
  return Network(space_, std::move(kept), std::move(edges), std::move(pairs));
}

std::vector<std::vector<std::size_t>> Network::out_adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertices_.size());
  for (const auto& e : edges_) adj[e.from].push_back(e.to);
  return adj;
}

std::vector<std::vector<std::size_t>> Network::in_adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertices_.size());
  for (const auto& e : edges_) adj[e.to].push_back(e.from);
  return adj;
}

double Network::edge_length(const Edge& e) const {
  return space_->edge_length(vertices_[e.from].location, vertices_[e.to].location);
}

double length(const Network& net) {
  double total = 0.0;
  for (const auto& e : net.edges()) total += net.edge_length(e);
  return total;
}

std::set<std::size_t> neighbours(const Network& net, std::size_t v) {
  if (v >= net.vertex_count()) throw InvalidTerminal("unknown vertex index");
  std::set<std::size_t> out;
  for (const auto& e : net.edges()) {
    if (e.from == v) out.insert(e.to);
    if (e.to == v) out.insert(e.from);
  }
  return out;
}

namespace {

std::vector<bool> traverse(const std::vector<std::vector<std::size_t>>& adj, std::size_t start) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (auto w : adj[u])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return seen;
}

bool satisfies(const std::vector<std::vector<std::size_t>>& adj, const std::vector<Demand>& demands) {
  std::vector<std::optional<std::vector<bool>>> cache(adj.size());
  for (const auto& [a, b] : demands) {
    if (!cache[a]) cache[a] = traverse(adj, a);
    if (!(*cache[a])[b]) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> adjacency_of(std::size_t n, const std::set<Edge>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : edges) adj[e.from].push_back(e.to);
  return adj;
}

}  // namespace

std::vector<bool> reachable_from(const Network& net, std::size_t v) {
  if (v >= net.vertex_count()) throw InvalidTerminal("unknown vertex index");
  return traverse(net.out_adjacency(), v);
}

std::vector<bool> reaching(const Network& net, std::size_t v) {
  if (v >= net.vertex_count()) throw InvalidTerminal("unknown vertex index");
  return traverse(net.in_adjacency(), v);
}

bool is_connecting(const Network& net, std::span<const std::size_t> A, std::span<const std::size_t> B) {
  for (auto x : A)
    if (x >= net.vertex_count()) throw InvalidTerminal("source is not a vertex of the network");
  for (auto x : B)
    if (x >= net.vertex_count()) throw InvalidTerminal("sink is not a vertex of the network");
  const auto adj = net.out_adjacency();
  for (auto a : A) {
    const auto seen = traverse(adj, a);
    for (auto b : B)
      if (!seen[b]) return false;
  }
  return true;
}

bool is_connecting(const Network& net) {
  return satisfies(net.out_adjacency(), net.demands());
}

bool is_simple(const Network& net) {
  for (auto s : net.steiner_points())
    if (neighbours(net, s).size() < 3) return false;
  return true;
}

Network simplify(const Network& net) {
  if (net.space().mode() == SpaceMode::ambient_digraph)
    throw PreconditionError("simplify needs shortcut edges, which ambient_digraph mode does not allow");
  if (!is_connecting(net)) throw PreconditionError("simplify: input network is not connecting");

  Network current = net;
  for (;;) {
    std::optional<std::size_t> target;
    std::set<std::size_t> nbrs;
    for (auto s : current.steiner_points()) {
      nbrs = neighbours(current, s);
      if (nbrs.size() <= 2) {
        target = s;
        break;
      }
    }
    if (!target) return current;

    const auto s = *target;
    std::set<Edge> edges;
    for (const auto& e : current.edges())
      if (e.from != s && e.to != s) edges.insert(e);
    if (nbrs.size() == 2) {
      const auto u = *nbrs.begin();
      const auto v = *std::next(nbrs.begin());
      const auto& old = current.edges();
      if (old.contains({u, s}) && old.contains({s, v})) edges.insert({u, v});
      if (old.contains({v, s}) && old.contains({s, u})) edges.insert({v, u});
    }
    std::vector<bool> drop(current.vertex_count(), false);
    drop[s] = true;
    current = current.with_edges(std::move(edges)).without_vertices(drop);
  }
}

Network prune_redundant_edges(const Network& net) {
  const auto demands = net.demands();
  const auto n = net.vertex_count();
  if (!satisfies(adjacency_of(n, net.edges()), demands))
    throw PreconditionError("prune_redundant_edges: input network is not connecting");

  std::vector<Edge> order(net.edges().begin(), net.edges().end());
  const auto& vs = net.vertices();
  std::stable_sort(order.begin(), order.end(), [&](const Edge& x, const Edge& y) {
    return std::tie(vs[x.from].id, vs[x.to].id) < std::tie(vs[y.from].id, vs[y.to].id);
  });
  std::set<Edge> edges = net.edges();
  for (const auto& e : order) {
    edges.erase(e);
    if (!satisfies(adjacency_of(n, edges), demands)) edges.insert(e);
  }

  std::vector<bool> drop(n, false);
  std::vector<bool> touched(n, false);
  for (const auto& e : edges) touched[e.from] = touched[e.to] = true;
  for (std::size_t i = 0; i < n; ++i) drop[i] = vs[i].role == Role::steiner && !touched[i];
  return net.with_edges(std::move(edges)).without_vertices(drop);
}

Network contract_short_edges(const Network& net, double threshold) {
  if (net.space().mode() == SpaceMode::ambient_digraph) return net;
  Network current = net;
  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> merge;  // (absorbed, survivor)
    const auto& vs = current.vertices();
    for (const auto& e : current.edges()) {
      const bool s_from = vs[e.from].role == Role::steiner;
      const bool s_to = vs[e.to].role == Role::steiner;
      if (!s_from && !s_to) continue;
      if (current.edge_length(e) > threshold) continue;
      if (s_from && s_to)
        merge = std::pair{std::max(e.from, e.to), std::min(e.from, e.to)};
      else if (s_from)
        merge = std::pair{e.from, e.to};
      else
        merge = std::pair{e.to, e.from};
      break;
    }
    if (!merge) return current;
    const auto [gone, keep] = *merge;
    std::set<Edge> edges;
    for (auto e : current.edges()) {
      if (e.from == gone) e.from = keep;
      if (e.to == gone) e.to = keep;
      if (e.from != e.to) edges.insert(e);
    }
    std::vector<bool> drop(current.vertex_count(), false);
    drop[gone] = true;
    current = current.with_edges(std::move(edges)).without_vertices(drop);
  }
}

}  // namespace dsn
