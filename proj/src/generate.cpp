#include "dsn/generate.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "dsn/error.hpp"

namespace dsn {

namespace {

std::vector<std::size_t> sample(std::mt19937_64& rng, std::size_t population, std::size_t count) {
  std::vector<std::size_t> all(population);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(count);
  return all;
}

std::vector<std::string> point_labels(std::size_t count) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < count; ++i) labels.push_back("p" + std::to_string(i));
  return labels;
}

}  // namespace

Instance random_euclidean_instance(std::uint64_t seed, std::size_t m, std::size_t n, int dim, double extent) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, extent);
  auto point = [&] {
    Coordinates c(static_cast<std::size_t>(dim));
    for (auto& x : c) x = coord(rng);
    return Point{c};
  };
  Instance inst;
  inst.space = std::make_shared<Space>(Space::euclidean(dim));
  for (std::size_t i = 0; i < m; ++i) inst.sources.push_back(point());
  for (std::size_t j = 0; j < n; ++j) inst.sinks.push_back(point());
  return inst;
}

Instance random_rectilinear_instance(std::uint64_t seed, std::size_t m, std::size_t n, int dim) {
  auto inst = random_euclidean_instance(seed, m, n, dim);
  inst.space = std::make_shared<Space>(Space::rectilinear(dim));
  return inst;
}

Instance random_finite_instance(std::uint64_t seed, std::size_t points, std::size_t m, std::size_t n,
                                SpaceMode mode) {
  if (m > points || n > points) throw PreconditionError("more terminals than points");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> weight(1, 20);
  std::bernoulli_distribution extra(0.5);

  // Random spanning tree plus random extra edges keeps the graph connected.
  std::vector<WeightedEdge> edges;
  std::vector<std::size_t> order = sample(rng, points, points);
  for (std::size_t i = 1; i < points; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    edges.push_back({order[parent(rng)], order[i], static_cast<double>(weight(rng))});
  }
  for (std::size_t u = 0; u < points; ++u)
    for (std::size_t v = u + 1; v < points; ++v)
      if (extra(rng)) edges.push_back({u, v, static_cast<double>(weight(rng))});

  auto labels = point_labels(points);
  Instance inst;
  if (mode == SpaceMode::graph_metric) {
    inst.space = std::make_shared<Space>(Space::graph_metric(labels, edges));
  } else if (mode == SpaceMode::explicit_matrix) {
    auto metric = Space::graph_metric(labels, edges);
    inst.space = std::make_shared<Space>(Space::explicit_matrix(labels, metric.distance_matrix()));
  } else {
    throw PreconditionError("random_finite_instance: unsupported mode");
  }
  for (auto p : sample(rng, points, m)) inst.sources.emplace_back(PointId{p});
  for (auto p : sample(rng, points, n)) inst.sinks.emplace_back(PointId{p});
  return inst;
}

Digraph random_strong_digraph(std::uint64_t seed, std::size_t vertices, double density) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  Digraph d;
  d.vertices = point_labels(vertices);
  for (;;) {
    d.arcs.clear();
    for (std::size_t u = 0; u < vertices; ++u)
      for (std::size_t v = 0; v < vertices; ++v)
        if (u != v && coin(rng)) d.arcs.push_back({u, v, 1.0});
    if (!unreachable_pair(d)) return d;
  }
}

Network random_connecting_network(std::uint64_t seed, const Instance& instance, std::size_t max_steiner,
                                  double arc_density) {
  std::mt19937_64 rng(seed);
  const auto variant = instance.pairs ? Variant::point_to_point : Variant::all_pairs;
  auto setup = terminal_setup(instance, variant);
  auto vertices = setup.vertices;

  const auto& space = *instance.space;
  std::uniform_int_distribution<std::size_t> count(0, max_steiner);
  const std::size_t k = count(rng);
  if (space.is_continuous()) {
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    for (std::size_t i = 0; i < k; ++i) {
      Coordinates c(static_cast<std::size_t>(space.dimension()));
      for (auto& x : c) x = coord(rng);
      vertices.push_back({"s" + std::to_string(i + 1), Role::steiner, c});
    }
  } else {
    std::vector<bool> used(space.point_count(), false);
    for (const auto& v : vertices) used[std::get<PointId>(v.location).index] = true;
    std::vector<std::size_t> free;
    for (std::size_t p = 0; p < space.point_count(); ++p)
      if (!used[p]) free.push_back(p);
    std::shuffle(free.begin(), free.end(), rng);
    for (std::size_t i = 0; i < std::min(k, free.size()); ++i)
      vertices.push_back({space.labels()[free[i]], Role::steiner, PointId{free[i]}});
  }

  const std::size_t nv = vertices.size();
  std::set<Edge> edges;
  std::bernoulli_distribution coin(arc_density);
  for (std::size_t u = 0; u < nv; ++u)
    for (std::size_t v = 0; v < nv; ++v)
      if (u != v && coin(rng)) edges.insert({u, v});

  Network net(instance.space, vertices, edges, setup.pairs);
  std::uniform_int_distribution<std::size_t> pick(0, nv - 1);
  for (const auto& [a, b] : net.demands()) {
    if (reachable_from(net.with_edges(edges), a)[b]) continue;
    // Random walk of distinct intermediate vertices from a to b.
    std::vector<std::size_t> path{a};
    std::vector<bool> on(nv, false);
    on[a] = on[b] = true;
    std::uniform_int_distribution<std::size_t> hops(0, 3);
    for (std::size_t h = hops(rng); h > 0; --h) {
      const auto v = pick(rng);
      if (on[v]) continue;
      on[v] = true;
      path.push_back(v);
    }
    path.push_back(b);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) edges.insert({path[i], path[i + 1]});
  }
  return net.with_edges(std::move(edges));
}

}  // namespace dsn
