#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dsn/metric.hpp"

namespace dsn {

enum class Role { source, sink, steiner, source_and_sink };

std::string to_string(Role role);
std::optional<Role> parse_role(const std::string& text);
inline bool is_source(Role r) { return r == Role::source || r == Role::source_and_sink; }
inline bool is_sink(Role r) { return r == Role::sink || r == Role::source_and_sink; }
inline bool is_terminal(Role r) { return r != Role::steiner; }

struct Vertex {
  std::string id;
  Role role = Role::steiner;
  Point location;
};

// Directed edge between vertex indices.
struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  auto operator<=>(const Edge&) const = default;
};

// A required (source index, sink index) connection.
using Demand = std::pair<std::size_t, std::size_t>;

// An (A,B)-network: a digraph over located, role-tagged vertices.
//
// Networks are values. Vertex identity is the index into vertices(); ids are
// unique labels and vertices at the same location stay distinct. When pairs()
// is set the network is judged against that point-to-point pair list instead
// of all (source, sink) combinations.
class Network {
 public:
  Network(std::shared_ptr<const Space> space, std::vector<Vertex> vertices, std::set<Edge> edges,
          std::optional<std::vector<Demand>> pairs = std::nullopt);

  const Space& space() const { return *space_; }
  const std::shared_ptr<const Space>& space_ptr() const { return space_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::set<Edge>& edges() const { return edges_; }
  const std::optional<std::vector<Demand>>& pairs() const { return pairs_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::optional<std::size_t> find(const std::string& id) const;

  std::vector<std::size_t> sources() const;
  std::vector<std::size_t> sinks() const;
  std::vector<std::size_t> steiner_points() const;
  std::size_t steiner_count() const { return steiner_points().size(); }

  // Required connections: pairs() when present, otherwise every
  // (source, sink) with source != sink.
  std::vector<Demand> demands() const;

  Network with_edges(std::set<Edge> edges) const;
  // Removes the flagged vertices and their edges, renumbering the rest.
  Network without_vertices(const std::vector<bool>& drop) const;

  std::vector<std::vector<std::size_t>> out_adjacency() const;
  std::vector<std::vector<std::size_t>> in_adjacency() const;

  double edge_length(const Edge& e) const;

 private:
  std::shared_ptr<const Space> space_;
  std::vector<Vertex> vertices_;
  std::set<Edge> edges_;
  std::optional<std::vector<Demand>> pairs_;
};

// Sum of edge lengths under the space metric (arc weights in ambient mode).
double length(const Network& net);

// Vertices adjacent to v by an edge in either direction.
std::set<std::size_t> neighbours(const Network& net, std::size_t v);

std::vector<bool> reachable_from(const Network& net, std::size_t v);
std::vector<bool> reaching(const Network& net, std::size_t v);

// True iff every a in A reaches every b in B.
bool is_connecting(const Network& net, std::span<const std::size_t> A, std::span<const std::size_t> B);
// Against the network's own demands().
bool is_connecting(const Network& net);

// Every Steiner point has at least three neighbours.
bool is_simple(const Network& net);

// Repeatedly removes Steiner points with at most two neighbours, adding the
// triangle-inequality shortcuts that keep the network connecting.
Network simplify(const Network& net);

// Removes every edge whose deletion keeps the network connecting, testing
// edges in (from id, to id) order. Steiner points left isolated are dropped.
Network prune_redundant_edges(const Network& net);

// Merges the Steiner endpoint of every edge no longer than `threshold` into
// the other endpoint. Terminal-terminal edges are kept.
Network contract_short_edges(const Network& net, double threshold = 0.0);

}  // namespace dsn
