#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsn/network.hpp"

namespace dsn {

// Labeled terminals 0..terminals-1 and the connections they require.
struct TerminalLayout {
  std::size_t terminals = 0;
  std::vector<Demand> demands;
  bool operator==(const TerminalLayout&) const = default;
  auto operator<=>(const TerminalLayout&) const = default;
};

// Sources 0..m-1, sinks m..m+n-1, every source must reach every sink.
TerminalLayout all_pairs_layout(std::size_t m, std::size_t n);
// Sources 0..m-1, sinks m..m+n-1, only (source pairs[i].first, sink
// pairs[i].second) are required.
TerminalLayout point_to_point_layout(std::size_t m, std::size_t n,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

struct EnumerationLimits {
  std::size_t max_vertices = 8;
  std::size_t max_search_nodes = 20'000'000;
};

// Abstract digraph shape searched by the solver: terminals keep their labels,
// Steiner vertices terminals..terminals+steiner_count-1 are interchangeable.
struct Topology {
  std::size_t terminal_count = 0;
  std::size_t steiner_count = 0;
  std::vector<Edge> arcs;
  std::string canonical_code;
  std::size_t vertex_count() const { return terminal_count + steiner_count; }
};

// Every simple, edge-minimal, connecting arc set on the layout's terminals
// plus k Steiner vertices, once per Steiner relabeling class, sorted by
// canonical code. Throws BudgetExceeded past the limits.
std::vector<Topology> enumerate_topologies(const TerminalLayout& layout, std::size_t k,
                                           const EnumerationLimits& limits = {});

std::vector<Topology> enumerate_topologies(
    std::size_t m, std::size_t n, std::size_t k,
    const std::optional<std::vector<std::pair<std::size_t, std::size_t>>>& pairs = std::nullopt,
    const EnumerationLimits& limits = {});

// --- bitmask machinery shared with the ambient-digraph search ---------------

using ArcMask = std::uint64_t;

// Bit of arc (from, to) in a mask over `vertices` vertices (at most 8).
std::size_t arc_bit(std::size_t from, std::size_t to, std::size_t vertices);
ArcMask arcs_to_mask(const std::vector<Edge>& arcs, std::size_t vertices);
std::vector<Edge> mask_to_arcs(ArcMask mask, std::size_t vertices);

struct ArcSetQuery {
  std::size_t vertex_count = 0;
  std::vector<Demand> demands;
  ArcMask allowed = ~ArcMask{0};
  // Vertices >= steiner_begin are Steiner vertices.
  std::size_t steiner_begin = 0;
  // Every Steiner vertex has >= 3 neighbours.
  bool require_simple = true;
};

// All arc sets that satisfy every demand and lose that property when any
// single arc is removed, restricted to allowed arcs, in increasing mask order.
// Every Steiner vertex is used by each returned set.
std::vector<ArcMask> minimal_connecting_arc_sets(const ArcSetQuery& query, const EnumerationLimits& limits);

// Lexicographically least row-major adjacency string over all permutations of
// the Steiner vertices, prefixed by the vertex counts. Optionally returns the
// mask of that least labeling.
std::string canonical_code(ArcMask mask, std::size_t terminal_count, std::size_t steiner_count,
                           ArcMask* canonical_mask = nullptr);

// Upper bound on the path-combination search for a complete digraph.
double enumeration_estimate(std::size_t vertices, std::size_t demand_count);

}  // namespace dsn
