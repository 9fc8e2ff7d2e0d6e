#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "dsn/metric.hpp"
#include "dsn/network.hpp"
#include "dsn/topology.hpp"

namespace dsn {

using PairList = std::vector<std::pair<std::size_t, std::size_t>>;

// A source set A and sink set B in a space, optionally with a point-to-point
// pair list (indices into sources and sinks).
struct Instance {
  std::shared_ptr<const Space> space;
  std::vector<Point> sources;
  std::vector<Point> sinks;
  std::optional<PairList> pairs;

  std::size_t m() const { return sources.size(); }
  std::size_t n() const { return sinks.size(); }
};

// Throws InvalidPoint / InvalidTerminal / InvalidSpace on malformed input,
// including a space that fails validate_metric.
void validate(const Instance& instance);

enum class Variant { all_pairs, point_to_point };

struct SolveConfig {
  // Unset: min(vertex ceiling headroom, m*n*(9(m+n)+2)).
  std::optional<std::size_t> max_steiner;
  double tolerance = 1e-9;
  std::size_t max_iterations = 10000;
  double smoothing_epsilon = 1e-12;
  std::size_t restarts = 1;
  // Unset: point_to_point iff the instance carries pairs.
  std::optional<Variant> variant;
  bool parallel = false;
  std::uint64_t seed = 0;
  EnumerationLimits limits;
};

void validate(const SolveConfig& config);

// Terminal vertices shared by every network of an instance, and the layout
// the topology search runs over. In finite modes terminals at the same point
// are one vertex (source_and_sink when both roles meet).
struct TerminalSetup {
  std::vector<Vertex> vertices;
  TerminalLayout layout;
  // Network pair list when the point-to-point variant is active.
  std::optional<std::vector<Demand>> pairs;
};

TerminalSetup terminal_setup(const Instance& instance, Variant variant);
Variant effective_variant(const Instance& instance, const SolveConfig& config);

// Network over the terminals only, with the given edges.
Network terminal_network(const Instance& instance, Variant variant, std::set<Edge> edges = {});

// Upper bound on Steiner points in a simple shortest network: m*n*(9(m+n)+2).
std::size_t theorem_steiner_bound(std::size_t m, std::size_t n);

}  // namespace dsn
