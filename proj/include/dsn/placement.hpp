#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dsn/instance.hpp"
#include "dsn/network.hpp"
#include "dsn/topology.hpp"

namespace dsn {

struct Placement {
  Network network;
  double length = 0.0;
  bool converged = true;
  std::size_t iterations = 0;
};

// Places the Steiner vertices of a topology to minimize total length.
//
// euclidean: iteratively reweighted least squares on the smoothed objective
//   sum sqrt(|u-v|^2 + eps^2), eps annealed by 0.1 on every stall down to
//   config.smoothing_epsilon, then Steiner points are snapped onto nearby
//   vertices when that does not increase the exact length. config.restarts
//   extra random starts are tried and the best kept.
// rectilinear: exact, per coordinate, by threshold minimum cuts.
// finite modes: exhaustive injective assignment to non-terminal points.
//
// Returns nullopt when a finite space has no admissible assignment.
// `initial`, when given, replaces the deterministic first start (euclidean).
std::optional<Placement> optimize_positions(const Topology& topology, const Instance& instance,
                                            const SolveConfig& config,
                                            const std::vector<Coordinates>* initial = nullptr);

}  // namespace dsn
