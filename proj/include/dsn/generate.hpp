#pragma once

#include <cstdint>

#include "dsn/instance.hpp"
#include "dsn/network.hpp"
#include "dsn/reductions.hpp"

namespace dsn {

// Seeded desk-scale corpora for tests, benchmarks and the `gen` subcommand.
// Same seed, same output (on a given standard library).

// Terminals uniform in [0, extent]^dim.
Instance random_euclidean_instance(std::uint64_t seed, std::size_t m, std::size_t n, int dim = 2,
                                   double extent = 1.0);
Instance random_rectilinear_instance(std::uint64_t seed, std::size_t m, std::size_t n, int dim = 2);

// Integer-valued metric on `points` points: shortest paths of a random graph
// with integer weights in [1, 20]. Sources and sinks are each distinct
// points, but a point may be both a source and a sink.
Instance random_finite_instance(std::uint64_t seed, std::size_t points, std::size_t m, std::size_t n,
                                SpaceMode mode = SpaceMode::explicit_matrix);

// Strongly connected digraph: arcs drawn with probability `density`, then
// redrawn until strongly connected.
Digraph random_strong_digraph(std::uint64_t seed, std::size_t vertices, double density = 0.35);

// Connecting network over the instance terminals plus up to `max_steiner`
// random Steiner points: random arcs, then random paths until every demand
// is met.
Network random_connecting_network(std::uint64_t seed, const Instance& instance, std::size_t max_steiner,
                                  double arc_density = 0.15);

}  // namespace dsn
