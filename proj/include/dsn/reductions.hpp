#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsn/instance.hpp"

namespace dsn {

// Plain digraph for the minimum-equivalent-digraph reduction.
struct Digraph {
  std::vector<std::string> vertices;
  std::vector<WeightedEdge> arcs;
};

// Throws InvalidSpace on self-loops, duplicate arcs, bad endpoints or
// nonpositive weights.
void validate(const Digraph& d);

// reach[u][v]: v is reachable from u (reflexive).
std::vector<std::vector<bool>> reachability(const Digraph& d);
std::vector<std::vector<bool>> reachability(std::size_t vertices, const std::vector<Edge>& arcs);

// Some ordered pair (u, v) with v unreachable from u, if any.
std::optional<std::pair<std::size_t, std::size_t>> unreachable_pair(const Digraph& d);

// Ambient-digraph instance with unit weights and A = B = V. Its shortest
// networks are the minimum spanning strong subdigraphs of d. Requires d to be
// strongly connected.
Instance med_to_instance(const Digraph& d);

// Minimum-cardinality arc subset with the same reachability relation as d,
// by increasing-size exhaustive search (at most 7 vertices). Ties go to the
// lexicographically first subset of the (from, to)-sorted arc list.
std::vector<Edge> brute_force_med(const Digraph& d);

// Minimum equivalent digraph of a strongly connected d through solve() on
// med_to_instance(d). Arcs are returned sorted.
std::vector<Edge> solve_med(const Digraph& d, SolveConfig config = {});

}  // namespace dsn
