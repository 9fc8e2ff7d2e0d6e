#pragma once

#include <cstddef>

#include "dsn/instance.hpp"
#include "dsn/network.hpp"

namespace dsn {

enum class SolveStatus { optimal_within_budget, oracle_exact };

std::string to_string(SolveStatus status);

struct Solution {
  Network network;
  double length = 0.0;
  std::size_t topologies_examined = 0;
  SolveStatus status = SolveStatus::optimal_within_budget;
  // Largest Steiner count searched, and the count that would make the search
  // exact for simple shortest networks.
  std::size_t steiner_budget = 0;
  std::size_t theorem_bound = 0;
  bool budget_binding = false;
  bool converged = true;
};

// Shortest network over every topology with at most the budgeted number of
// Steiner points. The result is contracted, simplified and pruned; ties go to
// the earlier topology in canonical-code order.
Solution solve(const Instance& instance, const SolveConfig& config);

// solve() with only the instance's (a_i, b_i) pairs required.
Solution solve_point_to_point(const Instance& instance, SolveConfig config);

// Ground truth for finite spaces with at most 7 points: branch and bound over
// every arc subset of the complete digraph (ambient arcs in ambient mode).
Solution brute_force_oracle(const Instance& instance, const SolveConfig& config = {});

// Contracts zero-length Steiner edges, then alternates simplify and
// prune_redundant_edges until nothing changes. Ambient networks are only
// pruned.
Network finalize_network(const Network& net);

}  // namespace dsn
