#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dsn/network.hpp"

namespace dsn {

// Vertex sequence in a network.
using Path = std::vector<std::size_t>;

// Simple source-to-sink path (over the network's demands) with the most
// vertices; ties go to the lexicographically smallest id sequence. Refuses
// with BudgetExceeded once more than max_paths partial paths were explored.
Path longest_ab_path(const Network& net, std::size_t max_paths = 1'000'000);

// Position on P plus the path that reaches it. A terminal already sitting at
// that position has a one-vertex witness. A terminal cut off from P (possible
// once a source and a sink share a vertex) gets index none and no witness.
struct Reach {
  static constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::size_t index = 0;
  Path witness;
};

// Earliest vertex of P reachable from source a, with a path a -> P[index].
// The witness avoids the rest of P when it can and is shortest otherwise.
Reach first_reach(const Network& net, const Path& P, std::size_t a);
// Latest vertex of P that reaches sink b, with a path P[index] -> b.
Reach last_reach(const Network& net, const Path& P, std::size_t b);

// Path from P[i] back to P[j] (i > j) that uses no edge of P.
struct Jump {
  std::size_t i = 0;
  std::size_t j = 0;
  Path vertices;
  auto operator<=>(const Jump&) const = default;
};

// a-b path in normal form: it either misses P, or is an entry segment, then
// forward runs along P separated by backward jumps, then an exit segment.
// Built from P(a), P[x(a)..y(b)] and Q(b) by loop erasure and by replacing
// every forward detour with the matching stretch of P.
Path canonicalize_path(const Network& net, const Path& P, std::size_t a, std::size_t b, const Reach& x_of_a,
                       const Reach& y_of_b);

// Jumps of a normal-form path, in path order.
std::vector<Jump> path_jumps(const Path& P, const Path& path);

struct CoverResult {
  std::vector<Jump> cover;
  // Edges covered neither by the base nor by any jump.
  std::vector<Edge> uncovered;
};

// Inclusion-minimal subset of `jumps` that, with the base edges, covers every
// edge of net. Greedy deletion in (i, j, vertices) order.
CoverResult minimal_jump_cover(const Network& net, const std::set<Edge>& base, const std::vector<Jump>& jumps);

struct PathDecomposition {
  Path P;
  std::map<std::size_t, Reach> x_of_a;  // keyed by source vertex
  std::map<std::size_t, Reach> y_of_b;  // keyed by sink vertex
  std::map<Demand, Path> canonical_paths;
  // canonical paths with every jump outside the cover replaced by a shortest
  // route through the base and the cover (walks, not necessarily simple)
  std::map<Demand, Path> rewritten_paths;
  // P, entry and exit segments, and canonical paths that miss P.
  std::set<Edge> base;
  std::vector<Jump> jumps;  // J, sorted, distinct
  std::vector<Jump> cover;  // I, sorted
  std::vector<Edge> uncovered;

  // Indices t with P[t] = x(a) or y(b) for some terminal.
  std::set<std::size_t> reach_indices() const;
};

PathDecomposition decompose(const Network& net, std::size_t max_paths = 1'000'000);

struct CertifyOptions {
  bool prune_first = false;
  std::size_t max_paths = 1'000'000;
};

struct Certificate {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t max_path_vertices = 0;
  std::size_t path_bound = 0;
  std::size_t jump_count = 0;
  std::size_t cover_size = 0;
  std::size_t cover_bound = 0;
  std::size_t steiner_count = 0;
  std::size_t steiner_bound = 0;

  bool simple_ok = true;
  bool coverage_ok = true;
  // every vertex of P is some x(a), some y(b) or an endpoint of a cover jump
  bool path_vertices_ok = true;
  bool cover_indices_ok = true;
  bool property1_ok = true;
  bool property2_ok = true;

  bool consistent = true;
  std::vector<std::string> witnesses;
};

// Checks the structural bounds a simple shortest network must meet. A
// consistent verdict is not an optimality proof; an inconsistent one shows
// the network is not a simple shortest network. Requires a connecting
// network.
Certificate certify(const Network& net, const CertifyOptions& options = {});
Certificate certify(const Network& net, const PathDecomposition& decomposition);

// Looks for consecutive cover jumps (i,j), (k,l) with i > k, j > l and
// k = j + 1. Reverses the (k,l) jump and P[l..j], drops the edge P[j]P[k] and
// returns the shorter network. nullopt when the pattern is absent. Throws
// PreconditionError in ambient mode and StructuralCorruption if the result is
// not connecting.
std::optional<Network> improve_by_reversal(const Network& net, const PathDecomposition& decomposition);

}  // namespace dsn
