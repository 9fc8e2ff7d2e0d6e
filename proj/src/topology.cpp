#include "dsn/topology.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "dsn/error.hpp"

namespace dsn {

TerminalLayout all_pairs_layout(std::size_t m, std::size_t n) {
  TerminalLayout layout{m + n, {}};
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < n; ++b) layout.demands.emplace_back(a, m + b);
  return layout;
}

TerminalLayout point_to_point_layout(std::size_t m, std::size_t n,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  TerminalLayout layout{m + n, {}};
  for (const auto& [a, b] : pairs) {
    if (a >= m || b >= n) throw InvalidTerminal("pair index out of range");
    Demand d{a, m + b};
    if (std::find(layout.demands.begin(), layout.demands.end(), d) == layout.demands.end())
      layout.demands.push_back(d);
  }
  return layout;
}

std::size_t arc_bit(std::size_t from, std::size_t to, std::size_t vertices) {
  return from * (vertices - 1) + (to < from ? to : to - 1);
}

ArcMask arcs_to_mask(const std::vector<Edge>& arcs, std::size_t vertices) {
  ArcMask mask = 0;
  for (const auto& e : arcs) mask |= ArcMask{1} << arc_bit(e.from, e.to, vertices);
  return mask;
}

std::vector<Edge> mask_to_arcs(ArcMask mask, std::size_t vertices) {
  std::vector<Edge> arcs;
  for (std::size_t u = 0; u < vertices; ++u)
    for (std::size_t v = 0; v < vertices; ++v)
      if (u != v && (mask >> arc_bit(u, v, vertices) & 1U)) arcs.push_back({u, v});
  return arcs;
}

namespace {

using VertexMask = std::uint32_t;

struct BitGraph {
  std::size_t n = 0;
  VertexMask out[8] = {};
  VertexMask nbr[8] = {};

  BitGraph(ArcMask mask, std::size_t vertices) : n(vertices) {
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        if (u != v && (mask >> arc_bit(u, v, n) & 1U)) {
          out[u] |= VertexMask{1} << v;
          nbr[u] |= VertexMask{1} << v;
          nbr[v] |= VertexMask{1} << u;
        }
  }

  VertexMask reach(std::size_t s) const {
    VertexMask seen = VertexMask{1} << s;
    VertexMask frontier = seen;
    while (frontier) {
      VertexMask next = 0;
      for (VertexMask f = frontier; f; f &= f - 1) next |= out[std::countr_zero(f)];
      frontier = next & ~seen;
      seen |= next;
    }
    return seen;
  }

  bool satisfies(const std::vector<Demand>& demands) const {
    VertexMask cache[8] = {};
    bool have[8] = {};
    for (const auto& [a, b] : demands) {
      if (!have[a]) {
        cache[a] = reach(a);
        have[a] = true;
      }
      if (!(cache[a] >> b & 1U)) return false;
    }
    return true;
  }
};

void collect_paths(std::size_t at, std::size_t target, std::size_t n, ArcMask allowed, VertexMask visited,
                   ArcMask acc, std::vector<ArcMask>& out) {
  if (at == target) {
    out.push_back(acc);
    return;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (visited >> v & 1U) continue;
    const auto bit = ArcMask{1} << arc_bit(at, v, n);
    if (!(allowed & bit)) continue;
    collect_paths(v, target, n, allowed, visited | (VertexMask{1} << v), acc | bit, out);
  }
}

struct StateHash {
  std::size_t operator()(const std::pair<std::size_t, ArcMask>& s) const {
    return std::hash<ArcMask>{}(s.second * 0x9E3779B97F4A7C15ULL + s.first);
  }
};

class UnionSearch {
 public:
  UnionSearch(const ArcSetQuery& q, const EnumerationLimits& limits) : q_(q), limits_(limits) {
    paths_.resize(q.demands.size());
    for (std::size_t i = 0; i < q.demands.size(); ++i) {
      const auto [s, t] = q.demands[i];
      collect_paths(s, t, q.vertex_count, q.allowed, VertexMask{1} << s, 0, paths_[i]);
    }
  }

  std::unordered_set<ArcMask> run() {
    descend(0, 0);
    return found_;
  }

 private:
  // Any minimal connecting set is the union of one path per demand, and any
  // path inside it may be chosen, so a demand already met by the partial
  // union needs no further choice.
  void descend(std::size_t t, ArcMask acc) {
    if (++nodes_ > limits_.max_search_nodes) {
      std::ostringstream msg;
      msg << "enumeration refused: search exceeded " << limits_.max_search_nodes << " nodes ("
          << q_.vertex_count << " vertices, " << q_.demands.size() << " demands)";
      throw BudgetExceeded(msg.str());
    }
    if (!visited_.insert({t, acc}).second) return;
    if (t == q_.demands.size()) {
      found_.insert(acc);
      return;
    }
    const auto [s, target] = q_.demands[t];
    if (BitGraph(acc, q_.vertex_count).reach(s) >> target & 1U) {
      descend(t + 1, acc);
      return;
    }
    for (auto p : paths_[t]) descend(t + 1, acc | p);
  }

  const ArcSetQuery& q_;
  const EnumerationLimits& limits_;
  std::vector<std::vector<ArcMask>> paths_;
  std::unordered_set<std::pair<std::size_t, ArcMask>, StateHash> visited_;
  std::unordered_set<ArcMask> found_;
  std::size_t nodes_ = 0;
};

bool acceptable(ArcMask mask, const ArcSetQuery& q) {
  const BitGraph g(mask, q.vertex_count);
  for (std::size_t s = q.steiner_begin; s < q.vertex_count; ++s) {
    const int deg = std::popcount(g.nbr[s]);
    if (deg == 0) return false;
    if (q.require_simple && deg < 3) return false;
  }
  for (ArcMask m = mask; m; m &= m - 1) {
    const ArcMask without = mask & ~(m & -m);
    if (BitGraph(without, q.vertex_count).satisfies(q.demands)) return false;
  }
  return true;
}

std::size_t complete_path_count(std::size_t vertices) {
  // Simple paths between two fixed vertices of the complete digraph.
  if (vertices < 2) return 1;
  std::size_t total = 0, term = 1;
  const std::size_t inner = vertices - 2;
  for (std::size_t j = 0; j <= inner; ++j) {
    total += term;
    term *= inner - j;
  }
  return total;
}

}  // namespace

double enumeration_estimate(std::size_t vertices, std::size_t demand_count) {
  double est = 1.0;
  for (std::size_t i = 0; i < demand_count; ++i) est *= static_cast<double>(complete_path_count(vertices));
  return est;
}

std::vector<ArcMask> minimal_connecting_arc_sets(const ArcSetQuery& q, const EnumerationLimits& limits) {
  if (q.vertex_count > limits.max_vertices || q.vertex_count > 8) {
    std::ostringstream msg;
    msg << "enumeration refused: " << q.vertex_count << " vertices exceed the ceiling of "
        << std::min<std::size_t>(limits.max_vertices, 8) << " (search estimate "
        << enumeration_estimate(q.vertex_count, q.demands.size()) << " path combinations)";
    throw BudgetExceeded(msg.str());
  }
  for (const auto& [a, b] : q.demands)
    if (a >= q.vertex_count || b >= q.vertex_count) throw InvalidTerminal("demand out of range");

  std::vector<Demand> demands;
  for (const auto& d : q.demands)
    if (d.first != d.second && std::find(demands.begin(), demands.end(), d) == demands.end())
      demands.push_back(d);
  ArcSetQuery normalized = q;
  normalized.demands = std::move(demands);

  UnionSearch search(normalized, limits);
  auto found = search.run();
  std::vector<ArcMask> out;
  for (auto mask : found)
    if (acceptable(mask, normalized)) out.push_back(mask);
  std::sort(out.begin(), out.end());
  return out;
}

std::string canonical_code(ArcMask mask, std::size_t terminal_count, std::size_t steiner_count,
                           ArcMask* canonical_mask) {
  const std::size_t n = terminal_count + steiner_count;
  const auto arcs = mask_to_arcs(mask, n);
  std::vector<std::size_t> perm(steiner_count);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  ArcMask best_mask = 0;
  std::vector<std::size_t> image(n);
  do {
    for (std::size_t v = 0; v < n; ++v) image[v] = v < terminal_count ? v : terminal_count + perm[v - terminal_count];
    std::string bits(n * (n - 1), '0');
    ArcMask permuted = 0;
    for (const auto& e : arcs) {
      const auto bit = arc_bit(image[e.from], image[e.to], n);
      bits[bit] = '1';
      permuted |= ArcMask{1} << bit;
    }
    if (best.empty() || bits < best) {
      best = std::move(bits);
      best_mask = permuted;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (canonical_mask) *canonical_mask = best_mask;
  return "t" + std::to_string(terminal_count) + "s" + std::to_string(steiner_count) + ":" + best;
}

std::vector<Topology> enumerate_topologies(const TerminalLayout& layout, std::size_t k,
                                           const EnumerationLimits& limits) {
  if (layout.terminals == 0) throw PreconditionError("layout needs at least one terminal");
  ArcSetQuery q;
  q.vertex_count = layout.terminals + k;
  q.demands = layout.demands;
  q.steiner_begin = layout.terminals;
  q.require_simple = true;
  const auto masks = minimal_connecting_arc_sets(q, limits);

  std::map<std::string, ArcMask> classes;
  for (auto mask : masks) {
    ArcMask canon = 0;
    auto code = canonical_code(mask, layout.terminals, k, &canon);
    classes.emplace(std::move(code), canon);
  }
  std::vector<Topology> out;
  out.reserve(classes.size());
  for (auto& [code, canon] : classes)
    out.push_back(Topology{layout.terminals, k, mask_to_arcs(canon, q.vertex_count), code});
  return out;
}

std::vector<Topology> enumerate_topologies(
    std::size_t m, std::size_t n, std::size_t k,
    const std::optional<std::vector<std::pair<std::size_t, std::size_t>>>& pairs,
    const EnumerationLimits& limits) {
  if (m < 1 || n < 1) throw PreconditionError("need at least one source and one sink");
  const auto layout = pairs ? point_to_point_layout(m, n, *pairs) : all_pairs_layout(m, n);
  return enumerate_topologies(layout, k, limits);
}

}  // namespace dsn
