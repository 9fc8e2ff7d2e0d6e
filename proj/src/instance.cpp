#include "dsn/instance.hpp"

#include <algorithm>
#include <map>

#include "dsn/error.hpp"

namespace dsn {

void validate(const Instance& instance) {
  if (!instance.space) throw InvalidSpace("instance has no space");
  if (instance.sources.empty()) throw InvalidTerminal("sources: must be nonempty");
  if (instance.sinks.empty()) throw InvalidTerminal("sinks: must be nonempty");
  for (const auto& p : instance.sources) instance.space->check_point(p);
  for (const auto& p : instance.sinks) instance.space->check_point(p);
  if (instance.pairs) {
    if (instance.pairs->empty()) throw InvalidTerminal("pairs: must be nonempty when present");
    for (const auto& [a, b] : *instance.pairs)
      if (a >= instance.m() || b >= instance.n()) throw InvalidTerminal("pairs: index out of range");
  }
  const auto report = validate_metric(*instance.space);
  if (!report.ok()) throw InvalidSpace("space: " + report.violations.front().message);
}

void validate(const SolveConfig& config) {
  if (!(config.tolerance > 0.0)) throw PreconditionError("tolerance must be positive");
  if (!(config.smoothing_epsilon >= 0.0)) throw PreconditionError("smoothing_epsilon must be nonnegative");
  if (config.max_iterations == 0) throw PreconditionError("max_iterations must be positive");
}

Variant effective_variant(const Instance& instance, const SolveConfig& config) {
  if (config.variant) {
    if (*config.variant == Variant::point_to_point && !instance.pairs)
      throw InvalidTerminal("point_to_point variant requires a pair list");
    return *config.variant;
  }
  return instance.pairs ? Variant::point_to_point : Variant::all_pairs;
}

TerminalSetup terminal_setup(const Instance& instance, Variant variant) {
  TerminalSetup setup;
  std::vector<std::size_t> source_vertex(instance.m());
  std::vector<std::size_t> sink_vertex(instance.n());
  const bool finite = instance.space->is_finite();
  std::map<std::size_t, std::size_t> by_point;

  auto add = [&](const Point& p, Role role, const std::string& fallback_id) -> std::size_t {
    if (finite) {
      const auto idx = std::get<PointId>(p).index;
      if (auto it = by_point.find(idx); it != by_point.end()) {
        auto& v = setup.vertices[it->second];
        if ((is_source(v.role) && role == Role::sink) || (is_sink(v.role) && role == Role::source))
          v.role = Role::source_and_sink;
        return it->second;
      }
      by_point[idx] = setup.vertices.size();
      setup.vertices.push_back({instance.space->labels()[idx], role, p});
    } else {
      setup.vertices.push_back({fallback_id, role, p});
    }
    return setup.vertices.size() - 1;
  };
  for (std::size_t i = 0; i < instance.m(); ++i)
    source_vertex[i] = add(instance.sources[i], Role::source, "a" + std::to_string(i + 1));
  for (std::size_t j = 0; j < instance.n(); ++j)
    sink_vertex[j] = add(instance.sinks[j], Role::sink, "b" + std::to_string(j + 1));

  setup.layout.terminals = setup.vertices.size();
  auto push = [&](std::size_t a, std::size_t b) {
    Demand d{a, b};
    if (a != b && std::find(setup.layout.demands.begin(), setup.layout.demands.end(), d) ==
                      setup.layout.demands.end())
      setup.layout.demands.push_back(d);
  };
  if (variant == Variant::point_to_point) {
    if (!instance.pairs) throw InvalidTerminal("point_to_point variant requires a pair list");
    setup.pairs.emplace();
    for (const auto& [a, b] : *instance.pairs) {
      setup.pairs->emplace_back(source_vertex[a], sink_vertex[b]);
      push(source_vertex[a], sink_vertex[b]);
    }
  } else {
    for (auto a : source_vertex)
      for (auto b : sink_vertex) push(a, b);
  }
  return setup;
}

Network terminal_network(const Instance& instance, Variant variant, std::set<Edge> edges) {
  auto setup = terminal_setup(instance, variant);
  return Network(instance.space, std::move(setup.vertices), std::move(edges), std::move(setup.pairs));
}

std::size_t theorem_steiner_bound(std::size_t m, std::size_t n) { return m * n * (9 * (m + n) + 2); }

}  // namespace dsn
