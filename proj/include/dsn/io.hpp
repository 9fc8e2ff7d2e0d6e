#pragma once

#include <cstdint>
#include <string>

#include "dsn/analyzer.hpp"
#include "dsn/instance.hpp"
#include "dsn/reductions.hpp"
#include "dsn/solver.hpp"
#include "json.hpp"

namespace dsn {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Sorted keys, two-space indent, floats at 17 significant digits, trailing
// newline. Throws Error on non-finite numbers.
std::string canonical_dump(const Json& value);

// Throws ParseError carrying the line and column of malformed text.
Json parse_json(const std::string& text);

Json instance_to_json(const Instance& instance);
// Validates the instance; field errors name the offending field.
Instance instance_from_json(const Json& j);

// 64-bit FNV-1a over the canonical instance text, as 16 hex digits.
std::string instance_digest(const Instance& instance);

Json network_to_json(const Network& net);
Network network_from_json(const Json& j, const Instance& instance);

Json certificate_to_json(const Certificate& c);
Json config_to_json(const SolveConfig& config);

struct SolutionRecord {
  SolutionRecord(Instance i, Network net) : instance(std::move(i)), network(std::move(net)) {}

  Instance instance;
  Network network;
  double length = 0.0;
  std::string status;
  std::size_t topologies_examined = 0;
  std::size_t steiner_budget = 0;
  std::size_t theorem_bound = 0;
  bool budget_binding = false;
  bool converged = true;
  Json config = Json::object();
  Json certificate = Json::object();
};

SolutionRecord make_record(const Instance& instance, const Solution& solution, const SolveConfig& config);
Json solution_to_json(const SolutionRecord& record);
// Re-evaluates the network length against the stored value and checks the
// instance digest; either mismatch is a ParseError.
SolutionRecord solution_from_json(const Json& j);

Json digraph_to_json(const Digraph& d);
Digraph digraph_from_json(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace dsn
