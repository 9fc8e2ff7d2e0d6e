#include "dsn/cli.hpp"

#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "dsn/analyzer.hpp"
#include "dsn/error.hpp"
#include "dsn/generate.hpp"
#include "dsn/io.hpp"
#include "dsn/reductions.hpp"
#include "dsn/solver.hpp"

namespace dsn {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string format = "text";
  std::optional<std::size_t> max_steiner;
  double tolerance = 1e-9;
  std::size_t max_iterations = 10000;
  std::size_t restarts = 1;
  std::string variant;
  bool parallel = false;
  std::uint64_t seed = 0;
  bool prune = false;

  // gen
  std::string kind = "euclidean";
  std::size_t m = 2;
  std::size_t n = 2;
  std::size_t points = 6;
  int dim = 2;
};

SolveConfig config_from(const Options& o) {
  SolveConfig c;
  c.max_steiner = o.max_steiner;
  c.tolerance = o.tolerance;
  c.max_iterations = o.max_iterations;
  c.restarts = o.restarts;
  c.parallel = o.parallel;
  c.seed = o.seed;
  if (o.variant == "all_pairs") c.variant = Variant::all_pairs;
  if (o.variant == "point_to_point") c.variant = Variant::point_to_point;
  validate(c);
  return c;
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

void emit(const Options& o, std::ostream& out, const Json& doc, const std::string& text) {
  if (!o.output.empty()) write_file(o.output, canonical_dump(doc));
  if (o.format == "json" && o.output.empty())
    out << canonical_dump(doc);
  else
    out << text;
}

std::string certificate_text(const Certificate& c) {
  std::ostringstream s;
  s << std::boolalpha << "verdict: " << (c.consistent ? "consistent" : "inconsistent") << "\n"
    << "path vertices: " << c.max_path_vertices << " (bound " << c.path_bound << ")\n"
    << "cover size: " << c.cover_size << " (bound " << c.cover_bound << ", jumps " << c.jump_count << ")\n"
    << "steiner points: " << c.steiner_count << " (bound " << c.steiner_bound << ")\n"
    << "simple: " << c.simple_ok << "  coverage: " << c.coverage_ok << "  path vertices: " << c.path_vertices_ok
    << "  cover indices: " << c.cover_indices_ok << "  property 1: " << c.property1_ok
    << "  property 2: " << c.property2_ok << "\n";
  for (const auto& w : c.witnesses) s << "witness: " << w << "\n";
  return s.str();
}

Json certificate_or_refusal(const Network& net) {
  try {
    return certificate_to_json(certify(net));
  } catch (const BudgetExceeded& e) {
    return {{"verdict", "not_checked"}, {"reason", e.what()}};
  }
}

std::string network_text(const Network& net) {
  std::ostringstream s;
  for (const auto& e : net.edges())
    s << net.vertices()[e.from].id << " -> " << net.vertices()[e.to].id << "\n";
  return s.str();
}

int solve_like(const Options& o, std::ostream& out, bool oracle) {
  const auto instance = instance_from_json(parse_json(read_file(o.input)));
  const auto config = config_from(o);
  const Solution sol = oracle ? brute_force_oracle(instance, config) : solve(instance, config);
  auto record = make_record(instance, sol, config);
  record.certificate = certificate_or_refusal(sol.network);
  std::ostringstream text;
  text << "length: " << fmt(sol.length) << "\n"
       << "steiner points: " << sol.network.steiner_count() << "\n"
       << "status: " << to_string(sol.status) << "\n"
       << "topologies examined: " << sol.topologies_examined << "\n";
  if (!oracle) {
    text << "steiner budget: " << sol.steiner_budget << " (sufficient bound " << sol.theorem_bound << ")\n";
    if (sol.budget_binding) text << "note: the budget, not the bound, limits this search\n";
    if (!sol.converged) text << "note: some placements hit the iteration limit\n";
  }
  text << network_text(sol.network);
  emit(o, out, solution_to_json(record), text.str());
  return kExitOk;
}

int certify_cmd(const Options& o, std::ostream& out) {
  const auto record = solution_from_json(parse_json(read_file(o.input)));
  const auto c = certify(record.network, CertifyOptions{o.prune});
  Json doc = certificate_to_json(c);
  doc["schema_version"] = kSchemaVersion;
  doc["instance_digest"] = instance_digest(record.instance);
  emit(o, out, doc, certificate_text(c));
  return c.consistent ? kExitOk : kExitInconsistent;
}

int simplify_cmd(const Options& o, std::ostream& out) {
  const auto j = parse_json(read_file(o.input));
  const auto instance = instance_from_json([&]() -> const Json& {
    if (!j.is_object() || !j.contains("instance")) throw ParseError("instance: missing");
    return j["instance"];
  }());
  if (!j.contains("network")) throw ParseError("network: missing");
  const auto net = network_from_json(j["network"], instance);
  const auto simple = simplify(net);
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["instance"] = instance_to_json(instance);
  doc["instance_digest"] = instance_digest(instance);
  doc["network"] = network_to_json(simple);
  doc["length"] = length(simple);
  doc["steiner_count"] = simple.steiner_count();
  std::ostringstream text;
  text << "length: " << fmt(length(net)) << " -> " << fmt(length(simple)) << "\n"
       << "steiner points: " << net.steiner_count() << " -> " << simple.steiner_count() << "\n"
       << network_text(simple);
  emit(o, out, doc, text.str());
  return kExitOk;
}

int reduce_med_cmd(const Options& o, std::ostream& out) {
  const auto d = digraph_from_json(parse_json(read_file(o.input)));
  const auto arcs = solve_med(d, config_from(o));
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["arc_count"] = arcs.size();
  doc["arcs"] = Json::array();
  std::ostringstream text;
  text << "arcs: " << arcs.size() << "\n";
  for (const auto& a : arcs) {
    doc["arcs"].push_back(Json::array({d.vertices[a.from], d.vertices[a.to]}));
    text << d.vertices[a.from] << " -> " << d.vertices[a.to] << "\n";
  }
  emit(o, out, doc, text.str());
  return kExitOk;
}

int gen_cmd(const Options& o, std::ostream& out) {
  Json doc;
  if (o.kind == "euclidean")
    doc = instance_to_json(random_euclidean_instance(o.seed, o.m, o.n, o.dim));
  else if (o.kind == "rectilinear")
    doc = instance_to_json(random_rectilinear_instance(o.seed, o.m, o.n, o.dim));
  else if (o.kind == "explicit")
    doc = instance_to_json(random_finite_instance(o.seed, o.points, o.m, o.n, SpaceMode::explicit_matrix));
  else if (o.kind == "graph")
    doc = instance_to_json(random_finite_instance(o.seed, o.points, o.m, o.n, SpaceMode::graph_metric));
  else if (o.kind == "digraph")
    doc = digraph_to_json(random_strong_digraph(o.seed, o.points));
  else
    throw ParseError("--kind: unknown kind '" + o.kind + "'");
  if (o.output.empty())
    out << canonical_dump(doc);
  else
    write_file(o.output, canonical_dump(doc));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shortest directed networks: solve, certify, simplify, oracle, reduce-med, gen", "dsn"};
  app.require_subcommand(1);
  Options o;

  auto add_io = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", o.input, what)->required();
    sub->add_option("-o,--output", o.output, "Write the JSON result here");
    sub->add_option("--format", o.format, "Standard output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--max-steiner", o.max_steiner, "Largest Steiner point count searched");
    sub->add_option("--tol", o.tolerance, "Placement convergence tolerance");
    sub->add_option("--max-iter", o.max_iterations, "Placement iteration limit");
    sub->add_option("--restarts", o.restarts, "Placement starts per topology; the first is deterministic");
    sub->add_option("--variant", o.variant, "all_pairs or point_to_point")
        ->check(CLI::IsMember({"all_pairs", "point_to_point"}));
    sub->add_flag("--parallel", o.parallel, "Evaluate topologies in parallel");
    sub->add_option("--seed", o.seed, "Seed for random restarts");
  };

  auto* solve_cmd = app.add_subcommand("solve", "Shortest network within a Steiner budget");
  add_io(solve_cmd, "Instance file");
  add_config(solve_cmd);
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive search over a finite space");
  add_io(oracle_cmd, "Instance file");
  add_config(oracle_cmd);
  auto* certify_sub = app.add_subcommand("certify", "Check a solution against the structural bounds");
  add_io(certify_sub, "Solution file");
  certify_sub->add_flag("--prune", o.prune, "Prune redundant edges first");
  auto* simplify_sub = app.add_subcommand("simplify", "Remove Steiner points with at most two neighbours");
  add_io(simplify_sub, "Solution or network file");
  auto* med_sub = app.add_subcommand("reduce-med", "Minimum equivalent digraph through the network solver");
  add_io(med_sub, "Digraph file");
  add_config(med_sub);
  auto* gen_sub = app.add_subcommand("gen", "Emit a seeded random instance");
  gen_sub->add_option("--kind", o.kind, "euclidean, rectilinear, explicit, graph or digraph");
  gen_sub->add_option("--m", o.m, "Number of sources");
  gen_sub->add_option("--n", o.n, "Number of sinks");
  gen_sub->add_option("--points", o.points, "Points in a finite space or digraph vertices");
  gen_sub->add_option("--dim", o.dim, "Dimension of continuous spaces");
  gen_sub->add_option("--seed", o.seed, "Random seed");
  gen_sub->add_option("-o,--output", o.output, "Write the instance here");

  std::vector<const char*> argv{"dsn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (solve_cmd->parsed()) return solve_like(o, out, false);
    if (oracle_cmd->parsed()) return solve_like(o, out, true);
    if (certify_sub->parsed()) return certify_cmd(o, out);
    if (simplify_sub->parsed()) return simplify_cmd(o, out);
    if (med_sub->parsed()) return reduce_med_cmd(o, out);
    if (gen_sub->parsed()) return gen_cmd(o, out);
  } catch (const BudgetExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kExitBudget;
  } catch (const StructuralCorruption& e) {
    err << "corruption: " << e.what() << "\n";
    return kExitCorruption;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitCorruption;
  }
  return kExitInvalid;
}

}  // namespace dsn
