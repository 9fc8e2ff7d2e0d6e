#include "dsn/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dsn/error.hpp"

namespace dsn {

namespace {

void dump(const Json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      if (!std::isfinite(x)) throw Error("cannot serialize a non-finite number");
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(key).dump() + ": ";
        dump(item, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      const bool flat = std::none_of(v.begin(), v.end(), [](const Json& x) { return x.is_structured(); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          dump(v[i], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump(v[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    default:
      out += v.dump();
  }
}

std::string join(const std::string& where, const char* key) { return where.empty() ? key : where + "." + key; }

const Json& get(const Json& j, const char* key, const std::string& where = "") {
  if (!j.is_object()) throw ParseError((where.empty() ? "document" : where) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(join(where, key) + ": missing");
  return *it;
}

double as_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

std::size_t as_index(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw ParseError(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  return j;
}

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

void check_schema(const Json& j) {
  const auto& v = get(j, "schema_version");
  if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
    throw ParseError("schema_version: expected " + std::to_string(kSchemaVersion));
}

Json point_to_json(const Space& space, const Point& p) {
  if (const auto* c = std::get_if<Coordinates>(&p)) return Json(*c);
  return Json(space.labels().at(std::get<PointId>(p).index));
}

Point point_from_json(const Space& space, const Json& j, const std::string& where) {
  if (space.is_continuous()) {
    as_array(j, where);
    Coordinates c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(as_number(j[i], at(where, i)));
    if (c.size() != static_cast<std::size_t>(space.dimension()))
      throw ParseError(where + ": expected " + std::to_string(space.dimension()) + " coordinates");
    return c;
  }
  const auto label = as_string(j, where);
  const auto id = space.find_label(label);
  if (!id) throw ParseError(where + ": unknown point '" + label + "'");
  return PointId{*id};
}

Json weighted_edges_to_json(const Space& space) {
  Json out = Json::array();
  for (const auto& e : space.declared_edges())
    out.push_back({{"from", space.labels()[e.from]}, {"to", space.labels()[e.to]}, {"weight", e.weight}});
  return out;
}

std::vector<WeightedEdge> weighted_edges_from_json(const Json& j, const std::vector<std::string>& labels,
                                                   const std::string& where) {
  auto index = [&](const std::string& label, const std::string& w) {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return i;
    throw ParseError(w + ": unknown vertex '" + label + "'");
  };
  std::vector<WeightedEdge> out;
  as_array(j, where);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto w = at(where, i);
    WeightedEdge e;
    e.from = index(as_string(get(j[i], "from", w), w + ".from"), w + ".from");
    e.to = index(as_string(get(j[i], "to", w), w + ".to"), w + ".to");
    if (j[i].is_object() && j[i].contains("weight")) e.weight = as_number(j[i]["weight"], w + ".weight");
    out.push_back(e);
  }
  return out;
}

std::vector<std::string> labels_from_json(const Json& j, const std::string& where) {
  as_array(j, where);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], at(where, i)));
  return out;
}

Json space_to_json(const Space& space) {
  Json j = {{"mode", to_string(space.mode())}};
  switch (space.mode()) {
    case SpaceMode::euclidean:
    case SpaceMode::rectilinear:
      j["dimension"] = space.dimension();
      break;
    case SpaceMode::explicit_matrix:
      j["points"] = space.labels();
      j["distances"] = space.distance_matrix();
      break;
    case SpaceMode::graph_metric:
      j["vertices"] = space.labels();
      j["edges"] = weighted_edges_to_json(space);
      break;
    case SpaceMode::ambient_digraph:
      j["vertices"] = space.labels();
      j["arcs"] = weighted_edges_to_json(space);
      break;
  }
  return j;
}

Space space_from_json(const Json& j) {
  const auto mode_text = as_string(get(j, "mode", "space"), "space.mode");
  const auto mode = parse_space_mode(mode_text);
  if (!mode) throw ParseError("space.mode: unknown mode '" + mode_text + "'");
  try {
    switch (*mode) {
      case SpaceMode::euclidean:
      case SpaceMode::rectilinear: {
        const auto dim = static_cast<int>(as_index(get(j, "dimension", "space"), "space.dimension"));
        return *mode == SpaceMode::euclidean ? Space::euclidean(dim) : Space::rectilinear(dim);
      }
      case SpaceMode::explicit_matrix: {
        auto labels = labels_from_json(get(j, "points", "space"), "space.points");
        const auto& rows = as_array(get(j, "distances", "space"), "space.distances");
        std::vector<std::vector<double>> matrix;
        for (std::size_t r = 0; r < rows.size(); ++r) {
          const auto w = at("space.distances", r);
          as_array(rows[r], w);
          std::vector<double> row;
          for (std::size_t c = 0; c < rows[r].size(); ++c) row.push_back(as_number(rows[r][c], at(w, c)));
          matrix.push_back(std::move(row));
        }
        return Space::explicit_matrix(std::move(labels), std::move(matrix));
      }
      case SpaceMode::graph_metric: {
        auto labels = labels_from_json(get(j, "vertices", "space"), "space.vertices");
        auto edges = weighted_edges_from_json(get(j, "edges", "space"), labels, "space.edges");
        return Space::graph_metric(std::move(labels), std::move(edges));
      }
      case SpaceMode::ambient_digraph: {
        auto labels = labels_from_json(get(j, "vertices", "space"), "space.vertices");
        auto arcs = weighted_edges_from_json(get(j, "arcs", "space"), labels, "space.arcs");
        return Space::ambient_digraph(std::move(labels), std::move(arcs));
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("space: ") + e.what());
  }
  throw ParseError("space.mode: unsupported");
}

Json edges_to_json(const Network& net) {
  Json out = Json::array();
  for (const auto& e : net.edges()) out.push_back(Json::array({net.vertices()[e.from].id, net.vertices()[e.to].id}));
  return out;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string canonical_dump(const Json& value) {
  std::string out;
  dump(value, out, 0);
  out += "\n";
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Byte offset to line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

Json instance_to_json(const Instance& instance) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["space"] = space_to_json(*instance.space);
  j["sources"] = Json::array();
  for (const auto& p : instance.sources) j["sources"].push_back(point_to_json(*instance.space, p));
  j["sinks"] = Json::array();
  for (const auto& p : instance.sinks) j["sinks"].push_back(point_to_json(*instance.space, p));
  if (instance.pairs) {
    j["pairs"] = Json::array();
    for (auto [a, b] : *instance.pairs) j["pairs"].push_back(Json::array({a, b}));
  }
  return j;
}

Instance instance_from_json(const Json& j) {
  check_schema(j);
  Instance inst;
  inst.space = std::make_shared<Space>(space_from_json(get(j, "space")));
  for (const char* key : {"sources", "sinks"}) {
    const auto& list = as_array(get(j, key), key);
    auto& target = std::string(key) == "sources" ? inst.sources : inst.sinks;
    for (std::size_t i = 0; i < list.size(); ++i) target.push_back(point_from_json(*inst.space, list[i], at(key, i)));
  }
  if (j.contains("pairs")) {
    const auto& list = as_array(j["pairs"], "pairs");
    PairList pairs;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto w = at("pairs", i);
      if (!list[i].is_array() || list[i].size() != 2) throw ParseError(w + ": expected [source index, sink index]");
      pairs.emplace_back(as_index(list[i][0], w + "[0]"), as_index(list[i][1], w + "[1]"));
    }
    inst.pairs = std::move(pairs);
  }
  try {
    validate(inst);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return inst;
}

std::string instance_digest(const Instance& instance) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical_dump(instance_to_json(instance)))));
  return buf;
}

Json network_to_json(const Network& net) {
  Json j;
  j["vertices"] = Json::array();
  for (const auto& v : net.vertices())
    j["vertices"].push_back(
        {{"id", v.id}, {"role", to_string(v.role)}, {"location", point_to_json(net.space(), v.location)}});
  j["edges"] = edges_to_json(net);
  if (net.pairs()) {
    j["pairs"] = Json::array();
    for (auto [a, b] : *net.pairs())
      j["pairs"].push_back(Json::array({net.vertices()[a].id, net.vertices()[b].id}));
  }
  return j;
}

Network network_from_json(const Json& j, const Instance& instance) {
  const auto& space = *instance.space;
  const auto& list = as_array(get(j, "vertices", "network"), "network.vertices");
  std::vector<Vertex> vertices;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto w = at("network.vertices", i);
    Vertex v;
    v.id = as_string(get(list[i], "id", w), w + ".id");
    const auto role_text = as_string(get(list[i], "role", w), w + ".role");
    const auto role = parse_role(role_text);
    if (!role) throw ParseError(w + ".role: unknown role '" + role_text + "'");
    v.role = *role;
    v.location = point_from_json(space, get(list[i], "location", w), w + ".location");
    if (!index.emplace(v.id, i).second) throw ParseError(w + ".id: duplicate id '" + v.id + "'");
    vertices.push_back(std::move(v));
  }
  auto lookup = [&](const Json& x, const std::string& w) {
    const auto id = as_string(x, w);
    auto it = index.find(id);
    if (it == index.end()) throw ParseError(w + ": unknown vertex '" + id + "'");
    return it->second;
  };
  auto pair_list = [&](const Json& arr, const std::string& where) {
    as_array(arr, where);
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto w = at(where, i);
      if (!arr[i].is_array() || arr[i].size() != 2) throw ParseError(w + ": expected [from, to]");
      out.emplace_back(lookup(arr[i][0], w + "[0]"), lookup(arr[i][1], w + "[1]"));
    }
    return out;
  };
  std::set<Edge> edges;
  for (auto [u, v] : pair_list(get(j, "edges", "network"), "network.edges")) edges.insert({u, v});
  std::optional<std::vector<Demand>> pairs;
  if (j.contains("pairs")) pairs = pair_list(j["pairs"], "network.pairs");

  // Terminals must match the instance.
  const auto variant = pairs ? Variant::point_to_point : Variant::all_pairs;
  for (const auto& t : terminal_setup(instance, variant).vertices) {
    auto it = index.find(t.id);
    if (it == index.end() || vertices[it->second].role != t.role)
      throw ParseError("network.vertices: terminal '" + t.id + "' missing or with the wrong role");
  }
  try {
    return Network(instance.space, std::move(vertices), std::move(edges), std::move(pairs));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("network: ") + e.what());
  }
}

Json certificate_to_json(const Certificate& c) {
  return {{"m", c.m},
          {"n", c.n},
          {"max_path_vertices", c.max_path_vertices},
          {"path_bound", c.path_bound},
          {"jump_count", c.jump_count},
          {"cover_size", c.cover_size},
          {"cover_bound", c.cover_bound},
          {"steiner_count", c.steiner_count},
          {"steiner_bound", c.steiner_bound},
          {"simple_ok", c.simple_ok},
          {"coverage_ok", c.coverage_ok},
          {"path_vertices_ok", c.path_vertices_ok},
          {"cover_indices_ok", c.cover_indices_ok},
          {"property1_ok", c.property1_ok},
          {"property2_ok", c.property2_ok},
          {"verdict", c.consistent ? "consistent" : "inconsistent"},
          {"witnesses", c.witnesses}};
}

Json config_to_json(const SolveConfig& config) {
  Json j;
  j["max_steiner"] = config.max_steiner ? Json(*config.max_steiner) : Json(nullptr);
  j["tolerance"] = config.tolerance;
  j["max_iterations"] = config.max_iterations;
  j["smoothing_epsilon"] = config.smoothing_epsilon;
  j["restarts"] = config.restarts;
  j["variant"] = config.variant ? Json(*config.variant == Variant::all_pairs ? "all_pairs" : "point_to_point")
                                : Json(nullptr);
  j["parallel"] = config.parallel;
  j["seed"] = config.seed;
  j["max_vertices"] = config.limits.max_vertices;
  j["max_search_nodes"] = config.limits.max_search_nodes;
  return j;
}

SolutionRecord make_record(const Instance& instance, const Solution& solution, const SolveConfig& config) {
  SolutionRecord r{instance, solution.network};
  r.length = solution.length;
  r.status = to_string(solution.status);
  r.topologies_examined = solution.topologies_examined;
  r.steiner_budget = solution.steiner_budget;
  r.theorem_bound = solution.theorem_bound;
  r.budget_binding = solution.budget_binding;
  r.converged = solution.converged;
  r.config = config_to_json(config);
  return r;
}

Json solution_to_json(const SolutionRecord& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["instance"] = instance_to_json(r.instance);
  j["instance_digest"] = instance_digest(r.instance);
  j["network"] = network_to_json(r.network);
  j["length"] = r.length;
  j["steiner_count"] = r.network.steiner_count();
  j["certificate"] = r.certificate;
  j["solver"] = {{"status", r.status},
                 {"topologies_examined", r.topologies_examined},
                 {"steiner_budget", r.steiner_budget},
                 {"theorem_bound", r.theorem_bound},
                 {"budget_binding", r.budget_binding},
                 {"converged", r.converged},
                 {"config", r.config}};
  return j;
}

SolutionRecord solution_from_json(const Json& j) {
  check_schema(j);
  auto instance = instance_from_json(get(j, "instance"));
  const auto digest = as_string(get(j, "instance_digest"), "instance_digest");
  if (digest != instance_digest(instance))
    throw ParseError("instance_digest: does not match the embedded instance");
  SolutionRecord r{instance, network_from_json(get(j, "network"), instance)};
  r.length = as_number(get(j, "length"), "length");
  const double actual = length(r.network);
  if (std::abs(actual - r.length) > 1e-9 * std::max(1.0, std::abs(r.length)))
    throw ParseError("length: stored " + std::to_string(r.length) + " but the network measures " +
                     std::to_string(actual));
  if (j.contains("certificate")) r.certificate = j["certificate"];
  const auto& s = get(j, "solver");
  r.status = as_string(get(s, "status", "solver"), "solver.status");
  r.topologies_examined = as_index(get(s, "topologies_examined", "solver"), "solver.topologies_examined");
  r.steiner_budget = as_index(get(s, "steiner_budget", "solver"), "solver.steiner_budget");
  r.theorem_bound = as_index(get(s, "theorem_bound", "solver"), "solver.theorem_bound");
  r.budget_binding = get(s, "budget_binding", "solver").get<bool>();
  r.converged = get(s, "converged", "solver").get<bool>();
  r.config = get(s, "config", "solver");
  return r;
}

Json digraph_to_json(const Digraph& d) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["vertices"] = d.vertices;
  j["arcs"] = Json::array();
  for (const auto& a : d.arcs)
    j["arcs"].push_back({{"from", d.vertices[a.from]}, {"to", d.vertices[a.to]}, {"weight", a.weight}});
  return j;
}

Digraph digraph_from_json(const Json& j) {
  check_schema(j);
  Digraph d;
  d.vertices = labels_from_json(get(j, "vertices"), "vertices");
  d.arcs = weighted_edges_from_json(get(j, "arcs"), d.vertices, "arcs");
  try {
    validate(d);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return d;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot write");
  out << text;
}

}  // namespace dsn
