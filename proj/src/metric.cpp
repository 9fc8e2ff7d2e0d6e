#include "dsn/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "dsn/error.hpp"

namespace dsn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_labels(const std::vector<std::string>& labels) {
  std::set<std::string> seen;
  for (const auto& label : labels) {
    if (label.empty()) throw InvalidSpace("point labels must be nonempty");
    if (!seen.insert(label).second) throw InvalidSpace("duplicate point label '" + label + "'");
  }
}

void check_edge_endpoints(const WeightedEdge& e, std::size_t count) {
  if (e.from >= count || e.to >= count) throw InvalidSpace("edge endpoint out of range");
  if (e.from == e.to) throw InvalidSpace("self-loop in declared edges");
}

}  // namespace

Space Space::euclidean(int dim) {
  if (dim < 1) throw InvalidSpace("dimension must be at least 1");
  Space s;
  s.mode_ = SpaceMode::euclidean;
  s.dim_ = dim;
  return s;
}

Space Space::rectilinear(int dim) {
  Space s = euclidean(dim);
  s.mode_ = SpaceMode::rectilinear;
  return s;
}

Space Space::explicit_matrix(std::vector<std::string> labels,
                             std::vector<std::vector<double>> distances) {
  check_labels(labels);
  if (distances.size() != labels.size()) throw InvalidSpace("distance matrix row count != point count");
  for (const auto& row : distances) {
    if (row.size() != labels.size()) throw InvalidSpace("distance matrix is not square");
    for (double d : row)
      if (!std::isfinite(d)) throw InvalidSpace("distance matrix entries must be finite");
  }
  Space s;
  s.mode_ = SpaceMode::explicit_matrix;
  s.labels_ = std::move(labels);
  s.matrix_ = std::move(distances);
  return s;
}

Space Space::graph_metric(std::vector<std::string> labels, std::vector<WeightedEdge> edges) {
  check_labels(labels);
  const std::size_t n = labels.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& e : edges) {
    check_edge_endpoints(e, n);
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw InvalidSpace("graph edge weights must be positive and finite");
    d[e.from][e.to] = std::min(d[e.from][e.to], e.weight);
    d[e.to][e.from] = std::min(d[e.to][e.from], e.weight);
  }
  // Floyd-Warshall, once at load.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d[i][j] == kInf)
        throw InvalidSpace("graph is disconnected: no path between '" + labels[i] + "' and '" +
                           labels[j] + "'");
  Space s;
  s.mode_ = SpaceMode::graph_metric;
  s.labels_ = std::move(labels);
  s.matrix_ = std::move(d);
  s.edges_ = std::move(edges);
  return s;
}

Space Space::ambient_digraph(std::vector<std::string> labels, std::vector<WeightedEdge> arcs) {
  check_labels(labels);
  const std::size_t n = labels.size();
  std::vector<std::vector<std::optional<double>>> table(n, std::vector<std::optional<double>>(n));
  for (const auto& a : arcs) {
    check_edge_endpoints(a, n);
    if (!std::isfinite(a.weight)) throw InvalidSpace("arc weights must be finite");
    if (table[a.from][a.to]) throw InvalidSpace("duplicate arc in ambient digraph");
    table[a.from][a.to] = a.weight;
  }
  Space s;
  s.mode_ = SpaceMode::ambient_digraph;
  s.labels_ = std::move(labels);
  s.edges_ = std::move(arcs);
  s.arcs_ = std::move(table);
  return s;
}

bool Space::is_continuous() const {
  return mode_ == SpaceMode::euclidean || mode_ == SpaceMode::rectilinear;
}

std::optional<std::size_t> Space::find_label(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

void Space::check_point(const Point& p) const {
  if (is_continuous()) {
    const auto* c = std::get_if<Coordinates>(&p);
    if (c == nullptr) throw InvalidPoint("expected coordinates in a " + to_string(mode_) + " space");
    if (static_cast<int>(c->size()) != dim_) {
      std::ostringstream msg;
      msg << "point has dimension " << c->size() << ", space has dimension " << dim_;
      throw InvalidPoint(msg.str());
    }
    for (double x : *c)
      if (!std::isfinite(x)) throw InvalidPoint("coordinates must be finite");
    return;
  }
  const auto* id = std::get_if<PointId>(&p);
  if (id == nullptr) throw InvalidPoint("expected a point id in a " + to_string(mode_) + " space");
  if (id->index >= labels_.size()) throw InvalidPoint("point id out of range");
}

double Space::distance(const Point& p, const Point& q) const {
  if (mode_ == SpaceMode::ambient_digraph)
    throw PreconditionError("ambient_digraph mode has arc weights, not distances");
  check_point(p);
  check_point(q);
  if (is_continuous()) {
    const auto& a = std::get<Coordinates>(p);
    const auto& b = std::get<Coordinates>(q);
    double sum = 0.0;
    if (mode_ == SpaceMode::euclidean) {
      for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
      return std::sqrt(sum);
    }
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
    return sum;
  }
  return matrix_[std::get<PointId>(p).index][std::get<PointId>(q).index];
}

std::optional<double> Space::arc_weight(std::size_t from, std::size_t to) const {
  if (mode_ != SpaceMode::ambient_digraph || from >= arcs_.size() || to >= arcs_.size())
    return std::nullopt;
  return arcs_[from][to];
}

double Space::edge_length(const Point& p, const Point& q) const {
  if (mode_ != SpaceMode::ambient_digraph) return distance(p, q);
  check_point(p);
  check_point(q);
  const auto from = std::get<PointId>(p).index;
  const auto to = std::get<PointId>(q).index;
  auto w = arc_weight(from, to);
  if (!w) throw InvalidPoint("no ambient arc " + labels_[from] + " -> " + labels_[to]);
  return *w;
}

MetricReport validate_metric(const Space& space) {
  using Kind = MetricViolation::Kind;
  MetricReport report;
  const auto& labels = space.labels();
  switch (space.mode()) {
    case SpaceMode::euclidean:
    case SpaceMode::rectilinear:
    case SpaceMode::graph_metric:
      return report;
    case SpaceMode::ambient_digraph:
      for (const auto& a : space.declared_edges())
        if (!(a.weight > 0.0))
          report.violations.push_back({Kind::nonpositive_arc, {a.from, a.to},
                                       "arc " + labels[a.from] + " -> " + labels[a.to] +
                                           " has nonpositive weight"});
      return report;
    case SpaceMode::explicit_matrix:
      break;
  }

  const auto& d = space.distance_matrix();
  const std::size_t n = d.size();
  double scale = 0.0;
  for (const auto& row : d)
    for (double x : row) scale = std::max(scale, std::abs(x));
  const double slack = 1e-12 * std::max(scale, 1.0);
  bool degenerate = false;

  for (std::size_t i = 0; i < n; ++i) {
    if (d[i][i] != 0.0)
      report.violations.push_back({Kind::nonzero_diagonal, {i}, "d(" + labels[i] + "," + labels[i] + ") != 0"});
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] < 0.0)
        report.violations.push_back(
            {Kind::negative_entry, {i, j}, "d(" + labels[i] + "," + labels[j] + ") < 0"});
      if (i < j && std::abs(d[i][j] - d[j][i]) > slack)
        report.violations.push_back(
            {Kind::asymmetry, {i, j}, "d(" + labels[i] + "," + labels[j] + ") != d(" + labels[j] + "," + labels[i] + ")"});
      if (i != j && d[i][j] == 0.0) degenerate = true;
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        if (d[a][c] > d[a][b] + d[b][c] + slack)
          report.violations.push_back({Kind::triangle, {a, b, c},
                                       "d(" + labels[a] + "," + labels[c] + ") > d(" + labels[a] + "," +
                                           labels[b] + ") + d(" + labels[b] + "," + labels[c] + ")"});
      }
  if (degenerate)
    report.warnings.push_back("distinct points at distance zero (pseudometric)");
  return report;
}

LocationDomain candidate_steiner_locations(const Space& space) {
  LocationDomain domain;
  if (space.is_continuous()) {
    domain.continuous = true;
    domain.dim = space.dimension();
    return domain;
  }
  domain.points.resize(space.point_count());
  for (std::size_t i = 0; i < domain.points.size(); ++i) domain.points[i] = i;
  return domain;
}

std::string to_string(SpaceMode mode) {
  switch (mode) {
    case SpaceMode::euclidean: return "euclidean";
    case SpaceMode::rectilinear: return "rectilinear";
    case SpaceMode::explicit_matrix: return "explicit_matrix";
    case SpaceMode::graph_metric: return "graph_metric";
    case SpaceMode::ambient_digraph: return "ambient_digraph";
  }
  return "unknown";
}

std::optional<SpaceMode> parse_space_mode(const std::string& text) {
  for (auto m : {SpaceMode::euclidean, SpaceMode::rectilinear, SpaceMode::explicit_matrix,
                 SpaceMode::graph_metric, SpaceMode::ambient_digraph})
    if (to_string(m) == text) return m;
  return std::nullopt;
}

}  // namespace dsn
