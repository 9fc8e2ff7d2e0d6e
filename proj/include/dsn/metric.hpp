#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace dsn {

using Coordinates = std::vector<double>;

// Reference to one of the declared points of a finite space.
struct PointId {
  std::size_t index = 0;
  auto operator<=>(const PointId&) const = default;
};

using Point = std::variant<Coordinates, PointId>;

enum class SpaceMode { euclidean, rectilinear, explicit_matrix, graph_metric, ambient_digraph };

struct WeightedEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  double weight = 1.0;
};

// Immutable description of the space networks live in.
//
// Continuous modes (euclidean, rectilinear) take coordinate points of a fixed
// dimension. Finite modes take PointId references into the declared labels.
// ambient_digraph is not a metric: it only says which arcs may be used and
// what each one costs.
class Space {
 public:
  static Space euclidean(int dim);
  static Space rectilinear(int dim);
  // Accepts any square matrix; validate_metric reports axiom violations.
  static Space explicit_matrix(std::vector<std::string> labels,
                               std::vector<std::vector<double>> distances);
  // Edges are undirected; weights must be positive and the graph connected.
  static Space graph_metric(std::vector<std::string> labels, std::vector<WeightedEdge> edges);
  static Space ambient_digraph(std::vector<std::string> labels, std::vector<WeightedEdge> arcs);

  SpaceMode mode() const { return mode_; }
  int dimension() const { return dim_; }
  bool is_continuous() const;
  bool is_finite() const { return !is_continuous(); }

  std::size_t point_count() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> find_label(const std::string& label) const;

  // Matrix of pairwise distances (explicit_matrix, graph_metric).
  const std::vector<std::vector<double>>& distance_matrix() const { return matrix_; }
  // Undirected edges (graph_metric) or arcs (ambient_digraph) as declared.
  const std::vector<WeightedEdge>& declared_edges() const { return edges_; }

  // Throws InvalidPoint when p does not belong to this space.
  void check_point(const Point& p) const;

  // rho(p, q). Not available in ambient_digraph mode.
  double distance(const Point& p, const Point& q) const;

  std::optional<double> arc_weight(std::size_t from, std::size_t to) const;

  // Cost of a network edge p->q: the distance, or the arc weight in ambient
  // mode (InvalidPoint if the arc does not exist).
  double edge_length(const Point& p, const Point& q) const;

 private:
  Space() = default;

  SpaceMode mode_ = SpaceMode::euclidean;
  int dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> matrix_;
  std::vector<WeightedEdge> edges_;
  // ambient_digraph: arc_[from][to] holds the weight, or nullopt.
  std::vector<std::vector<std::optional<double>>> arcs_;
};

struct MetricViolation {
  enum class Kind { negative_entry, nonzero_diagonal, asymmetry, triangle, nonpositive_arc };
  Kind kind;
  // Point indices involved; triangle violations list (a, b, c) with
  // d(a,c) > d(a,b) + d(b,c).
  std::vector<std::size_t> witness;
  std::string message;
};

struct MetricReport {
  std::vector<MetricViolation> violations;
  std::vector<std::string> warnings;
  bool ok() const { return violations.empty(); }
};

MetricReport validate_metric(const Space& space);

// Where Steiner points may be placed.
struct LocationDomain {
  bool continuous = false;
  int dim = 0;
  std::vector<std::size_t> points;  // finite modes: every declared point
};

LocationDomain candidate_steiner_locations(const Space& space);

std::string to_string(SpaceMode mode);
std::optional<SpaceMode> parse_space_mode(const std::string& text);

}  // namespace dsn
