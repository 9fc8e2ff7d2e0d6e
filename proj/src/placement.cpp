#include "dsn/placement.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "dsn/error.hpp"

namespace dsn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Network located_network(const Topology& topology, const Instance& instance, const TerminalSetup& setup,
                        const std::vector<Point>& steiner_locations,
                        const std::vector<std::string>& steiner_ids) {
  auto vertices = setup.vertices;
  for (std::size_t i = 0; i < steiner_locations.size(); ++i)
    vertices.push_back({steiner_ids[i], Role::steiner, steiner_locations[i]});
  std::set<Edge> edges(topology.arcs.begin(), topology.arcs.end());
  return Network(instance.space, std::move(vertices), std::move(edges), setup.pairs);
}

std::vector<std::string> numbered_steiner_ids(std::size_t k) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < k; ++i) ids.push_back("s" + std::to_string(i + 1));
  return ids;
}

// Sum-of-distances objective over a topology with Steiner coordinates packed
// as rows of a k x dim matrix.
class EuclideanObjective {
 public:
  EuclideanObjective(const Topology& topology, const std::vector<Coordinates>& terminals, int dim)
      : arcs_(topology.arcs), terminal_count_(topology.terminal_count), k_(topology.steiner_count), dim_(dim) {
    terminals_.resize(static_cast<Eigen::Index>(terminals.size()), dim);
    for (std::size_t t = 0; t < terminals.size(); ++t)
      for (int d = 0; d < dim; ++d) terminals_(static_cast<Eigen::Index>(t), d) = terminals[t][static_cast<std::size_t>(d)];
    scale_ = 0.0;
    for (Eigen::Index a = 0; a < terminals_.rows(); ++a)
      for (Eigen::Index b = a + 1; b < terminals_.rows(); ++b)
        scale_ = std::max(scale_, (terminals_.row(a) - terminals_.row(b)).norm());
    if (scale_ == 0.0) scale_ = 1.0;
  }

  double scale() const { return scale_; }

  Eigen::RowVectorXd position(const Eigen::MatrixXd& steiner, std::size_t v) const {
    if (v < terminal_count_) return terminals_.row(static_cast<Eigen::Index>(v));
    return steiner.row(static_cast<Eigen::Index>(v - terminal_count_));
  }

  double edge_norm(const Eigen::MatrixXd& steiner, const Edge& e) const {
    return (position(steiner, e.from) - position(steiner, e.to)).norm();
  }

  double exact(const Eigen::MatrixXd& steiner) const {
    double total = 0.0;
    for (const auto& e : arcs_) total += edge_norm(steiner, e);
    return total;
  }

  double smoothed(const Eigen::MatrixXd& steiner, double eps) const {
    double total = 0.0;
    for (const auto& e : arcs_) {
      const double d = edge_norm(steiner, e);
      total += std::sqrt(d * d + eps * eps);
    }
    return total;
  }

  // One reweighted least-squares step. With eps < 0 every weight is 1, which
  // gives the spring-equilibrium starting point.
  Eigen::MatrixXd step(const Eigen::MatrixXd& steiner, double eps) const {
    const auto k = static_cast<Eigen::Index>(k_);
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(k, k);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(k, dim_);
    for (const auto& e : arcs_) {
      double w = 1.0;
      if (eps >= 0.0) {
        const double d = edge_norm(steiner, e);
        w = 1.0 / std::sqrt(d * d + eps * eps);
      }
      const bool su = e.from >= terminal_count_;
      const bool sv = e.to >= terminal_count_;
      const auto iu = static_cast<Eigen::Index>(e.from) - static_cast<Eigen::Index>(terminal_count_);
      const auto iv = static_cast<Eigen::Index>(e.to) - static_cast<Eigen::Index>(terminal_count_);
      if (su && sv) {
        lhs(iu, iu) += w;
        lhs(iv, iv) += w;
        lhs(iu, iv) -= w;
        lhs(iv, iu) -= w;
      } else if (su) {
        lhs(iu, iu) += w;
        rhs.row(iu) += w * terminals_.row(static_cast<Eigen::Index>(e.to));
      } else if (sv) {
        lhs(iv, iv) += w;
        rhs.row(iv) += w * terminals_.row(static_cast<Eigen::Index>(e.from));
      }
    }
    return lhs.ldlt().solve(rhs);
  }

  const std::vector<Edge>& arcs() const { return arcs_; }
  std::size_t steiner_count() const { return k_; }
  std::size_t terminal_count() const { return terminal_count_; }
  const Eigen::MatrixXd& terminals() const { return terminals_; }

 private:
  std::vector<Edge> arcs_;
  std::size_t terminal_count_;
  std::size_t k_;
  int dim_;
  Eigen::MatrixXd terminals_;
  double scale_ = 1.0;
};

struct RunResult {
  Eigen::MatrixXd steiner;
  double value = kInf;
  bool converged = false;
  std::size_t iterations = 0;
};

// Tries putting each Steiner point exactly on another vertex. IRLS creeps
// towards an optimum sitting on a vertex at a sublinear rate, so it is
// tested directly. Returns true if the exact length went down.
bool vertex_moves(const EuclideanObjective& f, Eigen::MatrixXd& x) {
  const std::size_t t = f.terminal_count();
  const std::size_t k = f.steiner_count();
  double value = f.exact(x);
  bool improved = false;
  for (std::size_t i = 0; i < k; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    // Steiner points sitting on top of i move with it.
    std::vector<Eigen::Index> group;
    for (std::size_t j = 0; j < k; ++j)
      if ((x.row(static_cast<Eigen::Index>(j)) - x.row(row)).norm() <= 1e-9 * f.scale())
        group.push_back(static_cast<Eigen::Index>(j));
    for (std::size_t v = 0; v < t + k; ++v) {
      if (v == t + i) continue;
      Eigen::MatrixXd moved = x;
      const Eigen::RowVectorXd target = f.position(x, v);
      for (auto j : group) moved.row(j) = target;
      const double candidate = f.exact(moved);
      if (candidate < value) {
        x = std::move(moved);
        value = candidate;
        improved = true;
      }
    }
  }
  return improved;
}

RunResult run_irls(const EuclideanObjective& f, Eigen::MatrixXd x, const SolveConfig& config) {
  const double scale = f.scale();
  const double floor_eps = std::max(config.smoothing_epsilon, 1e-15 * scale);
  const double stall = config.tolerance * scale;
  double eps = std::max(1e-3 * scale, floor_eps);

  RunResult best{x, f.exact(x), false, 0};
  double current = f.smoothed(x, eps);
  std::size_t it = 0;
  while (it < config.max_iterations) {
    ++it;
    Eigen::MatrixXd next = f.step(x, eps);
    if (!next.allFinite()) break;
    const double value = f.smoothed(next, eps);
    const double gain = current - value;
    x = std::move(next);
    current = value;
    const double exact = f.exact(x);
    if (exact < best.value) {
      best.value = exact;
      best.steiner = x;
    }
    if ((it % 25 == 0 || gain < stall) && vertex_moves(f, x)) {
      current = f.smoothed(x, eps);
      const double moved = f.exact(x);
      if (moved < best.value) {
        best.value = moved;
        best.steiner = x;
      }
      continue;
    }
    if (gain < stall) {
      if (eps <= floor_eps) {
        best.converged = true;
        break;
      }
      eps = std::max(eps * 0.1, floor_eps);
      current = f.smoothed(x, eps);
    }
  }
  best.iterations = it;
  return best;
}

// Damped Newton on the smoothed objective, with eps shrinking by 100 per
// stage. IRLS alone stalls in narrow valleys (clusters of coincident points
// drifting together), where the true Hessian moves much faster.
void newton_polish(const EuclideanObjective& f, RunResult& r, const SolveConfig& config) {
  const double scale = f.scale();
  const auto k = static_cast<Eigen::Index>(f.steiner_count());
  const int dim = static_cast<int>(r.steiner.cols());
  const Eigen::Index nvar = k * dim;
  if (nvar == 0) return;
  const std::size_t t = f.terminal_count();
  Eigen::MatrixXd x = r.steiner;

  auto index = [&](std::size_t v, int d) { return static_cast<Eigen::Index>(v - t) * dim + d; };
  const double floor_eps = std::max(config.smoothing_epsilon, 1e-13 * scale);
  for (double eps = 1e-4 * scale;; eps = std::max(eps * 0.01, floor_eps)) {
    for (int it = 0; it < 60; ++it) {
      Eigen::VectorXd g = Eigen::VectorXd::Zero(nvar);
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(nvar, nvar);
      for (const auto& e : f.arcs()) {
        const Eigen::RowVectorXd diff = f.position(x, e.from) - f.position(x, e.to);
        const double phi = std::sqrt(diff.squaredNorm() + eps * eps);
        const Eigen::MatrixXd block =
            (Eigen::MatrixXd::Identity(dim, dim) - diff.transpose() * diff / (phi * phi)) / phi;
        const bool su = e.from >= t, sv = e.to >= t;
        for (int a = 0; a < dim; ++a) {
          if (su) g(index(e.from, a)) += diff(a) / phi;
          if (sv) g(index(e.to, a)) -= diff(a) / phi;
          for (int b = 0; b < dim; ++b) {
            if (su) h(index(e.from, a), index(e.from, b)) += block(a, b);
            if (sv) h(index(e.to, a), index(e.to, b)) += block(a, b);
            if (su && sv) {
              h(index(e.from, a), index(e.to, b)) -= block(a, b);
              h(index(e.to, a), index(e.from, b)) -= block(a, b);
            }
          }
        }
      }
      Eigen::VectorXd dir = -h.ldlt().solve(g);
      if (!dir.allFinite() || dir.dot(g) >= 0) dir = -g;
      const double slope = dir.dot(g);
      if (-slope < 1e-30 * scale) break;
      const double base = f.smoothed(x, eps);
      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 50; ++ls, step *= 0.5) {
        Eigen::MatrixXd trial = x;
        for (Eigen::Index i = 0; i < k; ++i)
          for (int d = 0; d < dim; ++d) trial(i, d) += step * dir(i * dim + d);
        if (f.smoothed(trial, eps) <= base + 1e-4 * step * slope) {
          x = std::move(trial);
          moved = true;
          break;
        }
      }
      if (!moved) break;
      const double exact = f.exact(x);
      if (exact < r.value) {
        r.value = exact;
        r.steiner = x;
      }
      if (-slope < 1e-20 * scale) break;
    }
    if (vertex_moves(f, x)) {
      const double exact = f.exact(x);
      if (exact < r.value) {
        r.value = exact;
        r.steiner = x;
      }
    }
    if (eps <= floor_eps) break;
  }
}

// Moves Steiner points exactly onto nearby vertices whenever that does not
// increase the exact length; IRLS only approaches such optima at rate O(eps).
void snap(const EuclideanObjective& f, RunResult& r) {
  const double radius = 1e-5 * f.scale();
  const std::size_t t = f.terminal_count();
  const std::size_t k = f.steiner_count();
  bool changed = true;
  for (std::size_t pass = 0; changed && pass < 2 * (k + 1); ++pass) {
    changed = false;
    for (std::size_t i = 0; i < k; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      for (std::size_t v = 0; v < t + k; ++v) {
        if (v == t + i) continue;
        const Eigen::RowVectorXd target = f.position(r.steiner, v);
        const double gap = (r.steiner.row(row) - target).norm();
        if (gap == 0.0 || gap > radius) continue;
        Eigen::MatrixXd moved = r.steiner;
        moved.row(row) = target;
        const double value = f.exact(moved);
        if (value <= r.value) {
          r.steiner = std::move(moved);
          r.value = value;
          changed = true;
        }
      }
    }
  }
}

std::optional<Placement> place_euclidean(const Topology& topology, const Instance& instance,
                                         const TerminalSetup& setup, const SolveConfig& config,
                                         const std::vector<Coordinates>* initial) {
  const int dim = instance.space->dimension();
  std::vector<Coordinates> terminals;
  for (const auto& v : setup.vertices) terminals.push_back(std::get<Coordinates>(v.location));
  const EuclideanObjective f(topology, terminals, dim);
  const auto k = static_cast<Eigen::Index>(topology.steiner_count);

  RunResult best;
  if (k == 0) {
    best = RunResult{Eigen::MatrixXd(0, dim), f.exact(Eigen::MatrixXd(0, dim)), true, 0};
  } else {
    Eigen::MatrixXd lo = f.terminals().colwise().minCoeff();
    Eigen::MatrixXd hi = f.terminals().colwise().maxCoeff();
    std::mt19937_64 rng(config.seed);
    const std::size_t starts = std::max<std::size_t>(config.restarts, 1);
    for (std::size_t r = 0; r < starts; ++r) {
      Eigen::MatrixXd x0(k, dim);
      if (r == 0 && initial) {
        if (initial->size() != topology.steiner_count) throw PreconditionError("initial placement size mismatch");
        for (Eigen::Index i = 0; i < k; ++i)
          for (int d = 0; d < dim; ++d) x0(i, d) = (*initial)[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
      } else if (r == 0) {
        x0 = f.step(Eigen::MatrixXd::Zero(k, dim), -1.0);
      } else {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (Eigen::Index i = 0; i < k; ++i)
          for (int d = 0; d < dim; ++d) x0(i, d) = lo(0, d) + unit(rng) * (hi(0, d) - lo(0, d));
      }
      auto run = run_irls(f, std::move(x0), config);
      newton_polish(f, run, config);
      snap(f, run);
      if (run.value < best.value) best = std::move(run);
    }
  }

  std::vector<Point> locations;
  for (Eigen::Index i = 0; i < k; ++i) {
    Coordinates c(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) c[static_cast<std::size_t>(d)] = best.steiner(i, d);
    locations.emplace_back(std::move(c));
  }
  auto net = located_network(topology, instance, setup, locations, numbered_steiner_ids(topology.steiner_count));
  const double len = length(net);
  return Placement{std::move(net), len, best.converged, best.iterations};
}

// L1 length separates by coordinate. In one coordinate the cost is the
// integral over thresholds of the number of edges crossing the threshold, so
// the optimum takes, for each gap between consecutive terminal values, the
// inclusion-minimal minimum cut of the Steiner vertices; those cuts are nested.
std::optional<Placement> place_rectilinear(const Topology& topology, const Instance& instance,
                                           const TerminalSetup& setup) {
  const int dim = instance.space->dimension();
  const std::size_t t = topology.terminal_count;
  const std::size_t k = topology.steiner_count;
  if (k > 20) throw BudgetExceeded("rectilinear placement supports at most 20 Steiner points");
  std::vector<Coordinates> steiner(k, Coordinates(static_cast<std::size_t>(dim), 0.0));

  for (int d = 0; d < dim; ++d) {
    const auto du = static_cast<std::size_t>(d);
    std::vector<double> values;
    for (std::size_t i = 0; i < t; ++i) values.push_back(std::get<Coordinates>(setup.vertices[i].location)[du]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (auto& c : steiner) c[du] = values.front();

    for (std::size_t g = 0; g + 1 < values.size(); ++g) {
      const double high = values[g + 1];
      std::size_t best_cost = std::numeric_limits<std::size_t>::max();
      std::uint32_t common = 0;
      for (std::uint32_t subset = 0; subset < (std::uint32_t{1} << k); ++subset) {
        auto upper = [&](std::size_t v) {
          if (v < t) return std::get<Coordinates>(setup.vertices[v].location)[du] >= high;
          return ((subset >> (v - t)) & 1U) != 0;
        };
        std::size_t cost = 0;
        for (const auto& e : topology.arcs) cost += upper(e.from) != upper(e.to) ? 1 : 0;
        if (cost < best_cost) {
          best_cost = cost;
          common = subset;
        } else if (cost == best_cost) {
          common &= subset;
        }
      }
      for (std::size_t s = 0; s < k; ++s)
        if (common >> s & 1U) steiner[s][du] = high;
    }
  }

  std::vector<Point> locations(steiner.begin(), steiner.end());
  auto net = located_network(topology, instance, setup, locations, numbered_steiner_ids(k));
  const double len = length(net);
  return Placement{std::move(net), len, true, 0};
}

std::optional<Placement> place_finite(const Topology& topology, const Instance& instance,
                                      const TerminalSetup& setup) {
  const auto& space = *instance.space;
  const std::size_t t = topology.terminal_count;
  const std::size_t k = topology.steiner_count;
  std::vector<bool> occupied(space.point_count(), false);
  for (const auto& v : setup.vertices) occupied[std::get<PointId>(v.location).index] = true;
  std::vector<std::size_t> candidates;
  for (auto p : candidate_steiner_locations(space).points)
    if (!occupied[p]) candidates.push_back(p);
  if (candidates.size() < k) return std::nullopt;

  auto point_of = [&](std::size_t v, const std::vector<std::size_t>& chosen) {
    return v < t ? std::get<PointId>(setup.vertices[v].location).index : chosen[v - t];
  };
  const bool ambient = space.mode() == SpaceMode::ambient_digraph;

  std::vector<std::size_t> chosen(k);
  std::vector<bool> used(candidates.size(), false);
  std::vector<std::size_t> best_choice;
  double best = kInf;

  // Injective assignments in lexicographic order; the first minimum wins.
  auto evaluate = [&]() {
    double total = 0.0;
    for (const auto& e : topology.arcs) {
      const auto u = point_of(e.from, chosen);
      const auto v = point_of(e.to, chosen);
      if (ambient) {
        auto w = space.arc_weight(u, v);
        if (!w) return;
        total += *w;
      } else {
        total += space.distance_matrix()[u][v];
      }
    }
    if (total < best) {
      best = total;
      best_choice = chosen;
    }
  };
  auto recurse = [&](auto&& self, std::size_t slot) -> void {
    if (slot == k) {
      evaluate();
      return;
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (used[c]) continue;
      used[c] = true;
      chosen[slot] = candidates[c];
      self(self, slot + 1);
      used[c] = false;
    }
  };
  recurse(recurse, 0);
  if (best == kInf) return std::nullopt;

  std::vector<Point> locations;
  std::vector<std::string> ids;
  for (auto p : best_choice) {
    locations.emplace_back(PointId{p});
    ids.push_back(space.labels()[p]);
  }
  auto net = located_network(topology, instance, setup, locations, ids);
  const double len = length(net);
  return Placement{std::move(net), len, true, 0};
}

}  // namespace

std::optional<Placement> optimize_positions(const Topology& topology, const Instance& instance,
                                            const SolveConfig& config, const std::vector<Coordinates>* initial) {
  validate(config);
  const auto setup = terminal_setup(instance, effective_variant(instance, config));
  if (topology.terminal_count != setup.layout.terminals)
    throw PreconditionError("topology terminal count does not match the instance");
  switch (instance.space->mode()) {
    case SpaceMode::euclidean:
      return place_euclidean(topology, instance, setup, config, initial);
    case SpaceMode::rectilinear:
      return place_rectilinear(topology, instance, setup);
    default:
      return place_finite(topology, instance, setup);
  }
}

}  // namespace dsn
