#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dsn/instance.hpp"

namespace dsn::testing {

inline Instance planar(std::vector<Coordinates> sources, std::vector<Coordinates> sinks,
                       SpaceMode mode = SpaceMode::euclidean) {
  Instance inst;
  inst.space = std::make_shared<Space>(mode == SpaceMode::euclidean ? Space::euclidean(2) : Space::rectilinear(2));
  for (auto& s : sources) inst.sources.emplace_back(s);
  for (auto& s : sinks) inst.sinks.emplace_back(s);
  return inst;
}

inline Instance finite(std::vector<std::string> labels, std::vector<std::vector<double>> matrix,
                       std::vector<std::size_t> sources, std::vector<std::size_t> sinks) {
  Instance inst;
  inst.space = std::make_shared<Space>(Space::explicit_matrix(std::move(labels), std::move(matrix)));
  for (auto s : sources) inst.sources.emplace_back(PointId{s});
  for (auto s : sinks) inst.sinks.emplace_back(PointId{s});
  return inst;
}

}  // namespace dsn::testing
