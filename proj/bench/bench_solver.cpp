// Serial vs OpenMP topology evaluation on the same instances. Results must
// be byte-identical; timings are printed per case. Enumerated topologies
// are cached process-wide, so each case is solved once before timing.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "dsn/generate.hpp"
#include "dsn/io.hpp"
#include "dsn/solver.hpp"

using namespace dsn;

namespace {

struct Case {
  std::string name;
  Instance instance;
  std::size_t max_steiner;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::stoi(argv[1]) : 1;
  std::vector<Case> cases;
  for (std::uint64_t s = 0; s < 3; ++s) {
    cases.push_back({"euclidean 2x2 seed " + std::to_string(s), random_euclidean_instance(s, 2, 2), 2});
    cases.push_back({"finite 7pt 2x2 seed " + std::to_string(s), random_finite_instance(s, 7, 2, 2), 3});
  }
  cases.push_back({"euclidean 1x3", random_euclidean_instance(11, 1, 3), 2});

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %12s %12s %8s %s\n", "case", "serial [s]", "parallel [s]", "speedup", "match");
  bool all_match = true;
  for (const auto& c : cases) {
    SolveConfig config;
    config.max_steiner = c.max_steiner;
    double t_serial = 0, t_parallel = 0;
    std::string serial_out, parallel_out;
    (void)solve(c.instance, config);  // fills the topology cache for both runs
    for (int r = 0; r < reps; ++r) {
      config.parallel = false;
      auto start = std::chrono::steady_clock::now();
      auto a = solve(c.instance, config);
      t_serial += seconds_since(start);
      serial_out = canonical_dump(network_to_json(a.network));

      config.parallel = true;
      start = std::chrono::steady_clock::now();
      auto b = solve(c.instance, config);
      t_parallel += seconds_since(start);
      parallel_out = canonical_dump(network_to_json(b.network));
    }
    const bool match = serial_out == parallel_out;
    all_match = all_match && match;
    std::printf("%-28s %12.4f %12.4f %8.2f %s\n", c.name.c_str(), t_serial / reps, t_parallel / reps,
                t_parallel > 0 ? t_serial / t_parallel : 0.0, match ? "yes" : "NO");
  }
  return all_match ? 0 : 1;
}
