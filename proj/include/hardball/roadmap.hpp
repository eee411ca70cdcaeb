#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "hardball/geometry.hpp"

namespace hardball {

struct Roadmap {
  std::vector<Configuration> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> component;  // representative label per node, 0..count-1
  std::size_t component_count = 0;
};

struct RoadmapOptions {
  std::size_t neighbors = 10;
  double resolution = 1e-3;  // fraction of the shortest side
  std::size_t max_retries = 100000;
  std::size_t threads = 1;
};

/// Rejection sampling in the shrunken box [r, L_m - r]^d until tau >= r.
std::optional<Configuration> sample_configuration(const BoxDomain& domain, std::size_t n, double r,
                                                  std::mt19937_64& rng,
                                                  std::size_t max_retries = 100000);

/// True iff the straight segment stays in Conf(n, r), probed by recursive
/// bisection down to `resolution` (absolute length, max-norm).
bool local_plan(const BoxDomain& domain, const Configuration& c1, const Configuration& c2, double r,
                double resolution);

/// k-nearest roadmap over fixed nodes.
Roadmap build_roadmap(const BoxDomain& domain, std::vector<Configuration> nodes, double r,
                      const RoadmapOptions& opts = {});

struct ConnectivityResult {
  std::size_t components = 0;
  std::size_t attempted = 0;
  Roadmap roadmap;
};

ConnectivityResult connectivity_experiment(const BoxDomain& domain, std::size_t n, double r,
                                           std::size_t num_samples, std::uint64_t seed,
                                           const RoadmapOptions& opts = {});

/// Independent RNG stream for task `index` of a run seeded with `seed`.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index);

}  // namespace hardball
