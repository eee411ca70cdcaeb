#include "hardball/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hardball/errors.hpp"
#include "hardball/parallel.hpp"
#include "hardball/taut.hpp"

namespace hardball {

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

std::optional<Configuration> sample_configuration(const BoxDomain& domain, std::size_t n, double r,
                                                  std::mt19937_64& rng, std::size_t max_retries) {
  if (!(r >= 0.0)) throw ParameterError("radius must be nonnegative");
  if (n == 0) throw ParameterError("need at least one ball");
  const std::size_t d = domain.dim();
  for (std::size_t m = 0; m < d; ++m)
    if (domain.length(m) < 2.0 * r) return std::nullopt;
  std::vector<std::uniform_real_distribution<double>> coord;
  for (std::size_t m = 0; m < d; ++m) coord.emplace_back(r, domain.length(m) - r);

  Configuration c(n, d);
  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t m = 0; m < d; ++m) c(i, m) = coord[m](rng);
    if (min_gap(c) >= r) return c;
  }
  return std::nullopt;
}

namespace {

Configuration midpoint(const Configuration& a, const Configuration& b) {
  Configuration m = a;
  for (std::size_t k = 0; k < m.flat().size(); ++k) m.flat()[k] = 0.5 * (a.flat()[k] + b.flat()[k]);
  return m;
}

double max_norm_distance(const Configuration& a, const Configuration& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.flat().size(); ++k) s = std::max(s, std::abs(a.flat()[k] - b.flat()[k]));
  return s;
}

bool segment_clear(const BoxDomain& domain, const Configuration& a, const Configuration& b,
                   double r, double resolution) {
  if (max_norm_distance(a, b) <= resolution) return true;
  const Configuration m = midpoint(a, b);
  if (tau_signed(domain, m) < r - domain.abs_tol()) return false;
  return segment_clear(domain, a, m, r, resolution) && segment_clear(domain, m, b, r, resolution);
}

double euclid(const Configuration& a, const Configuration& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.flat().size(); ++k) s += std::pow(a.flat()[k] - b.flat()[k], 2);
  return std::sqrt(s);
}

}  // namespace

bool local_plan(const BoxDomain& domain, const Configuration& c1, const Configuration& c2, double r,
                double resolution) {
  if (!(resolution > 0.0)) throw ParameterError("probe resolution must be positive");
  if (c1.size() != c2.size() || c1.dim() != c2.dim())
    throw ParameterError("local_plan endpoints have different shapes");
  if (tau_signed(domain, c1) < r - domain.abs_tol() || tau_signed(domain, c2) < r - domain.abs_tol())
    return false;
  return segment_clear(domain, c1, c2, r, resolution);
}

Roadmap build_roadmap(const BoxDomain& domain, std::vector<Configuration> nodes, double r,
                      const RoadmapOptions& opts) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!in_conf(domain, nodes[i], Radius(r)))
      throw PreconditionError("roadmap node " + std::to_string(i + 1) + " is not in Conf(n, r)");
  const std::size_t N = nodes.size();
  const double resolution = opts.resolution * domain.shortest_side();

  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < N; ++i) {
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(N);
    for (std::size_t j = 0; j < N; ++j)
      if (j != i) dist.emplace_back(euclid(nodes[i], nodes[j]), j);
    const std::size_t k = std::min(opts.neighbors, dist.size());
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    for (std::size_t q = 0; q < k; ++q)
      candidates.emplace_back(std::min(i, dist[q].second), std::max(i, dist[q].second));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<char> ok(candidates.size(), 0);
  parallel_for(candidates.size(), opts.threads, [&](std::size_t e) {
    const auto [i, j] = candidates[e];
    ok[e] = local_plan(domain, nodes[i], nodes[j], r, resolution) ? 1 : 0;
  });

  Roadmap map;
  std::vector<std::size_t> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < candidates.size(); ++e) {
    if (!ok[e]) continue;
    map.edges.push_back(candidates[e]);
    parent[find(candidates[e].first)] = find(candidates[e].second);
  }
  map.component.assign(N, 0);
  std::vector<std::size_t> label(N, N);
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t root = find(i);
    if (label[root] == N) label[root] = map.component_count++;
    map.component[i] = label[root];
  }
  map.nodes = std::move(nodes);
  return map;
}

ConnectivityResult connectivity_experiment(const BoxDomain& domain, std::size_t n, double r,
                                           std::size_t num_samples, std::uint64_t seed,
                                           const RoadmapOptions& opts) {
  if (num_samples < 2) throw ParameterError("connectivity experiment needs at least 2 samples");
  std::vector<std::optional<Configuration>> drawn(num_samples);
  parallel_for(num_samples, opts.threads, [&](std::size_t i) {
    auto rng = stream_rng(seed, i);
    drawn[i] = sample_configuration(domain, n, r, rng, opts.max_retries);
  });
  std::vector<Configuration> nodes;
  for (auto& c : drawn)
    if (c) nodes.push_back(std::move(*c));
  if (nodes.size() < 2)
    throw InsufficientDataError("fewer than 2 configurations could be sampled at this radius");

  ConnectivityResult out;
  out.attempted = num_samples;
  out.roadmap = build_roadmap(domain, std::move(nodes), r, opts);
  out.components = out.roadmap.component_count;
  return out;
}

}  // namespace hardball
