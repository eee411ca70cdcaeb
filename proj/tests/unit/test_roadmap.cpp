#include <random>

#include "doctest.h"
#include "hardball/errors.hpp"
#include "hardball/roadmap.hpp"
#include "hardball/taut.hpp"

using namespace hardball;

namespace {

const BoxDomain kBox({1.0, 2.0});
const BoxDomain kUnit({1.0, 1.0});

}  // namespace

TEST_CASE("sampling examples") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto c = sample_configuration(kUnit, 1, 0.4, rng);
    REQUIRE(c);
    CHECK((*c)(0, 0) >= 0.4);
    CHECK((*c)(0, 0) <= 0.6);
    CHECK(tau(kUnit, *c) >= 0.4);
  }
  CHECK_FALSE(sample_configuration(kUnit, 2, 0.6, rng));
  auto a = stream_rng(7, 3), b = stream_rng(7, 3);
  const auto ca = sample_configuration(kBox, 2, 0.1, a);
  const auto cb = sample_configuration(kBox, 2, 0.1, b);
  REQUIRE(ca);
  CHECK(*ca == *cb);
  CHECK(in_conf(kBox, *ca, Radius(0.1)));
  auto c = stream_rng(7, 4);
  CHECK_FALSE(*sample_configuration(kBox, 2, 0.1, c) == *ca);
}

TEST_CASE("local planner examples") {
  const auto p = Configuration::from_points({{0.3, 0.4}, {0.7, 1.6}});
  CHECK(local_plan(kBox, p, p, 0.26, 1e-3));
  CHECK(local_plan(kUnit, Configuration::from_points({{0.25, 0.3}}), Configuration::from_points({{0.7, 0.75}}),
                   0.2, 1e-3));
  // Label-swapped vertical stackings: the midpoint puts both balls at the same spot.
  const auto lo_hi = Configuration::from_points({{0.5, 0.5}, {0.5, 1.5}});
  const auto hi_lo = Configuration::from_points({{0.5, 1.5}, {0.5, 0.5}});
  CHECK_FALSE(local_plan(kBox, lo_hi, hi_lo, 0.26, 1e-3));
  // Brute-force probe agrees.
  bool dips = false;
  for (int k = 0; k <= 1000; ++k) {
    const double s = k / 1000.0;
    auto c = lo_hi;
    for (std::size_t q = 0; q < c.flat().size(); ++q) c.flat()[q] += s * (hi_lo.flat()[q] - lo_hi.flat()[q]);
    dips = dips || tau(kBox, c) < 0.26;
  }
  CHECK(dips);
}

TEST_CASE("single ball space is connected") {
  const auto r = connectivity_experiment(kUnit, 1, 0.3, 100, 5);
  CHECK(r.components == 1);
  CHECK(r.attempted == 100);
}

TEST_CASE("roadmap determinism and thread independence") {
  RoadmapOptions one, four;
  four.threads = 4;
  const auto a = connectivity_experiment(kBox, 2, 0.2, 120, 11, one);
  const auto b = connectivity_experiment(kBox, 2, 0.2, 120, 11, four);
  CHECK(a.components == b.components);
  CHECK(a.roadmap.edges == b.roadmap.edges);
  CHECK(a.roadmap.nodes == b.roadmap.nodes);
  for (const auto& node : a.roadmap.nodes) CHECK(in_conf(kBox, node, Radius(0.2)));
}

TEST_CASE("edges revalidate at doubled resolution") {
  const auto r = connectivity_experiment(kBox, 2, 0.2, 150, 3);
  const auto& m = r.roadmap;
  for (std::size_t e = 0; e < m.edges.size(); e += 20) {
    const auto [i, j] = m.edges[e];
    CHECK(local_plan(kBox, m.nodes[i], m.nodes[j], 0.2, 0.5e-3));
  }
}

TEST_CASE("superlevel filtration refines components") {
  std::mt19937_64 rng(21);
  std::vector<Configuration> pool;
  while (pool.size() < 160)
    if (auto c = sample_configuration(kBox, 2, 0.1, rng)) pool.push_back(*c);
  RoadmapOptions opts;
  opts.neighbors = pool.size();  // complete candidate graph: edge sets are nested
  std::vector<std::size_t> previous_label;
  std::vector<std::size_t> previous_index;
  for (double r : {0.1, 0.2, 0.23, 0.26}) {
    std::vector<Configuration> kept;
    std::vector<std::size_t> index;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (tau(kBox, pool[i]) >= r) {
        kept.push_back(pool[i]);
        index.push_back(i);
      }
    const auto m = build_roadmap(kBox, kept, r, opts);
    // Nodes connected at the larger radius were connected at the smaller one.
    if (!previous_index.empty()) {
      std::vector<std::size_t> prev_of(pool.size(), SIZE_MAX);
      for (std::size_t k = 0; k < previous_index.size(); ++k) prev_of[previous_index[k]] = previous_label[k];
      for (std::size_t a = 0; a < kept.size(); ++a)
        for (std::size_t b = a + 1; b < kept.size(); ++b)
          if (m.component[a] == m.component[b]) CHECK(prev_of[index[a]] == prev_of[index[b]]);
    }
    previous_label = m.component;
    previous_index = index;
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(connectivity_experiment(kBox, 2, 0.1, 1, 1), ParameterError);
  CHECK_THROWS_AS(connectivity_experiment(kUnit, 2, 0.6, 10, 1), InsufficientDataError);
  CHECK_THROWS_AS(build_roadmap(kUnit, {Configuration::from_points({{0.1, 0.5}})}, 0.3), PreconditionError);
}
