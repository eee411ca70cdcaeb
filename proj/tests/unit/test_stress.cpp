#include <cmath>
#include <random>

#include "doctest.h"
#include "hardball/errors.hpp"
#include "hardball/stress.hpp"
#include "oracles.hpp"

using namespace hardball;

namespace {

const BoxDomain kBox({1.0, 2.0});
const BoxDomain kUnit({1.0, 1.0});
const Configuration kChain = Configuration::from_points({{0.25, 1.0}, {0.75, 1.0}});

double weight_of(const BalanceCertificate& b, const Constraint& c) {
  for (std::size_t k = 0; k < b.constraints.size(); ++k)
    if (b.constraints[k].same_parameter(c)) return b.weights[k];
  return 0.0;
}

std::vector<std::vector<double>> gradients(const ActiveSet& s, const Configuration& c) {
  std::vector<std::vector<double>> g;
  for (const auto& k : s.constraints) g.push_back(constraint_gradient(k, c));
  return g;
}

// Configurations with many simultaneous contacts: points on a coarse lattice.
Configuration lattice_config(const BoxDomain& box, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Configuration c(n, box.dim());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t m = 0; m < box.dim(); ++m) {
        const int cells = static_cast<int>(std::round(box.length(m) * 4));
        c(i, m) = std::uniform_int_distribution<int>(1, cells - 1)(rng) * 0.25;
      }
    if (min_gap(c) > 0) return c;
  }
}

}  // namespace

TEST_CASE("ascent direction examples") {
  SUBCASE("single active wall") {
    const auto a = ascent_direction(kUnit, Configuration::from_points({{0.3, 0.5}}), 1e-9);
    REQUIRE(a);
    CHECK(a->direction[0] == doctest::Approx(1.0));
    CHECK(a->direction[1] == doctest::Approx(0.0));
    CHECK(a->margin == doctest::Approx(1.0));
  }
  SUBCASE("chain has an empty cone") { CHECK_FALSE(ascent_direction(kBox, kChain, 1e-9)); }
  SUBCASE("isolated pair spreads apart") {
    const auto a = ascent_direction(kUnit, Configuration::from_points({{0.3, 0.5}, {0.7, 0.5}}), 1e-9);
    REQUIRE(a);
    REQUIRE(a->constraints.size() == 1);
    // max (v2x - v1x)/2 over |v|_inf <= 1 is 1, at v = (-1, 0, 1, 0).
    CHECK(a->margin == doctest::Approx(1.0));
    CHECK(a->direction[0] == doctest::Approx(-1.0));
    CHECK(a->direction[2] == doctest::Approx(1.0));
    CHECK(a->direction[1] == doctest::Approx(0.0));
    CHECK(a->direction[3] == doctest::Approx(0.0));
  }
}

TEST_CASE("balance weights examples") {
  SUBCASE("chain weights are 1/4, 1/2, 1/4") {
    const auto b = balance_weights(kBox, kChain, 1e-9);
    REQUIRE(b);
    CHECK(b->residual == doctest::Approx(0.0));
    CHECK(weight_of(*b, Constraint::wall(0, Face{0, Side::Lo}, {}, 0)) == doctest::Approx(0.25));
    CHECK(weight_of(*b, Constraint::pair(0, 1, 0)) == doctest::Approx(0.5));
    CHECK(weight_of(*b, Constraint::wall(1, Face{0, Side::Hi}, {}, 0)) == doctest::Approx(0.25));
  }
  SUBCASE("single gradient cannot vanish") {
    CHECK_FALSE(balance_weights(kUnit, Configuration::from_points({{0.3, 0.5}}), 1e-9));
  }
  SUBCASE("center point balances between opposite walls") {
    const auto b = balance_weights(kUnit, Configuration::from_points({{0.5, 0.5}}), 1e-9);
    REQUIRE(b);
    CHECK(b->residual == doctest::Approx(0.0));
    double sum = 0.0;
    for (double w : b->weights) sum += w;
    CHECK(sum == doctest::Approx(1.0));
    // Opposite walls must carry equal weight; the uniform vector is one such solution.
    auto w = [&](std::size_t axis, Side s) { return weight_of(*b, Constraint::wall(0, Face{axis, s}, {}, 0)); };
    CHECK(w(0, Side::Lo) == doctest::Approx(w(0, Side::Hi)));
    CHECK(w(1, Side::Lo) == doctest::Approx(w(1, Side::Hi)));
  }
}

TEST_CASE("stress graph examples") {
  SUBCASE("chain graph") {
    const auto b = balance_weights(kBox, kChain, 1e-9);
    REQUIRE(b);
    const auto g = build_stress_graph(kBox, kChain, *b);
    CHECK(g.num_internal() == 2);
    CHECK(g.vertices.size() == 4);
    CHECK(g.edges.size() == 3);
    CHECK(g.components.size() == 1);
    CHECK(g.nontrivial_components() == 1);
    CHECK_FALSE(g.trivial());
    bool lo = false, hi = false;
    for (const auto& v : g.vertices)
      if (v.kind == StressVertex::Kind::Boundary) {
        lo = lo || (v.position == std::vector<double>{0.0, 1.0});
        hi = hi || (v.position == std::vector<double>{1.0, 1.0});
      }
    CHECK(lo);
    CHECK(hi);
    const auto rep = check_balance(g, 1e-9);
    CHECK(rep.balanced);
    for (double f : rep.internal_net_force) CHECK(f == doctest::Approx(0.0));
    const auto hull = hull_checks(g, Tolerances::for_domain(kBox));
    CHECK(hull.ok());

    auto perturbed = g;
    for (auto& e : perturbed.edges)
      if (e.constraint.kind == ConstraintKind::Pair) e.weight += 0.1;
    const auto bad = check_balance(perturbed, 1e-9);
    CHECK_FALSE(bad.balanced);
    CHECK(bad.internal_net_force[0] > 1e-3);
    CHECK(bad.internal_net_force[1] > 1e-3);
    CHECK_THROWS_AS(hull_checks(perturbed, Tolerances::for_domain(kBox)), PreconditionError);

    // Homogeneity: scaling every weight scales the residuals.
    auto scaled = perturbed;
    for (auto& e : scaled.edges) e.weight *= 3.0;
    const auto rs = check_balance(scaled, 1e-9);
    for (std::size_t k = 0; k < rs.internal_net_force.size(); ++k)
      CHECK(rs.internal_net_force[k] == doctest::Approx(3.0 * bad.internal_net_force[k]));
  }
  SUBCASE("center point graph") {
    const auto c = Configuration::from_points({{0.5, 0.5}});
    const auto b = balance_weights(kUnit, c, 1e-9);
    REQUIRE(b);
    // Build from the uniform certificate to match the stated example.
    BalanceCertificate uniform = *b;
    uniform.constraints = active_set(kUnit, c, 1e-9).constraints;
    uniform.weights.assign(4, 0.25);
    const auto g = build_stress_graph(kUnit, c, uniform);
    CHECK(g.num_internal() == 1);
    CHECK(g.vertices.size() == 5);
    CHECK(g.edges.size() == 4);
    CHECK(g.components.size() == 1);
    CHECK(check_balance(g, 1e-9).balanced);
    CHECK(hull_checks(g, Tolerances::for_domain(kUnit)).ok());
  }
  SUBCASE("isolated point is a trivial component") {
    BoxDomain box({1.0, 3.0});
    const auto c = Configuration::from_points({{0.25, 0.5}, {0.75, 0.5}, {0.5, 2.0}});
    BalanceCertificate cert;
    cert.constraints = {Constraint::wall(0, Face{0, Side::Lo}, {0.0, 0.5}, 0.25),
                        Constraint::pair(0, 1, 0.25),
                        Constraint::wall(1, Face{0, Side::Hi}, {1.0, 0.5}, 0.25)};
    cert.weights = {0.25, 0.5, 0.25};
    const auto g = build_stress_graph(box, c, cert);
    CHECK(g.components.size() == 2);
    CHECK(g.nontrivial_components() == 1);
    bool found = false;
    for (std::size_t k = 0; k < g.components.size(); ++k)
      if (g.components[k] == std::vector<std::size_t>{2}) {
        found = true;
        CHECK(g.component_trivial[k]);
      }
    CHECK(found);
  }
  SUBCASE("empty graph") {
    StressGraph g;
    g.dim = 2;
    const auto rep = check_balance(g, 1e-9);
    CHECK(rep.balanced);
    CHECK(rep.trivial);
  }
}

TEST_CASE("classify examples") {
  const auto chain = classify(kBox, kChain);
  REQUIRE(is_balanced(chain));
  CHECK(std::get<Balanced>(chain).nontrivial);
  CHECK_FALSE(is_balanced(classify(kUnit, Configuration::from_points({{0.3, 0.5}}))));
  // Pair and the two axis-0 walls tie at 0.25; the axis-1 walls sit at 0.5.
  // The three gradients are the chain's, so the result is Balanced.
  const auto tie = classify(kUnit, Configuration::from_points({{0.25, 0.5}, {0.75, 0.5}}));
  CHECK(is_balanced(tie));
  auto loose = Tolerances::for_domain(kUnit);
  loose.margin_tol = 10.0;
  loose.balance_tol = 0.0;
  CHECK_THROWS_AS(classify(kUnit, Configuration::from_points({{0.3, 0.5}}), 1e-9, loose), AmbiguityError);
}

TEST_CASE("Farkas exclusivity against the min-norm-point oracle") {
  std::mt19937_64 rng(4242);
  int decided = 0;
  for (const auto& box : {BoxDomain({1.0, 2.0}), BoxDomain({1.0, 1.0}), BoxDomain({1.0, 1.0, 1.5})}) {
    for (std::size_t n = 1; n <= 4; ++n)
      for (int t = 0; t < 40; ++t) {
        const auto c = (t % 2 == 0) ? lattice_config(box, n, rng) : oracle::uniform_config(box, n, rng);
        const auto tol = Tolerances::for_domain(box);
        const auto s = active_set(box, c, tol.eps_act);
        const double dist0 = oracle::min_norm_point(gradients(s, c));
        if (dist0 > 1e-3 || dist0 < 1e-9) ++decided;
        Classification cls;
        try {
          cls = classify(box, c, tol.eps_act, tol);
        } catch (const AmbiguityError&) {
          CHECK(dist0 < 1e-3);  // only near the boundary of the alternative
          CHECK(dist0 > 1e-9);
          continue;
        }
        if (dist0 > 1e-3) CHECK_FALSE(is_balanced(cls));
        if (dist0 < 1e-9) CHECK(is_balanced(cls));
        if (auto* r = std::get_if<Regular>(&cls)) {
          // Independent validation against the full active set.
          for (const auto& k : s.constraints) {
            const auto g = constraint_gradient(k, c);
            double dot = 0.0;
            for (std::size_t q = 0; q < g.size(); ++q) dot += g[q] * r->certificate.direction[q];
            CHECK(dot >= r->certificate.margin - 1e-12);
          }
          for (double v : r->certificate.direction) CHECK(std::abs(v) <= 1.0 + 1e-12);
        } else {
          const auto& b = std::get<Balanced>(cls);
          CHECK(b.certificate.residual <= tol.balance_tol);
          for (double w : b.certificate.weights) CHECK(w >= tol.weight_floor);
          CHECK(check_balance(b.graph, tol.balance_tol).balanced);
          CHECK(hull_checks(b.graph, tol).ok());
        }
      }
  }
  CHECK(decided > 400);
}

TEST_CASE("hull residual") {
  const std::vector<std::vector<double>> square = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  const double inside[] = {0.3, 0.6};
  const double outside[] = {1.5, 0.5};
  CHECK(hull_residual(inside, square) == doctest::Approx(0.0));
  CHECK(hull_residual(outside, square) > 0.1);
}
