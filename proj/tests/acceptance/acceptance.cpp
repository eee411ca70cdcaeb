// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hardball/errors.hpp"
#include "hardball/flow.hpp"
#include "hardball/parallel.hpp"
#include "hardball/roadmap.hpp"
#include "hardball/stress.hpp"
#include "hardball/taut.hpp"
#include "hardball/topo.hpp"
#include "hardball/witness.hpp"
#include "oracles.hpp"

using namespace hardball;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// 1. No critical values below L/2n; chains are critical at L/2n.
Outcome threshold_formula() {
  std::size_t regular = 0, balanced = 0, ambiguous = 0, total = 0;
  double worst_chain = 0.0;
  bool chains_ok = true;
  for (const auto& lengths : std::vector<std::vector<double>>{{1.0, 2.0}, {1.0, 1.0, 2.0}}) {
    const BoxDomain box(lengths);
    for (std::size_t n = 2; n <= 5; ++n) {
      const double r_star = box.shortest_side() / (2.0 * static_cast<double>(n));
      const auto chain = chain_configuration(box, n, ChainSpec::make(box, n));
      chains_ok = chains_ok && chain.r_star == r_star;
      try {
        const auto cls = classify(box, chain.config);
        if (const auto* b = std::get_if<Balanced>(&cls)) {
          worst_chain = std::max(worst_chain, b->certificate.residual);
          chains_ok = chains_ok && b->nontrivial && b->certificate.residual <= 1e-9;
        } else {
          chains_ok = false;
        }
      } catch (const AmbiguityError&) {
        chains_ok = false;
      }

      // Mostly uniform draws at a random radius below r*, plus configurations
      // flowed up to just under r*, where many constraints are active at once.
      std::mt19937_64 rng(1000 * n + lengths.size());
      std::size_t made = 0;
      while (made < 1000) {
        std::optional<Configuration> c;
        if (made % 4 == 3) {
          auto start = sample_configuration(box, n, 0.0, rng);
          const double target = r_star * std::uniform_real_distribution<double>(0.9, 1.0)(rng) - 2e-6;
          if (start && tau(box, *start) < target) {
            const auto tr = ascend(box, *start, target);
            c = tr.back().config;
          }
        } else {
          const double rho = std::uniform_real_distribution<double>(0.0, r_star)(rng);
          c = sample_configuration(box, n, rho, rng);
        }
        if (!c || !(oracle::tau(lengths, c->to_points()) < r_star - 1e-6)) continue;
        ++made;
        ++total;
        try {
          if (is_balanced(classify(box, *c))) ++balanced;
          else ++regular;
        } catch (const AmbiguityError&) {
          ++ambiguous;
        }
      }
    }
  }
  return {chains_ok && balanced == 0 && ambiguous == 0 && regular == total,
          fmt("chains balanced=%s max_residual=%.1e; %zu configs below r*: regular=%zu balanced=%zu ambiguous=%zu",
              chains_ok ? "yes" : "no", worst_chain, total, regular, balanced, ambiguous)};
}

Configuration lattice_config(const BoxDomain& box, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Configuration c(n, box.dim());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t m = 0; m < box.dim(); ++m) {
        const int cells = static_cast<int>(std::round(box.length(m) * 4));
        c(i, m) = std::uniform_int_distribution<int>(0, cells)(rng) * 0.25;
      }
    if (min_gap(c) > 0) return c;
  }
}

// 2. Exactly one Farkas alternative per configuration.
Outcome farkas_exclusivity() {
  const std::vector<BoxDomain> boxes = {BoxDomain({1.0, 2.0}), BoxDomain({1.0, 1.0}), BoxDomain({1.0, 1.5, 2.0}),
                                        BoxDomain({1.0, 1.0, 1.0})};
  std::mt19937_64 rng(2);
  std::size_t both = 0, neither = 0, bad_cert = 0, oracle_disagree = 0, regular = 0, balanced = 0;
  const std::size_t total = 10000;
  for (std::size_t t = 0; t < total; ++t) {
    const auto& box = boxes[t % boxes.size()];
    const std::size_t n = 1 + (t / boxes.size()) % 5;
    const auto tol = Tolerances::for_domain(box);
    Configuration c;
    const std::size_t kind = t % 10;
    if (kind == 8) {
      const auto spec = ChainSpec::make(box, n);
      c = chain_configuration(box, n, spec).config;
      // Slide the chain transversally; it stays critical.
      for (std::size_t m = 0; m < box.dim(); ++m)
        if (m != spec.axis) {
          const double r = spec.r_star;
          const double y = std::uniform_real_distribution<double>(r, box.length(m) - r)(rng);
          for (std::size_t i = 0; i < n; ++i) c(i, m) = y;
        }
    } else if (kind == 9) {
      c = lattice_config(box, n, rng);
    } else {
      c = oracle::uniform_config(box, n, rng);
    }

    const auto up = ascent_direction(box, c, tol.eps_act, tol);
    const auto bal = balance_weights(box, c, tol.eps_act, tol);
    if (up && bal) ++both;
    if (!up && !bal) ++neither;
    const auto set = active_set(box, c, tol.eps_act);
    if (up) {
      ++regular;
      for (const auto& k : set.constraints)
        if (dot(constraint_gradient(k, c), up->direction) < up->margin - 1e-12) ++bad_cert;
    }
    if (bal) {
      ++balanced;
      std::vector<double> sum(c.flat().size(), 0.0);
      double wsum = 0.0;
      for (std::size_t k = 0; k < bal->constraints.size(); ++k) {
        if (bal->weights[k] < tol.weight_floor) ++bad_cert;
        wsum += bal->weights[k];
        const auto g = constraint_gradient(bal->constraints[k], c);
        for (std::size_t q = 0; q < g.size(); ++q) sum[q] += bal->weights[k] * g[q];
      }
      if (std::sqrt(dot(sum, sum)) > tol.balance_tol || std::abs(wsum - 1.0) > 1e-12) ++bad_cert;
    }
    // Independent geometric oracle on the structured draws.
    if (kind >= 8 && set.constraints.size() > 1) {
      std::vector<std::vector<double>> g;
      for (const auto& k : set.constraints) g.push_back(constraint_gradient(k, c));
      const double dist0 = oracle::min_norm_point(g, 4000);
      if (dist0 > 1e-3 && !up) ++oracle_disagree;
      if (dist0 < 1e-9 && !bal) ++oracle_disagree;
    }
  }
  const double rate = static_cast<double>(neither) / static_cast<double>(total);
  return {both == 0 && bad_cert == 0 && oracle_disagree == 0 && rate <= 1e-3,
          fmt("%zu configs: regular=%zu balanced=%zu both=%zu ambiguous=%zu (rate %.4f%%) bad_certificates=%zu oracle_disagreements=%zu",
              total, regular, balanced, both, neither, 100.0 * rate, bad_cert, oracle_disagree)};
}

bool monotone(const Trajectory& tr) {
  for (std::size_t k = 1; k < tr.samples.size(); ++k)
    if (!(tr.samples[k].tau > tr.samples[k - 1].tau)) return false;
  return true;
}

// 3. Retraction below the first critical value; stalls across it.
Outcome flow_retraction() {
  const BoxDomain box({1.0, 2.0});
  const auto tol = Tolerances::for_domain(box);
  FlowOptions opts;
  opts.threads = default_threads();

  std::vector<Configuration> low;
  for (std::size_t i = 0; low.size() < 500; ++i) {
    auto rng = stream_rng(3, i);
    if (auto c = sample_configuration(box, 2, 0.05, rng)) low.push_back(*c);
  }
  const auto first = retract_level(box, low, 0.05, 0.24, opts);
  std::size_t reached = 0, nonmonotone = 0, escaped = 0;
  for (const auto& tr : first.trajectories) {
    if (tr.status == FlowStatus::ReachedTarget && tr.back().tau >= 0.24) ++reached;
    if (!monotone(tr)) ++nonmonotone;
    for (const auto& s : tr.samples)
      if (oracle::tau(box.lengths(), s.config.to_points()) < 0.05 - box.abs_tol()) ++escaped;
  }

  // Stalls live on the stable set of the chains, which has measure zero;
  // one input in five is drawn from the reflection-symmetric slice y1 = y2
  // that flows into it.
  std::vector<Configuration> mid;
  for (std::size_t i = 0; mid.size() < 500; ++i) {
    auto rng = stream_rng(4, i);
    if (i % 5 == 4) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const double x1 = 0.24 + 0.04 * u(rng);
      const double x2 = x1 + 0.48 + (0.76 - x1 - 0.48) * u(rng);
      const double y = 0.24 + 1.52 * u(rng);
      const auto c = Configuration::from_points({{x1, y}, {x2, y}});
      if (tau(box, c) >= 0.24) mid.push_back(c);
    } else if (auto c = sample_configuration(box, 2, 0.24, rng)) {
      mid.push_back(*c);
    }
  }
  const auto second = retract_level(box, mid, 0.24, 0.26, opts);
  std::size_t stall_balanced = 0, stall_near_chain = 0, nonmonotone2 = 0;
  double worst_distance = 0.0;
  for (const auto& tr : second.trajectories)
    if (!monotone(tr)) ++nonmonotone2;
  for (std::size_t i : second.stalled) {
    const auto& end = second.trajectories[i].back().config;
    try {
      if (is_balanced(classify(box, end, tol.eps_flow, tol))) ++stall_balanced;
    } catch (const AmbiguityError&) {
    }
    const double dist = distance_to_chain_family(box, end);
    worst_distance = std::max(worst_distance, dist);
    if (dist <= 1e-2) ++stall_near_chain;
  }
  const std::size_t stalls = second.stalled.size();
  const bool ok = reached == 500 && nonmonotone == 0 && escaped == 0 && nonmonotone2 == 0 && stalls >= 1 &&
                  stall_balanced == stalls && stall_near_chain == stalls;
  return {ok, fmt("0.05->0.24: reached=%zu/500 nonmonotone=%zu left_M^a=%zu; 0.24->0.26: stalls=%zu balanced=%zu "
                  "near_chain=%zu max_chain_distance=%.1e nonmonotone=%zu",
                  reached, nonmonotone, escaped, stalls, stall_balanced, stall_near_chain, worst_distance,
                  nonmonotone2)};
}

// Product expansion by repeated polynomial multiplication.
std::vector<std::int64_t> expand_product(int n, int d) {
  std::vector<std::int64_t> p{1};
  for (int i = 1; i <= n - 1; ++i) {
    std::vector<std::int64_t> q(p.size() + static_cast<std::size_t>(d - 1), 0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      q[k] += p[k];
      q[k + static_cast<std::size_t>(d - 1)] += i * p[k];
    }
    p = q;
  }
  return p;
}

// 4. Poincare polynomial and the Betti jump.
Outcome poincare_betti() {
  std::size_t mismatches = 0, checked = 0;
  for (int n = 1; n <= 8; ++n)
    for (int d = 2; d <= 4; ++d) {
      ++checked;
      const auto p = poincare_conf(n, d).coefficients;
      if (p != expand_product(n, d) || p != oracle::poincare_by_subsets(n, d)) ++mismatches;
      std::int64_t fact = 1;
      for (int i = 2; i <= n - 1; ++i) fact *= i;
      if (p.back() != fact) ++mismatches;
      if (n >= 2) {
        // (n-1)! H_{n-1} = sum_i (n-1)!/i, each term an integer.
        std::int64_t sub = 0;
        for (int i = 1; i <= n - 1; ++i) sub += fact / i;
        if (p[static_cast<std::size_t>((n - 2) * (d - 1))] != sub) ++mismatches;
      }
    }
  const auto a = betti_across_threshold(2, 2, 1).above;
  const auto b = betti_across_threshold(2, 3, 1).above;
  const auto c = betti_across_threshold(3, 2, 1).above;
  const bool jumps = a[0] == 2 && b[1] == 1 && c[1] == 7;
  return {mismatches == 0 && jumps,
          fmt("%zu (n,d) pairs, mismatches=%zu; beta0(2,2,1)=%lld beta1(2,3,1)=%lld beta1(3,2,1)=%lld", checked,
              mismatches, static_cast<long long>(a[0]), static_cast<long long>(b[1]),
              static_cast<long long>(c[1]))};
}

// 5. Sphere of chains, tangent ranks, and the transversal intersection.
Outcome witness_geometry() {
  const BoxDomain box({1.0, 2.0});
  std::set<int> found;
  std::size_t off = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = sample_S_epsilon(box, 2, 0.01, seed);
    const auto& c = s.config;
    auto near = [&](double y) {
      return std::abs(c(0, 0) - 0.26) <= 1e-8 && std::abs(c(0, 1) - 1.0) <= 1e-8 &&
             std::abs(c(1, 0) - 0.74) <= 1e-8 && std::abs(c(1, 1) - y) <= 1e-8;
    };
    if (near(1.2)) found.insert(1);
    else if (near(0.8)) found.insert(-1);
    else ++off;
  }

  struct Case {
    std::vector<double> lengths;
    std::size_t n;
    double eps;
  };
  std::string ranks;
  bool ranks_ok = true;
  for (const auto& k : std::vector<Case>{{{1.0, 2.0}, 2, 0.01}, {{1.0, 2.0}, 3, 0.02}, {{1.0, 2.0, 2.0}, 2, 0.01}}) {
    const BoxDomain b(k.lengths);
    const std::size_t nd = k.n * b.dim(), expect = nd - k.n - b.dim();
    std::size_t hits = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed)
      if (tangent_rank(b, sample_S_epsilon(b, k.n, k.eps, seed)).dimension == expect) ++hits;
    ranks_ok = ranks_ok && hits >= 990;
    ranks += fmt(" (n=%zu,d=%zu):%zu/1000", k.n, b.dim(), hits);
  }

  bool unique_ok = true;
  std::string inter;
  for (const auto& [n, eps] : std::vector<std::pair<std::size_t, double>>{{2, 0.01}, {3, 0.02}}) {
    try {
      const auto w = intersection_witness(box, n, eps);
      const bool ok = w.transversality_rank == n * box.dim() && w.spread <= 1e-8;
      unique_ok = unique_ok && ok;
      inter += fmt(" n=%zu rank=%zu spread=%.1e", n, w.transversality_rank, w.spread);
    } catch (const Error& e) {
      unique_ok = false;
      inter += fmt(" n=%zu error=%s", n, e.what());
    }
  }
  return {found.size() == 2 && off == 0 && ranks_ok && unique_ok,
          fmt("two-point sphere: found=%zu stray=%zu; tangent dims%s; intersection%s", found.size(), off,
              ranks.c_str(), inter.c_str())};
}

// 6. The chain retraction stays in Conf(n, r).
Outcome chain_retraction() {
  const BoxDomain box({1.0, 2.0});
  const double eps = 0.02;
  std::size_t violations = 0, steps = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = sample_S_epsilon(box, 3, eps, seed);
    const double r = s.r_prime - 2 * eps;
    const auto path = retract_chain(box, s, r, s.r_prime);
    if (path.size() != 129) ++violations;
    for (const auto& c : path) {
      const double t = oracle::tau(box.lengths(), c.to_points());
      worst = std::min(worst, t - r);
      if (t < r - 1e-9) ++violations;
      ++steps;
    }
  }
  return {violations == 0, fmt("200 samples, %zu configurations checked, min(tau - r)=%.3e, violations=%zu", steps,
                               worst, violations)};
}

// 7. Roadmap components against the Betti jump.
Outcome cross_module() {
  const BoxDomain box({1.0, 2.0});
  RoadmapOptions opts;
  opts.threads = default_threads();
  const std::uint64_t seed = 7;
  const auto above = connectivity_experiment(box, 2, 0.26, 500, seed, opts);
  const auto below = connectivity_experiment(box, 2, 0.10, 500, seed, opts);
  const auto beta0 = betti_across_threshold(2, 2, static_cast<std::int64_t>(k_multiplicity(box))).above[0];
  return {static_cast<std::int64_t>(above.components) == beta0 && above.components == 2 && below.components == 1,
          fmt("seed %llu: components(r=0.26)=%zu beta0=%lld components(r=0.10)=%zu",
              static_cast<unsigned long long>(seed), above.components, static_cast<long long>(beta0),
              below.components)};
}

// 8. Analytic gradients against central differences.
Outcome gradient_checks() {
  std::mt19937_64 rng(8);
  const std::vector<BoxDomain> boxes = {BoxDomain({1.0, 2.0}), BoxDomain({1.0, 1.0, 2.0})};
  const double h = 1e-6;
  double worst = 0.0;
  std::size_t checked = 0, failed = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto& box = boxes[t % 2];
    const std::size_t n = 1 + t % 5;
    const auto c = oracle::uniform_config(box, n, rng);
    for (const auto& k : all_constraints(box, c)) {
      const auto g = constraint_gradient(k, c);
      std::vector<double> fd(g.size());
      for (std::size_t q = 0; q < g.size(); ++q) {
        Configuration p = c, m = c;
        p.flat()[q] += h;
        m.flat()[q] -= h;
        fd[q] = (constraint_value(k, box, p) - constraint_value(k, box, m)) / (2 * h);
      }
      std::vector<double> diff(g.size());
      for (std::size_t q = 0; q < g.size(); ++q) diff[q] = fd[q] - g[q];
      const double rel = std::sqrt(dot(diff, diff)) / std::sqrt(dot(g, g));
      worst = std::max(worst, rel);
      ++checked;
      if (rel > 1e-6) ++failed;
    }
  }
  return {failed == 0, fmt("%zu gradients over 1000 configurations, max relative error %.2e, failures=%zu", checked,
                           worst, failed)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget;  // seconds, 0 = none
  };
  const std::vector<Criterion> criteria = {
      {1, "threshold-formula", threshold_formula, 60.0},
      {2, "farkas-exclusivity", farkas_exclusivity, 0.0},
      {3, "flow-retraction", flow_retraction, 0.0},
      {4, "poincare-betti", poincare_betti, 0.0},
      {5, "witness-geometry", witness_geometry, 0.0},
      {6, "chain-retraction", chain_retraction, 0.0},
      {7, "cross-module-connectivity", cross_module, 120.0},
      {8, "gradient-checks", gradient_checks, 0.0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0.0 && secs > c.budget) {
      o.pass = false;
      o.detail += fmt("; over the %.0f s budget", c.budget);
    }
    if (!o.pass) ++failures;
    std::printf("%s %d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures;
}
