#include "hardball/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "hardball/errors.hpp"
#include "hardball/taut.hpp"

namespace hardball {

namespace {

bool is_permutation_of_n(const std::vector<std::size_t>& p) {
  std::vector<bool> seen(p.size(), false);
  for (std::size_t v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::vector<std::size_t> identity(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// First axis other than the chain axis.
std::size_t transverse_axis(std::size_t /*d*/, std::size_t axis) { return axis == 0 ? 1 : 0; }

std::vector<double> face_anchor(const BoxDomain& domain, std::size_t axis, double r) {
  std::vector<double> x(domain.dim());
  for (std::size_t m = 0; m < domain.dim(); ++m) x[m] = 0.5 * domain.length(m);
  x[axis] = r;
  return x;
}

void check_epsilon(const BoxDomain& domain, std::size_t n, double epsilon) {
  if (n < 2) throw ParameterError("sphere of chains needs n >= 2");
  if (domain.dim() < 2) throw ParameterError("sphere of chains needs d >= 2");
  const double limit = epsilon_limit(domain, n);
  if (!(epsilon > 0.0 && epsilon < limit))
    throw ParameterError("epsilon must lie in (0, " + std::to_string(limit) + ")");
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& J, double rel_tol = 1e-9) {
  const auto cols = J.cols();
  if (J.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = rel_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > cutoff) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

Eigen::Index numerical_rank(const Eigen::MatrixXd& A, double rel_tol = 1e-9) {
  if (A.rows() == 0 || A.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& s = svd.singularValues();
  const double cutoff = rel_tol * std::max(1.0, s(0));
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > cutoff) ++rank;
  return rank;
}

// Rows of the chain system: first ball pinned (d), gaps (n-1), end face (1).
// Gap rows are scaled by 1/(4r') so every row has unit-order gradient.
void chain_system(const BoxDomain& domain, const ChainSpec& spec, double r_prime,
                  const Eigen::VectorXd& x, std::vector<double>& F, std::vector<Eigen::VectorXd>& J) {
  const std::size_t n = spec.permutation.size(), d = domain.dim();
  const std::size_t a = spec.axis;
  const double L = domain.length(a);
  const auto anchor = face_anchor(domain, a, r_prime);
  const std::size_t first = spec.permutation.front();
  for (std::size_t m = 0; m < d; ++m) {
    F.push_back(x(static_cast<Eigen::Index>(first * d + m)) - anchor[m]);
    Eigen::VectorXd row = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n * d));
    row(static_cast<Eigen::Index>(first * d + m)) = 1.0;
    J.push_back(row);
  }
  const double scale = 1.0 / (4.0 * r_prime);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t p = spec.permutation[k], q = spec.permutation[k + 1];
    double sq = 0.0;
    Eigen::VectorXd row = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n * d));
    for (std::size_t m = 0; m < d; ++m) {
      const double diff = x(static_cast<Eigen::Index>(q * d + m)) - x(static_cast<Eigen::Index>(p * d + m));
      sq += diff * diff;
      row(static_cast<Eigen::Index>(q * d + m)) = 2.0 * diff * scale;
      row(static_cast<Eigen::Index>(p * d + m)) = -2.0 * diff * scale;
    }
    F.push_back((sq - 4.0 * r_prime * r_prime) * scale);
    J.push_back(row);
  }
  const std::size_t last = spec.permutation.back();
  F.push_back(x(static_cast<Eigen::Index>(last * d + a)) - (L - r_prime));
  Eigen::VectorXd row = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n * d));
  row(static_cast<Eigen::Index>(last * d + a)) = 1.0;
  J.push_back(row);
}

// Equalities of the stacked polytope: positions 1..n-1 share every
// coordinate except the height; position 0 shares the coordinates beyond the
// first two with position 1.
void sigma_equalities(std::size_t d, const ChainSpec& spec, const Eigen::VectorXd& x,
                      std::vector<double>& F, std::vector<Eigen::VectorXd>& J) {
  const std::size_t n = spec.permutation.size();
  const std::size_t a = spec.axis, t = transverse_axis(d, a);
  auto add = [&](std::size_t p, std::size_t q, std::size_t m) {
    F.push_back(x(static_cast<Eigen::Index>(p * d + m)) - x(static_cast<Eigen::Index>(q * d + m)));
    Eigen::VectorXd row = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n * d));
    row(static_cast<Eigen::Index>(p * d + m)) = 1.0;
    row(static_cast<Eigen::Index>(q * d + m)) = -1.0;
    J.push_back(row);
  };
  if (n < 2) return;
  const std::size_t second = spec.permutation[1];
  for (std::size_t k = 2; k < n; ++k)
    for (std::size_t m = 0; m < d; ++m)
      if (m != a) add(spec.permutation[k], second, m);
  for (std::size_t m = 0; m < d; ++m)
    if (m != a && m != t) add(spec.permutation[0], second, m);
}

Eigen::MatrixXd stack(const std::vector<Eigen::VectorXd>& rows, Eigen::Index cols) {
  Eigen::MatrixXd M(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) M.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return M;
}

Eigen::VectorXd to_vec(const Configuration& c) {
  return Eigen::Map<const Eigen::VectorXd>(c.flat().data(), static_cast<Eigen::Index>(c.flat().size()));
}

Configuration to_config(const Eigen::VectorXd& x, std::size_t n, std::size_t d) {
  return Configuration(n, d, std::vector<double>(x.data(), x.data() + x.size()));
}

}  // namespace

ChainSpec ChainSpec::make(const BoxDomain& domain, std::size_t n) {
  return make(domain, n, domain.shortest_axis(), identity(n));
}

ChainSpec ChainSpec::make(const BoxDomain& domain, std::size_t n, std::size_t axis,
                          std::vector<std::size_t> permutation) {
  if (n < 1) throw ParameterError("chain needs n >= 1");
  if (axis >= domain.dim()) throw ParameterError("chain axis out of range");
  if (std::abs(domain.length(axis) - domain.shortest_side()) > domain.abs_tol())
    throw ParameterError("chain axis " + std::to_string(axis) + " is not a shortest side");
  if (permutation.size() != n || !is_permutation_of_n(permutation))
    throw ParameterError("chain permutation must be a bijection on 1..n");
  ChainSpec s;
  s.axis = axis;
  s.permutation = std::move(permutation);
  s.r_star = domain.length(axis) / (2.0 * static_cast<double>(n));
  return s;
}

ChainResult chain_configuration(const BoxDomain& domain, std::size_t n, const ChainSpec& spec) {
  if (spec.permutation.size() != n) throw ParameterError("chain spec has the wrong size");
  const auto checked = ChainSpec::make(domain, n, spec.axis, spec.permutation);
  const double L = domain.length(checked.axis);
  const double nn = static_cast<double>(n);
  Configuration c(n, domain.dim());
  for (std::size_t k = 0; k < n; ++k) {
    auto p = c.point(checked.permutation[k]);
    for (std::size_t m = 0; m < domain.dim(); ++m) p[m] = 0.5 * domain.length(m);
    p[checked.axis] = static_cast<double>(2 * k + 1) * L / (2.0 * nn);
  }
  return {std::move(c), checked.r_star};
}

double distance_to_chain_family(const BoxDomain& domain, const Configuration& config) {
  require_same_dim(domain, config);
  const std::size_t n = config.size(), d = domain.dim();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < d; ++a) {
    if (std::abs(domain.length(a) - domain.shortest_side()) > domain.abs_tol()) continue;
    const double L = domain.length(a);
    std::vector<std::size_t> order = identity(n);
    std::sort(order.begin(), order.end(),
              [&](std::size_t p, std::size_t q) { return config(p, a) < config(q, a); });
    double sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double target = static_cast<double>(2 * k + 1) * L / (2.0 * static_cast<double>(n));
      sq += std::pow(config(order[k], a) - target, 2);
    }
    for (std::size_t m = 0; m < d; ++m) {
      if (m == a) continue;
      double mean = 0.0;
      for (std::size_t i = 0; i < n; ++i) mean += config(i, m);
      mean /= static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) sq += std::pow(config(i, m) - mean, 2);
    }
    best = std::min(best, std::sqrt(sq));
  }
  return best;
}

double epsilon_limit(const BoxDomain& domain, std::size_t n) {
  if (n < 2) throw ParameterError("epsilon range needs n >= 2");
  const double nn = static_cast<double>(n);
  return domain.shortest_side() / (2.0 * nn * (nn - 1.0));
}

SphereSample sphere_sample_from_directions(const BoxDomain& domain, const ChainSpec& spec,
                                           double epsilon,
                                           std::vector<std::vector<double>> directions) {
  const std::size_t n = spec.permutation.size(), d = domain.dim();
  if (directions.size() + 1 != n) throw ParameterError("need n - 1 chain directions");
  SphereSample s;
  s.spec = spec;
  s.epsilon = epsilon;
  s.r_prime = spec.r_star + epsilon;
  s.directions = std::move(directions);
  s.config = Configuration(n, d);
  const auto anchor = face_anchor(domain, spec.axis, s.r_prime);
  std::copy(anchor.begin(), anchor.end(), s.config.point(spec.permutation[0]).begin());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (s.directions[k].size() != d) throw ParameterError("direction has wrong dimension");
    const auto prev = s.config.point(spec.permutation[k]);
    auto next = s.config.point(spec.permutation[k + 1]);
    for (std::size_t m = 0; m < d; ++m) next[m] = prev[m] + 2.0 * s.r_prime * s.directions[k][m];
  }
  return s;
}

SphereSample sample_S_epsilon(const BoxDomain& domain, std::size_t n, double epsilon,
                              std::uint64_t seed) {
  return sample_S_epsilon(domain, ChainSpec::make(domain, n), epsilon, seed);
}

SphereSample sample_S_epsilon(const BoxDomain& domain, const ChainSpec& spec, double epsilon,
                              std::uint64_t seed) {
  const std::size_t n = spec.permutation.size(), d = domain.dim();
  check_epsilon(domain, n, epsilon);
  const double r_prime = spec.r_star + epsilon;
  const double L = domain.length(spec.axis);
  // Required sum of the axis components of the n-1 unit gap vectors.
  const double reach = (L - 2.0 * r_prime) / (2.0 * r_prime);
  const std::size_t a = spec.axis;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::vector<double>> raw(n - 1, std::vector<double>(d));
    for (auto& u : raw)
      for (double& c : u) c = gauss(rng);

    // Shift every raw vector by lambda * e_axis and normalize; the summed
    // axis component is increasing in lambda, so Newton is safeguarded by a
    // bracket.
    auto eval = [&](double lambda, double& deriv) {
      double sum = 0.0;
      deriv = 0.0;
      for (const auto& u : raw) {
        double sq = 0.0;
        for (std::size_t m = 0; m < d; ++m) {
          const double c = m == a ? u[m] + lambda : u[m];
          sq += c * c;
        }
        const double len = std::sqrt(sq);
        const double comp = (u[a] + lambda) / len;
        sum += comp;
        deriv += (1.0 - comp * comp) / len;
      }
      return sum - reach;
    };
    double lo = -1.0, hi = 1.0, dummy = 0.0;
    while (eval(lo, dummy) > 0.0 && lo > -1e12) lo *= 2.0;
    while (eval(hi, dummy) < 0.0 && hi < 1e12) hi *= 2.0;
    double lambda = 0.5 * (lo + hi);
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
      double deriv = 0.0;
      const double f = eval(lambda, deriv);
      if (std::abs(f) < 1e-15 * static_cast<double>(n)) {
        converged = true;
        break;
      }
      if (f > 0.0) hi = lambda;
      else lo = lambda;
      double next = deriv > 0.0 ? lambda - f / deriv : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (next == lambda) {
        converged = std::abs(f) < 1e-12;
        break;
      }
      lambda = next;
    }
    if (!converged) continue;

    std::vector<std::vector<double>> dirs = raw;
    for (auto& u : dirs) {
      u[a] += lambda;
      double sq = 0.0;
      for (double c : u) sq += c * c;
      const double len = std::sqrt(sq);
      for (double& c : u) c /= len;
    }
    auto sample = sphere_sample_from_directions(domain, spec, epsilon, std::move(dirs));
    bool inside = true;
    for (std::size_t i = 0; i < n && inside; ++i) inside = domain.contains(sample.config.point(i));
    if (inside && in_conf(domain, sample.config, Radius(r_prime))) return sample;
  }
  throw NumericError("could not draw a valid chain sample");
}

TangentRank tangent_rank(const BoxDomain& domain, const SphereSample& sample) {
  const std::size_t n = sample.config.size(), d = domain.dim();
  std::vector<double> F;
  std::vector<Eigen::VectorXd> rows;
  chain_system(domain, sample.spec, sample.r_prime, to_vec(sample.config), F, rows);
  const auto J = stack(rows, static_cast<Eigen::Index>(n * d));
  TangentRank r;
  r.rank = static_cast<std::size_t>(numerical_rank(J));
  r.expected_rank = n + d;
  r.dimension = n * d - r.rank;
  r.degenerate = r.rank < r.expected_rank;
  return r;
}

bool sigma_membership(const BoxDomain& domain, const Configuration& config, double r,
                      const SigmaOptions& opts) {
  require_same_dim(domain, config);
  const std::size_t n = config.size(), d = domain.dim();
  const double tol = opts.tol >= 0.0 ? opts.tol : Tolerances::for_domain(domain).sigma_tol;
  const std::size_t a = opts.axis;
  if (a >= d) throw ParameterError("sigma axis out of range");
  const std::size_t t = d >= 2 ? transverse_axis(d, a) : a;
  for (std::size_t i = 0; i < n; ++i)
    if (!domain.contains(config.point(i))) return false;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < d; ++m)
      if (m != a && m != t && std::abs(config(i, m) - config(0, m)) > tol) return false;
  for (std::size_t i = 2; i < n; ++i)
    for (std::size_t m = 0; m < d; ++m)
      if (m != a && std::abs(config(i, m) - config(1, m)) > tol) return false;

  if (config(0, a) < r - tol) return false;
  for (std::size_t i = opts.gap_from_first ? 0 : 1; i + 1 < n; ++i)
    if (config(i + 1, a) - config(i, a) < 2.0 * r - tol) return false;
  if (config(n - 1, a) > domain.length(a) - r + tol) return false;
  if (n >= 2 && d >= 2 && config(0, t) > config(1, t) + tol) return false;
  return true;
}

bool sigma_membership(const BoxDomain& domain, const Configuration& config, double r) {
  SigmaOptions opts;
  opts.axis = domain.shortest_axis();
  return sigma_membership(domain, config, r, opts);
}

IntersectionWitness intersection_witness(const BoxDomain& domain, std::size_t n, double epsilon,
                                         std::uint64_t seed, std::size_t starts) {
  check_epsilon(domain, n, epsilon);
  const std::size_t d = domain.dim();
  const auto spec = ChainSpec::make(domain, n);
  const double r_prime = spec.r_star + epsilon;
  const double r = spec.r_star - epsilon;
  const double L = domain.length(spec.axis);
  const auto N = static_cast<Eigen::Index>(n * d);
  const double tol = Tolerances::for_domain(domain).fit_tol;

  auto system = [&](const Eigen::VectorXd& x, Eigen::VectorXd& F, Eigen::MatrixXd& J) {
    std::vector<double> f;
    std::vector<Eigen::VectorXd> rows;
    chain_system(domain, spec, r_prime, x, f, rows);
    sigma_equalities(d, spec, x, f, rows);
    F = Eigen::Map<Eigen::VectorXd>(f.data(), static_cast<Eigen::Index>(f.size()));
    J = stack(rows, N);
  };

  SigmaOptions sopts;
  sopts.axis = spec.axis;
  sopts.tol = 1e-9 * L;

  IntersectionWitness out;
  out.starts = starts;
  std::vector<Eigen::VectorXd> roots;
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t s = 0; s < starts; ++s) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + s);
    Eigen::VectorXd x(N);
    const auto anchor = face_anchor(domain, spec.axis, r_prime);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t m = 0; m < d; ++m) {
        double v = anchor[m];
        if (m == spec.axis) v += 2.0 * r_prime * static_cast<double>(k) * (L - 2.0 * r_prime) /
                                 (2.0 * r_prime * static_cast<double>(n - 1));
        x(static_cast<Eigen::Index>(k * d + m)) = v + 0.05 * L * gauss(rng);
      }

    // Damped Newton on the square system.
    Eigen::VectorXd F;
    Eigen::MatrixXd J;
    bool ok = false;
    for (int it = 0; it < 200; ++it) {
      system(x, F, J);
      const double fn = F.norm();
      if (F.lpNorm<Eigen::Infinity>() < tol) {
        ok = true;
        break;
      }
      const Eigen::VectorXd dx = J.colPivHouseholderQr().solve(-F);
      if (!dx.allFinite()) break;
      double step = 1.0;
      Eigen::VectorXd Ft;
      Eigen::MatrixXd Jt;
      for (int ls = 0; ls < 40; ++ls) {
        system(x + step * dx, Ft, Jt);
        if (Ft.norm() < (1.0 - 1e-4 * step) * fn) break;
        step *= 0.5;
      }
      x += step * dx;
    }
    if (!ok) continue;
    const auto c = to_config(x, n, d);
    if (sigma_membership(domain, c, r, sopts)) {
      ++out.converged_in_sigma;
      roots.push_back(x);
    } else {
      ++out.converged_outside_sigma;
    }
  }
  if (roots.empty()) throw NumericError("no start converged into the intersection");
  for (std::size_t p = 0; p < roots.size(); ++p)
    for (std::size_t q = p + 1; q < roots.size(); ++q)
      out.spread = std::max(out.spread, (roots[p] - roots[q]).norm());
  if (out.spread > 1e-8)
    throw NonUniquenessError("multistart roots disagree by " + std::to_string(out.spread));
  out.config = to_config(roots.front(), n, d);

  std::vector<double> f;
  std::vector<Eigen::VectorXd> srows, grows;
  chain_system(domain, spec, r_prime, roots.front(), f, srows);
  sigma_equalities(d, spec, roots.front(), f, grows);
  const Eigen::MatrixXd ts = null_space(stack(srows, N));
  const Eigen::MatrixXd tg = null_space(stack(grows, N));
  Eigen::MatrixXd both(N, ts.cols() + tg.cols());
  both << ts, tg;
  out.transversality_rank = static_cast<std::size_t>(numerical_rank(both));
  return out;
}

std::vector<Configuration> retract_chain(const BoxDomain& domain, const SphereSample& sample,
                                         double r, double r_prime, const RetractOptions& opts) {
  const std::size_t n = sample.config.size(), d = domain.dim();
  const std::size_t a = sample.spec.axis;
  if (!(r > 0.0 && r <= r_prime)) throw ParameterError("retract_chain needs 0 < r <= r'");
  if (opts.steps_per_stage == 0) throw ParameterError("need at least one homotopy step");
  for (const auto& u : sample.directions)
    if (std::acos(std::clamp(-u[a], -1.0, 1.0)) < opts.angle_tol)
      throw ParameterError("a chain direction points straight down; rotation is ambiguous");

  const auto& perm = sample.spec.permutation;
  const std::vector<double> base(sample.config.point(perm[0]).begin(),
                                 sample.config.point(perm[0]).end());
  auto build = [&](const std::vector<std::vector<double>>& dirs, double gap) {
    Configuration c(n, d);
    std::copy(base.begin(), base.end(), c.point(perm[0]).begin());
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const auto prev = c.point(perm[k]);
      auto next = c.point(perm[k + 1]);
      for (std::size_t m = 0; m < d; ++m) next[m] = prev[m] + gap * dirs[k][m];
    }
    return c;
  };

  std::vector<Configuration> path;
  const double steps = static_cast<double>(opts.steps_per_stage);
  // Stage 1: gap length 2r' -> 2r, directions fixed.
  for (std::size_t s = 0; s <= opts.steps_per_stage; ++s) {
    const double t = static_cast<double>(s) / steps;
    path.push_back(build(sample.directions, 2.0 * ((1.0 - t) * r_prime + t * r)));
  }
  // Stage 2: rotate every gap vector to +axis along the great circle.
  for (std::size_t s = 1; s <= opts.steps_per_stage; ++s) {
    const double t = static_cast<double>(s) / steps;
    auto dirs = sample.directions;
    for (auto& u : dirs) {
      const double theta = std::acos(std::clamp(u[a], -1.0, 1.0));
      if (theta < 1e-15) continue;
      const double wu = std::sin((1.0 - t) * theta) / std::sin(theta);
      const double we = std::sin(t * theta) / std::sin(theta);
      for (std::size_t m = 0; m < d; ++m) u[m] = wu * u[m] + (m == a ? we : 0.0);
    }
    path.push_back(build(dirs, 2.0 * r));
  }
  return path;
}

}  // namespace hardball
