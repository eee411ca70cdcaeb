#include "hardball/taut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardball/errors.hpp"

namespace hardball {

Constraint Constraint::pair(std::size_t i, std::size_t j, double value) {
  Constraint c;
  c.kind = ConstraintKind::Pair;
  c.i = std::min(i, j);
  c.j = std::max(i, j);
  c.value = value;
  return c;
}

Constraint Constraint::wall(std::size_t i, Face face, std::vector<double> foot, double value) {
  Constraint c;
  c.kind = ConstraintKind::Wall;
  c.i = i;
  c.face = face;
  c.foot = std::move(foot);
  c.value = value;
  c.one_sided = value <= 0.0;
  return c;
}

bool Constraint::same_parameter(const Constraint& o) const noexcept {
  if (kind != o.kind || i != o.i) return false;
  return kind == ConstraintKind::Pair ? j == o.j : face == o.face;
}

namespace {

void check_inside(const BoxDomain& domain, const Configuration& config) {
  require_same_dim(domain, config);
  for (std::size_t i = 0; i < config.size(); ++i)
    if (!domain.contains(config.point(i)))
      throw DomainError("point " + std::to_string(i + 1) + " lies outside the box");
}

}  // namespace

double tau_signed(const BoxDomain& domain, const Configuration& config) {
  require_same_dim(domain, config);
  double best = min_gap(config);
  for (std::size_t i = 0; i < config.size(); ++i)
    for (std::size_t m = 0; m < domain.dim(); ++m) {
      const double x = config(i, m);
      best = std::min({best, x, domain.length(m) - x});
    }
  return best;
}

double tau(const BoxDomain& domain, const Configuration& config) {
  check_inside(domain, config);
  return std::max(0.0, tau_signed(domain, config));
}

std::vector<Constraint> all_constraints(const BoxDomain& domain, const Configuration& config) {
  check_inside(domain, config);
  const std::size_t n = config.size(), d = domain.dim();
  std::vector<Constraint> out;
  out.reserve(n * (n - 1) / 2 + 2 * d * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.push_back(Constraint::pair(i, j, 0.5 * distance(config.point(i), config.point(j))));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& wd : wall_distances(domain, config.point(i))) {
      std::vector<double> foot(config.point(i).begin(), config.point(i).end());
      foot[wd.face.axis] = wd.face.side == Side::Lo ? 0.0 : domain.length(wd.face.axis);
      out.push_back(Constraint::wall(i, wd.face, std::move(foot), wd.distance));
    }
  }
  return out;
}

ActiveSet active_set(const BoxDomain& domain, const Configuration& config, double eps_act) {
  if (!(eps_act > 0.0)) throw ParameterError("eps_act must be positive");
  auto all = all_constraints(domain, config);
  ActiveSet set;
  set.tau = std::numeric_limits<double>::infinity();
  for (const auto& c : all) set.tau = std::min(set.tau, c.value);
  for (auto& c : all)
    if (c.value <= set.tau + eps_act) set.constraints.push_back(std::move(c));
  return set;
}

double constraint_value(const Constraint& c, const BoxDomain& domain, const Configuration& config) {
  if (c.kind == ConstraintKind::Pair) return 0.5 * distance(config.point(c.i), config.point(c.j));
  const double x = config(c.i, c.face.axis);
  return c.face.side == Side::Lo ? x : domain.length(c.face.axis) - x;
}

std::vector<double> constraint_gradient(const Constraint& c, const Configuration& config) {
  const std::size_t d = config.dim();
  std::vector<double> g(config.size() * d, 0.0);
  if (c.kind == ConstraintKind::Wall) {
    g[c.i * d + c.face.axis] = c.face.inward_sign();
    return g;
  }
  const auto xi = config.point(c.i);
  const auto xj = config.point(c.j);
  const double len = distance(xi, xj);
  if (!(len > 0.0))
    throw DegenerateGradientError("points " + std::to_string(c.i + 1) + " and " +
                                  std::to_string(c.j + 1) + " coincide");
  for (std::size_t m = 0; m < d; ++m) {
    const double u = (xj[m] - xi[m]) / len;
    g[c.i * d + m] = -0.5 * u;
    g[c.j * d + m] = 0.5 * u;
  }
  return g;
}

}  // namespace hardball
