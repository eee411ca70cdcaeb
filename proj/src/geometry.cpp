#include "hardball/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hardball/errors.hpp"
#include "hardball/taut.hpp"
#include "hardball/tolerances.hpp"

namespace hardball {

AmbiguityError::AmbiguityError(double ascent_margin, double balance_residual)
    : Error([&] {
        std::ostringstream os;
        os << "ambiguous classification: ascent margin " << ascent_margin
           << ", balance residual " << balance_residual;
        return os.str();
      }()),
      ascent_margin_(ascent_margin),
      balance_residual_(balance_residual) {}

BoxDomain::BoxDomain(std::vector<double> lengths) : lengths_(std::move(lengths)) {
  if (lengths_.empty()) throw ParameterError("box needs at least one side");
  for (double l : lengths_) {
    if (!(l > 0.0) || !std::isfinite(l)) throw ParameterError("box side lengths must be positive");
  }
  shortest_ = *std::min_element(lengths_.begin(), lengths_.end());
}

std::size_t BoxDomain::shortest_axis() const noexcept {
  return static_cast<std::size_t>(std::min_element(lengths_.begin(), lengths_.end()) -
                                  lengths_.begin());
}

bool BoxDomain::contains(std::span<const double> point) const {
  if (point.size() != dim()) return false;
  const double tol = abs_tol();
  for (std::size_t m = 0; m < dim(); ++m) {
    if (!(point[m] >= -tol && point[m] <= lengths_[m] + tol)) return false;
  }
  return true;
}

Tolerances Tolerances::for_domain(const BoxDomain& domain) {
  const double L = domain.shortest_side();
  Tolerances t;
  t.abs_tol = 1e-9 * L;
  t.eps_act = 1e-9 * L;
  t.eps_flow = 1e-6 * L;
  t.balance_tol = 1e-9 * L;
  t.hull_tol = 1e-9 * L;
  t.fit_tol = 1e-10 * L;
  t.sigma_tol = 1e-9 * L;
  return t;
}

Configuration::Configuration(std::size_t n, std::size_t d) : n_(n), d_(d), coords_(n * d, 0.0) {
  if (d == 0) throw ParameterError("configuration dimension must be positive");
}

Configuration::Configuration(std::size_t n, std::size_t d, std::vector<double> coords)
    : n_(n), d_(d), coords_(std::move(coords)) {
  if (d == 0) throw ParameterError("configuration dimension must be positive");
  if (coords_.size() != n * d) throw ParameterError("coordinate count does not match n * d");
}

Configuration Configuration::from_points(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw ParameterError("configuration needs at least one point");
  const std::size_t d = points.front().size();
  Configuration c(points.size(), d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != d) throw ParameterError("points have inconsistent dimension");
    std::copy(points[i].begin(), points[i].end(), c.point(i).begin());
  }
  return c;
}

std::vector<std::vector<double>> Configuration::to_points() const {
  std::vector<std::vector<double>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i].assign(point(i).begin(), point(i).end());
  return out;
}

Radius::Radius(double v) : value(v) {
  if (!(v >= 0.0)) throw ParameterError("radius must be nonnegative");
}

std::string Face::id() const {
  return std::to_string(axis) + (side == Side::Lo ? "-" : "+");
}

Face Face::parse(const std::string& id) {
  if (id.size() < 2 || (id.back() != '-' && id.back() != '+'))
    throw ParameterError("bad face id '" + id + "'");
  Face f;
  try {
    f.axis = std::stoul(id.substr(0, id.size() - 1));
  } catch (const std::exception&) {
    throw ParameterError("bad face id '" + id + "'");
  }
  f.side = id.back() == '-' ? Side::Lo : Side::Hi;
  return f;
}

std::vector<WallDistance> wall_distances(const BoxDomain& domain, std::span<const double> point) {
  if (point.size() != domain.dim()) throw ParameterError("point dimension does not match box");
  if (!domain.contains(point)) throw DomainError("point outside the box");
  std::vector<WallDistance> out;
  out.reserve(2 * domain.dim());
  for (std::size_t m = 0; m < domain.dim(); ++m) {
    out.push_back({Face{m, Side::Lo}, std::max(0.0, point[m])});
    out.push_back({Face{m, Side::Hi}, std::max(0.0, domain.length(m) - point[m])});
  }
  return out;
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    const double t = a[m] - b[m];
    s += t * t;
  }
  return std::sqrt(s);
}

double min_gap(const Configuration& config) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < config.size(); ++i)
    for (std::size_t j = i + 1; j < config.size(); ++j)
      best = std::min(best, 0.5 * distance(config.point(i), config.point(j)));
  return best;
}

void require_same_dim(const BoxDomain& domain, const Configuration& config) {
  if (config.dim() != domain.dim())
    throw ParameterError("configuration dimension " + std::to_string(config.dim()) +
                         " does not match box dimension " + std::to_string(domain.dim()));
}

bool in_conf(const BoxDomain& domain, const Configuration& config, Radius r) {
  if (config.dim() != domain.dim()) return false;
  for (std::size_t i = 0; i < config.size(); ++i)
    if (!domain.contains(config.point(i))) return false;
  return tau(domain, config) >= r.value - domain.abs_tol();
}

}  // namespace hardball
