#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace hardball {

/// Axis-aligned box [0, L_1] x ... x [0, L_d]. Side lengths keep the order
/// the user gave them; `shortest_side()` provides the sorted-convention L.
class BoxDomain {
 public:
  explicit BoxDomain(std::vector<double> lengths);

  std::size_t dim() const noexcept { return lengths_.size(); }
  double length(std::size_t axis) const { return lengths_.at(axis); }
  const std::vector<double>& lengths() const noexcept { return lengths_; }
  double shortest_side() const noexcept { return shortest_; }
  std::size_t shortest_axis() const noexcept;

  /// Membership tolerance, 1e-9 of the shortest side.
  double abs_tol() const noexcept { return 1e-9 * shortest_; }

  bool contains(std::span<const double> point) const;

  bool operator==(const BoxDomain&) const = default;

 private:
  std::vector<double> lengths_;
  double shortest_ = 0.0;
};

/// Ordered n-tuple of points in R^d, stored row-major.
class Configuration {
 public:
  Configuration() = default;
  Configuration(std::size_t n, std::size_t d);
  Configuration(std::size_t n, std::size_t d, std::vector<double> coords);
  static Configuration from_points(const std::vector<std::vector<double>>& points);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return d_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * d_, d_};
  }
  std::span<double> point(std::size_t i) { return {coords_.data() + i * d_, d_}; }
  double operator()(std::size_t i, std::size_t m) const { return coords_[i * d_ + m]; }
  double& operator()(std::size_t i, std::size_t m) { return coords_[i * d_ + m]; }

  const std::vector<double>& flat() const noexcept { return coords_; }
  std::vector<double>& flat() noexcept { return coords_; }
  std::vector<std::vector<double>> to_points() const;

  bool operator==(const Configuration&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> coords_;
};

struct Radius {
  explicit Radius(double v);
  double value;
};

enum class Side { Lo, Hi };

/// Face {f_axis = 0} (Lo) or {f_axis = L_axis} (Hi).
struct Face {
  std::size_t axis = 0;
  Side side = Side::Lo;

  /// "0-" / "0+" style identifier used in I/O.
  std::string id() const;
  static Face parse(const std::string& id);
  /// +1 for the Lo face (inward normal +e_axis), -1 for Hi.
  double inward_sign() const noexcept { return side == Side::Lo ? 1.0 : -1.0; }

  bool operator==(const Face&) const = default;
};

struct WallDistance {
  Face face;
  double distance;
};

/// Distance from `point` to each of the 2d faces, ordered (0-, 0+, 1-, 1+, ...).
std::vector<WallDistance> wall_distances(const BoxDomain& domain, std::span<const double> point);

/// Half the minimum pairwise distance; +inf when n < 2.
double min_gap(const Configuration& config);

double distance(std::span<const double> a, std::span<const double> b);

/// tau(config) >= r - abs_tol. Points outside the box are never members.
bool in_conf(const BoxDomain& domain, const Configuration& config, Radius r);

void require_same_dim(const BoxDomain& domain, const Configuration& config);

}  // namespace hardball
