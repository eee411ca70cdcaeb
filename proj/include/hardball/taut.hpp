#pragma once

#include <cstddef>
#include <vector>

#include "hardball/geometry.hpp"

namespace hardball {

enum class ConstraintKind { Pair, Wall };

/// One member f_p of the finite family whose minimum is tau. Pair(i, j)
/// has value |x_i - x_j| / 2; Wall(i, face) has value dist(x_i, face) with
/// `foot` the nearest point of that face.
struct Constraint {
  ConstraintKind kind = ConstraintKind::Pair;
  std::size_t i = 0;
  std::size_t j = 0;  // Pair only, i < j
  Face face;          // Wall only
  std::vector<double> foot;
  double value = 0.0;
  // Wall constraint evaluated with the point on the face; the gradient is
  // then the one-sided inward normal.
  bool one_sided = false;

  static Constraint pair(std::size_t i, std::size_t j, double value);
  static Constraint wall(std::size_t i, Face face, std::vector<double> foot, double value);

  /// Same parameter p (ignores value and foot).
  bool same_parameter(const Constraint& other) const noexcept;
};

struct ActiveSet {
  double tau = 0.0;
  std::vector<Constraint> constraints;
};

/// min(min_gap, min wall distance). Throws DomainError for points outside.
double tau(const BoxDomain& domain, const Configuration& config);

/// Same formula without the box check; wall distances are signed, so the
/// value is negative once a point leaves the box.
double tau_signed(const BoxDomain& domain, const Configuration& config);

/// Every pair and every face constraint, C(n,2) + 2dn entries.
std::vector<Constraint> all_constraints(const BoxDomain& domain, const Configuration& config);

ActiveSet active_set(const BoxDomain& domain, const Configuration& config, double eps_act);

/// f_p re-evaluated at `config` (signed for walls).
double constraint_value(const Constraint& c, const BoxDomain& domain, const Configuration& config);

/// Gradient of f_p in R^{nd}.
std::vector<double> constraint_gradient(const Constraint& c, const Configuration& config);

}  // namespace hardball
