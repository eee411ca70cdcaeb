#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "hardball/geometry.hpp"
#include "hardball/taut.hpp"
#include "hardball/tolerances.hpp"

namespace hardball {

/// A direction v with <grad f_p, v> >= margin for every p of the active set
/// it was computed from; |v|_inf <= 1.
struct AscentCertificate {
  std::vector<double> direction;
  double margin = 0.0;
  std::vector<Constraint> constraints;
};

/// Positive weights over active constraints with sum_p w_p grad f_p ~ 0.
struct BalanceCertificate {
  std::vector<Constraint> constraints;
  std::vector<double> weights;  // parallel to constraints, sum 1
  double residual = 0.0;        // Euclidean norm of the weighted gradient sum
  std::size_t support_size() const noexcept { return weights.size(); }
};

/// Raw LP outcomes, including the failing side.
struct AscentSolution {
  double margin = 0.0;
  std::vector<double> direction;
};
struct BalanceSolution {
  std::vector<double> weights;  // one per input constraint, sum 1
  double residual = 0.0;
};

/// max delta s.t. <g_p, v> >= delta, |v|_inf <= 1. With `least_effort` a
/// second LP picks the minimum-l1 direction among near-optimal ones.
AscentSolution solve_ascent_lp(const std::vector<Constraint>& constraints,
                               const Configuration& config, bool least_effort = true);

/// min |sum w_p g_p|_1 s.t. w >= 0, sum w = 1.
BalanceSolution solve_balance_lp(const std::vector<Constraint>& constraints,
                                 const Configuration& config);

std::optional<AscentCertificate> ascent_direction(const BoxDomain& domain,
                                                  const Configuration& config, double eps_act,
                                                  const Tolerances& tol);
std::optional<AscentCertificate> ascent_direction(const BoxDomain& domain,
                                                  const Configuration& config, double eps_act);

std::optional<BalanceCertificate> balance_weights(const BoxDomain& domain,
                                                  const Configuration& config, double eps_act,
                                                  const Tolerances& tol);
std::optional<BalanceCertificate> balance_weights(const BoxDomain& domain,
                                                  const Configuration& config, double eps_act);

struct StressVertex {
  enum class Kind { Internal, Boundary };
  Kind kind = Kind::Internal;
  std::size_t point = 0;  // owning point index (the touching point for boundary vertices)
  std::vector<double> position;
};

struct StressEdge {
  std::size_t a = 0;  // vertex ids; `a` is always internal
  std::size_t b = 0;
  double weight = 0.0;
  Constraint constraint;
};

/// Contact graph with positive weights. Internal vertices come first, one per
/// point (isolated points included); boundary vertices are wall feet.
struct StressGraph {
  std::size_t dim = 0;
  double radius = 0.0;
  std::vector<StressVertex> vertices;
  std::vector<StressEdge> edges;
  std::vector<std::vector<std::size_t>> components;
  std::vector<bool> component_trivial;

  std::size_t num_internal() const;
  bool trivial() const noexcept { return edges.empty(); }
  std::size_t nontrivial_components() const;
};

StressGraph build_stress_graph(const BoxDomain& domain, const Configuration& config,
                               const BalanceCertificate& certificate);

struct BalanceReport {
  std::vector<double> internal_net_force;      // norm per internal vertex
  std::vector<double> component_boundary_sum;  // norm per component
  bool balanced = false;
  bool trivial = false;
};

/// Pair edges transmit w * grad, i.e. w/2 along the unit contact direction,
/// consistent with the 1/2 in the pair term of tau.
BalanceReport check_balance(const StressGraph& graph, double balance_tol);

struct HullReport {
  bool internal_points_in_kissing_hull = false;
  bool components_in_boundary_hull = false;
  std::vector<double> internal_residuals;   // per non-isolated internal vertex
  std::vector<double> component_residuals;  // max over internal vertices, per nontrivial component
  bool ok() const noexcept { return internal_points_in_kissing_hull && components_in_boundary_hull; }
};

/// Throws PreconditionError if `graph` is not balanced.
HullReport hull_checks(const StressGraph& graph, const Tolerances& tol);

/// LP residual (l1) of writing `point` as a convex combination of `generators`.
double hull_residual(std::span<const double> point, const std::vector<std::vector<double>>& generators);

struct Regular {
  AscentCertificate certificate;
  double balance_residual = 0.0;
};
struct Balanced {
  BalanceCertificate certificate;
  StressGraph graph;
  bool nontrivial = false;
  double ascent_margin = 0.0;
};
using Classification = std::variant<Regular, Balanced>;

/// Exactly one Farkas alternative; AmbiguityError when both or neither pass.
Classification classify(const BoxDomain& domain, const Configuration& config, double eps_act,
                        const Tolerances& tol);
Classification classify(const BoxDomain& domain, const Configuration& config, double eps_act);
Classification classify(const BoxDomain& domain, const Configuration& config);

inline bool is_balanced(const Classification& c) { return std::holds_alternative<Balanced>(c); }

}  // namespace hardball
