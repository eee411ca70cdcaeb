#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hardball/geometry.hpp"
#include "hardball/tolerances.hpp"

namespace hardball {

/// A straight chain of n tangent balls spanning a shortest side. Position k
/// along the chain holds label permutation[k].
struct ChainSpec {
  std::size_t axis = 0;
  std::vector<std::size_t> permutation;
  double r_star = 0.0;

  /// Defaults to the first shortest axis and the identity labelling.
  static ChainSpec make(const BoxDomain& domain, std::size_t n);
  static ChainSpec make(const BoxDomain& domain, std::size_t n, std::size_t axis,
                        std::vector<std::size_t> permutation);
};

struct ChainResult {
  Configuration config;
  double r_star = 0.0;
};

ChainResult chain_configuration(const BoxDomain& domain, std::size_t n, const ChainSpec& spec);

/// Euclidean distance from `config` to the nearest straight chain (spacing
/// 2 L / 2n along the shortest axis, any transverse offset, any labelling).
double distance_to_chain_family(const BoxDomain& domain, const Configuration& config);

/// A point of the sphere of chains at r' = L/2n + epsilon.
struct SphereSample {
  ChainSpec spec;
  std::vector<std::vector<double>> directions;  // n-1 unit vectors, chain order
  double epsilon = 0.0;
  double r_prime = 0.0;
  Configuration config;
};

/// Upper bound L / (2n(n-1)) on epsilon.
double epsilon_limit(const BoxDomain& domain, std::size_t n);

SphereSample sample_S_epsilon(const BoxDomain& domain, std::size_t n, double epsilon,
                              std::uint64_t seed);
SphereSample sample_S_epsilon(const BoxDomain& domain, const ChainSpec& spec, double epsilon,
                              std::uint64_t seed);

/// Builds a sample from given chain directions (the axis components are not
/// adjusted).
SphereSample sphere_sample_from_directions(const BoxDomain& domain, const ChainSpec& spec,
                                           double epsilon,
                                           std::vector<std::vector<double>> directions);

struct TangentRank {
  std::size_t dimension = 0;  // nd - rank
  std::size_t rank = 0;
  std::size_t expected_rank = 0;  // n + d
  bool degenerate = false;
};

/// Dimension of the solution set of the chain equations at the sample.
TangentRank tangent_rank(const BoxDomain& domain, const SphereSample& sample);

struct SigmaOptions {
  std::size_t axis = 0;        // the "height" coordinate
  // Also require f_1(x_2) - f_1(x_1) >= 2r.
  bool gap_from_first = false;
  double tol = -1.0;           // negative: Tolerances::sigma_tol
};

bool sigma_membership(const BoxDomain& domain, const Configuration& config, double r,
                      const SigmaOptions& opts);
bool sigma_membership(const BoxDomain& domain, const Configuration& config, double r);

struct IntersectionWitness {
  Configuration config;
  std::size_t transversality_rank = 0;
  std::size_t starts = 0;
  std::size_t converged_in_sigma = 0;
  std::size_t converged_outside_sigma = 0;
  double spread = 0.0;  // max distance between accepted roots
};

IntersectionWitness intersection_witness(const BoxDomain& domain, std::size_t n, double epsilon,
                                         std::uint64_t seed = 1, std::size_t starts = 16);

struct RetractOptions {
  std::size_t steps_per_stage = 64;
  double angle_tol = 1e-6;  // radians from straight down
};

/// Two-stage contraction of a sphere sample: shrink gaps 2r' -> 2r about the
/// first ball, then rotate every gap vector up to +axis. Returns
/// 1 + 2 * steps_per_stage configurations.
std::vector<Configuration> retract_chain(const BoxDomain& domain, const SphereSample& sample,
                                         double r, double r_prime,
                                         const RetractOptions& opts = {});

}  // namespace hardball
