#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hardball/geometry.hpp"
#include "hardball/stress.hpp"
#include "hardball/tolerances.hpp"

namespace hardball {

struct FlowOptions {
  double initial_step = 0.05;   // fraction of the shortest side
  double speed_floor = 1e-6;    // fraction of the shortest side per unit time
  double min_step = 1e-12;      // fraction of the shortest side
  std::size_t max_iterations = 10000;
  bool strict = false;          // iteration cap throws IterationCapError
  std::size_t threads = 1;      // retract_level only
  std::optional<Tolerances> tolerances;
};

enum class FlowStatus { ReachedTarget, Stalled, IterationCap };

std::string to_string(FlowStatus s);

struct TrajectorySample {
  double time = 0.0;
  Configuration config;
  double tau = 0.0;
};

/// Piecewise-linear integral curve of the pointwise ascent field.
struct Trajectory {
  BoxDomain domain{{1.0}};
  std::vector<TrajectorySample> samples;
  FlowStatus status = FlowStatus::ReachedTarget;
  double last_margin = 0.0;
  // Set when stalled: classification of the terminal configuration on the
  // flow band.
  bool stall_confirmed_balanced = false;
  std::optional<BalanceCertificate> stall_certificate;

  const TrajectorySample& front() const { return samples.front(); }
  const TrajectorySample& back() const { return samples.back(); }
};

Trajectory ascend(const BoxDomain& domain, const Configuration& config, double target_tau,
                  const FlowOptions& opts = {});

struct RetractionReport {
  std::vector<Trajectory> trajectories;
  std::vector<std::size_t> stalled;  // inputs that ended below b
  bool complete() const noexcept { return stalled.empty(); }
};

/// Flows every input with tau < b up to b; inputs already in M^b are returned
/// as single-sample trajectories.
RetractionReport retract_level(const BoxDomain& domain, const std::vector<Configuration>& configs,
                               double a, double b, const FlowOptions& opts = {});

/// inf{t : tau(traj(t)) >= c}, clamped to 0 for c at or below the initial tau.
/// Throws RangeError when c exceeds the terminal tau.
double crossing_time(const Trajectory& traj, double c);

/// Position along the trajectory at time t (linear between samples).
Configuration position_at(const Trajectory& traj, double t);

/// The deformation H(x, s) = x moved for time phi(x, (1-s) a + s b).
Configuration retraction_at(const Trajectory& traj, double a, double b, double s);

}  // namespace hardball
