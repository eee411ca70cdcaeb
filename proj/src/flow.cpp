#include "hardball/flow.hpp"

#include <algorithm>
#include <cmath>

#include "hardball/errors.hpp"
#include "hardball/parallel.hpp"

namespace hardball {

std::string to_string(FlowStatus s) {
  switch (s) {
    case FlowStatus::ReachedTarget: return "reached-target";
    case FlowStatus::Stalled: return "stalled";
    case FlowStatus::IterationCap: return "hit-iteration-cap";
  }
  return "unknown";
}

namespace {

Configuration step(const Configuration& x, const std::vector<double>& v, double h) {
  Configuration y = x;
  auto& f = y.flat();
  for (std::size_t k = 0; k < f.size(); ++k) f[k] += h * v[k];
  return y;
}

Configuration lerp(const Configuration& a, const Configuration& b, double s) {
  Configuration y = a;
  auto& f = y.flat();
  const auto& g = b.flat();
  for (std::size_t k = 0; k < f.size(); ++k) f[k] += s * (g[k] - f[k]);
  return y;
}

void confirm_stall(const BoxDomain& domain, Trajectory& traj, const Tolerances& tol) {
  traj.status = FlowStatus::Stalled;
  try {
    auto cls = classify(domain, traj.back().config, tol.eps_flow, tol);
    if (auto* b = std::get_if<Balanced>(&cls)) {
      traj.stall_confirmed_balanced = true;
      traj.stall_certificate = std::move(b->certificate);
    }
  } catch (const AmbiguityError&) {
  }
}

}  // namespace

Trajectory ascend(const BoxDomain& domain, const Configuration& config, double target_tau,
                  const FlowOptions& opts) {
  const Tolerances tol = opts.tolerances.value_or(Tolerances::for_domain(domain));
  const double L = domain.shortest_side();
  const double h0 = opts.initial_step * L;
  const double floor = opts.speed_floor * L;
  const double hmin = opts.min_step * L;

  Trajectory traj;
  traj.domain = domain;
  Configuration x = config;
  double tx = tau(domain, x);
  double t = 0.0;
  traj.samples.push_back({t, x, tx});
  if (tx >= target_tau) {
    traj.status = FlowStatus::ReachedTarget;
    return traj;
  }

  for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
    const auto set = active_set(domain, x, tol.eps_flow);
    const auto dir = solve_ascent_lp(set.constraints, x);
    traj.last_margin = dir.margin;
    if (!(dir.margin > tol.margin_tol)) {
      confirm_stall(domain, traj, tol);
      return traj;
    }

    // Backtracking: accept once tau rises by threshold * h.
    const double threshold = std::max(0.5 * dir.margin, floor);
    double h = h0;
    bool accepted = false;
    Configuration y;
    double ty = 0.0;
    while (h >= hmin) {
      y = step(x, dir.direction, h);
      ty = tau_signed(domain, y);
      if (ty - tx >= threshold * h) {
        accepted = true;
        break;
      }
      h *= 0.5;
    }
    if (!accepted) {
      confirm_stall(domain, traj, tol);
      return traj;
    }

    // Land on the target level instead of overshooting it.
    if (ty > target_tau) {
      double lo = 0.0, hi = h;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (tau_signed(domain, step(x, dir.direction, mid)) >= target_tau) hi = mid;
        else lo = mid;
      }
      Configuration z = step(x, dir.direction, hi);
      const double tz = tau_signed(domain, z);
      if (tz >= target_tau && tz - tx >= threshold * hi && hi > 0.0) {
        y = std::move(z);
        ty = tz;
        h = hi;
      }
    }

    x = std::move(y);
    tx = ty;
    t += h;
    traj.samples.push_back({t, x, tx});
    if (tx >= target_tau) {
      traj.status = FlowStatus::ReachedTarget;
      return traj;
    }
  }
  traj.status = FlowStatus::IterationCap;
  if (opts.strict) throw IterationCapError("ascend reached its iteration cap");
  return traj;
}

RetractionReport retract_level(const BoxDomain& domain, const std::vector<Configuration>& configs,
                               double a, double b, const FlowOptions& opts) {
  if (!(b > a)) throw ParameterError("retract_level needs b > a");
  for (std::size_t i = 0; i < configs.size(); ++i)
    if (tau(domain, configs[i]) < a - domain.abs_tol())
      throw PreconditionError("input " + std::to_string(i + 1) + " lies below level a");

  RetractionReport report;
  report.trajectories.resize(configs.size());
  parallel_for(configs.size(), std::max<std::size_t>(1, opts.threads), [&](std::size_t i) {
    report.trajectories[i] = ascend(domain, configs[i], b, opts);
  });
  for (std::size_t i = 0; i < configs.size(); ++i)
    if (report.trajectories[i].status != FlowStatus::ReachedTarget) report.stalled.push_back(i);
  return report;
}

double crossing_time(const Trajectory& traj, double c) {
  if (traj.samples.empty()) throw RangeError("empty trajectory");
  if (c <= traj.front().tau) return 0.0;
  if (c > traj.back().tau) throw RangeError("level lies above the trajectory's terminal tau");
  std::size_t k = 1;
  while (traj.samples[k].tau < c) ++k;
  const auto& s0 = traj.samples[k - 1];
  const auto& s1 = traj.samples[k];
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tau_signed(traj.domain, lerp(s0.config, s1.config, mid)) >= c) hi = mid;
    else lo = mid;
  }
  return s0.time + hi * (s1.time - s0.time);
}

Configuration position_at(const Trajectory& traj, double t) {
  if (traj.samples.empty()) throw RangeError("empty trajectory");
  if (t <= traj.front().time) return traj.front().config;
  if (t >= traj.back().time) return traj.back().config;
  std::size_t k = 1;
  while (traj.samples[k].time < t) ++k;
  const auto& s0 = traj.samples[k - 1];
  const auto& s1 = traj.samples[k];
  const double span = s1.time - s0.time;
  return lerp(s0.config, s1.config, span > 0.0 ? (t - s0.time) / span : 1.0);
}

Configuration retraction_at(const Trajectory& traj, double a, double b, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw ParameterError("homotopy parameter must lie in [0, 1]");
  return position_at(traj, crossing_time(traj, (1.0 - s) * a + s * b));
}

}  // namespace hardball
