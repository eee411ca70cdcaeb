#pragma once

#include "hardball/geometry.hpp"

namespace hardball {

/// Numerical thresholds shared by the certificate, flow and witness code.
/// Length-valued entries scale with the shortest side of the box.
struct Tolerances {
  double abs_tol = 1e-9;       // Conf(n, r) membership
  double eps_act = 1e-9;       // active band for certificates
  double eps_flow = 1e-6;      // looser active band used while flowing
  double margin_tol = 1e-8;    // ascent margin must exceed this
  double balance_tol = 1e-9;   // residual of a balance certificate
  double weight_floor = 1e-10; // smallest weight kept in a certificate
  double hull_tol = 1e-9;      // convex-hull membership residual
  double fit_tol = 1e-10;      // witness constructions
  double sigma_tol = 1e-9;     // membership in the stacked polytope

  static Tolerances for_domain(const BoxDomain& domain);
};

}  // namespace hardball
