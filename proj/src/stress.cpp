#include "hardball/stress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hardball/errors.hpp"
#include "hardball/lp.hpp"

namespace hardball {

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix gradients(const std::vector<Constraint>& constraints, const Configuration& config) {
  Matrix g;
  g.reserve(constraints.size());
  for (const auto& c : constraints) g.push_back(constraint_gradient(c, config));
  return g;
}

// Coordinates touched by at least one gradient; the LPs live on these only.
std::vector<std::size_t> support(const Matrix& g, std::size_t dim) {
  std::vector<std::size_t> s;
  for (std::size_t k = 0; k < dim; ++k)
    for (const auto& row : g)
      if (row[k] != 0.0) {
        s.push_back(k);
        break;
      }
  return s;
}

void check_lp(const lp::Solution& sol, const char* what) {
  if (sol.status == lp::Status::IterationLimit)
    throw NumericError(std::string(what) + " LP hit its iteration cap");
  if (sol.status != lp::Status::Optimal)
    throw NumericError(std::string(what) + " LP ended " + lp::to_string(sol.status));
}

double weighted_residual(const Matrix& g, const std::vector<double>& w) {
  if (g.empty()) return 0.0;
  std::vector<double> sum(g.front().size(), 0.0);
  for (std::size_t p = 0; p < g.size(); ++p)
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += w[p] * g[p][k];
  double s = 0.0;
  for (double v : sum) s += v * v;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

AscentSolution solve_ascent_lp(const std::vector<Constraint>& constraints,
                               const Configuration& config, bool least_effort) {
  const std::size_t dim = config.flat().size();
  const Matrix g = gradients(constraints, config);
  const auto sup = support(g, dim);
  const std::size_t k = sup.size();

  AscentSolution out;
  out.direction.assign(dim, 0.0);
  if (constraints.empty()) throw PreconditionError("ascent LP needs at least one constraint");
  if (k == 0) return out;

  // v = a - b with a, b in [0, 1]^k; variables (a, b, delta).
  lp::Problem prob(2 * k + 1);
  prob.set_objective_coeff(2 * k, -1.0);
  for (const auto& row : g) {
    std::vector<double> coeffs(2 * k + 1, 0.0);
    for (std::size_t q = 0; q < k; ++q) {
      coeffs[q] = -row[sup[q]];
      coeffs[k + q] = row[sup[q]];
    }
    coeffs[2 * k] = 1.0;
    prob.add_row(std::move(coeffs), lp::Relation::LessEqual, 0.0);
  }
  for (std::size_t q = 0; q < 2 * k; ++q) {
    std::vector<double> coeffs(2 * k + 1, 0.0);
    coeffs[q] = 1.0;
    prob.add_row(std::move(coeffs), lp::Relation::LessEqual, 1.0);
  }
  const auto sol = lp::solve(prob);
  check_lp(sol, "ascent");
  std::vector<double> x = sol.x;
  const double best = x[2 * k];

  if (least_effort && best > 0.0) {
    lp::Problem refine(2 * k);
    refine.set_objective(std::vector<double>(2 * k, 1.0));
    const double target = best * (1.0 - 1e-7);
    for (const auto& row : g) {
      std::vector<double> coeffs(2 * k, 0.0);
      for (std::size_t q = 0; q < k; ++q) {
        coeffs[q] = row[sup[q]];
        coeffs[k + q] = -row[sup[q]];
      }
      refine.add_row(std::move(coeffs), lp::Relation::GreaterEqual, target);
    }
    for (std::size_t q = 0; q < 2 * k; ++q) {
      std::vector<double> coeffs(2 * k, 0.0);
      coeffs[q] = 1.0;
      refine.add_row(std::move(coeffs), lp::Relation::LessEqual, 1.0);
    }
    const auto r = lp::solve(refine);
    if (r.status == lp::Status::Optimal) {
      x = r.x;
      x.push_back(target);
    }
  }

  for (std::size_t q = 0; q < k; ++q)
    out.direction[sup[q]] = std::clamp(x[q] - x[k + q], -1.0, 1.0);
  out.margin = std::numeric_limits<double>::infinity();
  for (const auto& row : g) out.margin = std::min(out.margin, dot(row, out.direction));
  return out;
}

BalanceSolution solve_balance_lp(const std::vector<Constraint>& constraints,
                                 const Configuration& config) {
  const std::size_t dim = config.flat().size();
  const std::size_t m = constraints.size();
  if (m == 0) throw PreconditionError("balance LP needs at least one constraint");
  const Matrix g = gradients(constraints, config);
  const auto sup = support(g, dim);
  const std::size_t k = sup.size();

  // Variables (w, s+, s-): sum_p w_p g_p - s+ + s- = 0, sum w = 1.
  lp::Problem prob(m + 2 * k);
  std::vector<double> c(m + 2 * k, 0.0);
  std::fill(c.begin() + static_cast<std::ptrdiff_t>(m), c.end(), 1.0);
  prob.set_objective(std::move(c));
  for (std::size_t q = 0; q < k; ++q) {
    std::vector<double> coeffs(m + 2 * k, 0.0);
    for (std::size_t p = 0; p < m; ++p) coeffs[p] = g[p][sup[q]];
    coeffs[m + q] = -1.0;
    coeffs[m + k + q] = 1.0;
    prob.add_row(std::move(coeffs), lp::Relation::Equal, 0.0);
  }
  std::vector<double> ones(m + 2 * k, 0.0);
  std::fill(ones.begin(), ones.begin() + static_cast<std::ptrdiff_t>(m), 1.0);
  prob.add_row(std::move(ones), lp::Relation::Equal, 1.0);

  const auto sol = lp::solve(prob);
  check_lp(sol, "balance");
  BalanceSolution out;
  out.weights.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(m));
  const double total = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  if (total > 0.0)
    for (double& w : out.weights) w /= total;
  out.residual = weighted_residual(g, out.weights);
  return out;
}

std::optional<AscentCertificate> ascent_direction(const BoxDomain& domain,
                                                  const Configuration& config, double eps_act,
                                                  const Tolerances& tol) {
  auto set = active_set(domain, config, eps_act);
  auto sol = solve_ascent_lp(set.constraints, config);
  if (!(sol.margin > tol.margin_tol)) return std::nullopt;
  return AscentCertificate{std::move(sol.direction), sol.margin, std::move(set.constraints)};
}

std::optional<AscentCertificate> ascent_direction(const BoxDomain& domain,
                                                  const Configuration& config, double eps_act) {
  return ascent_direction(domain, config, eps_act, Tolerances::for_domain(domain));
}

namespace {

// Drops weights below the floor, renormalizes, and recomputes the residual.
BalanceCertificate prune(const std::vector<Constraint>& constraints, const Configuration& config,
                         const BalanceSolution& sol, double weight_floor) {
  BalanceCertificate cert;
  for (std::size_t p = 0; p < constraints.size(); ++p) {
    if (sol.weights[p] >= weight_floor) {
      cert.constraints.push_back(constraints[p]);
      cert.weights.push_back(sol.weights[p]);
    }
  }
  const double total = std::accumulate(cert.weights.begin(), cert.weights.end(), 0.0);
  if (total <= 0.0) {
    cert.residual = std::numeric_limits<double>::infinity();
    return cert;
  }
  for (double& w : cert.weights) w /= total;
  cert.residual = weighted_residual(gradients(cert.constraints, config), cert.weights);
  return cert;
}

}  // namespace

std::optional<BalanceCertificate> balance_weights(const BoxDomain& domain,
                                                  const Configuration& config, double eps_act,
                                                  const Tolerances& tol) {
  const auto set = active_set(domain, config, eps_act);
  const auto sol = solve_balance_lp(set.constraints, config);
  if (!(sol.residual <= tol.balance_tol)) return std::nullopt;
  auto cert = prune(set.constraints, config, sol, tol.weight_floor);
  if (!(cert.residual <= tol.balance_tol)) return std::nullopt;
  return cert;
}

std::optional<BalanceCertificate> balance_weights(const BoxDomain& domain,
                                                  const Configuration& config, double eps_act) {
  return balance_weights(domain, config, eps_act, Tolerances::for_domain(domain));
}

std::size_t StressGraph::num_internal() const {
  return static_cast<std::size_t>(
      std::count_if(vertices.begin(), vertices.end(),
                    [](const StressVertex& v) { return v.kind == StressVertex::Kind::Internal; }));
}

std::size_t StressGraph::nontrivial_components() const {
  return static_cast<std::size_t>(
      std::count(component_trivial.begin(), component_trivial.end(), false));
}

StressGraph build_stress_graph(const BoxDomain& domain, const Configuration& config,
                               const BalanceCertificate& certificate) {
  require_same_dim(domain, config);
  StressGraph g;
  g.dim = config.dim();
  g.radius = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < config.size(); ++i) {
    g.vertices.push_back({StressVertex::Kind::Internal, i,
                          std::vector<double>(config.point(i).begin(), config.point(i).end())});
  }
  for (std::size_t p = 0; p < certificate.constraints.size(); ++p) {
    const auto& c = certificate.constraints[p];
    g.radius = std::min(g.radius, c.value);
    if (c.kind == ConstraintKind::Pair) {
      g.edges.push_back({c.i, c.j, certificate.weights[p], c});
    } else {
      std::vector<double> foot = c.foot;
      if (foot.empty()) {
        foot.assign(config.point(c.i).begin(), config.point(c.i).end());
        foot[c.face.axis] = c.face.side == Side::Lo ? 0.0 : domain.length(c.face.axis);
      }
      g.vertices.push_back({StressVertex::Kind::Boundary, c.i, std::move(foot)});
      g.edges.push_back({c.i, g.vertices.size() - 1, certificate.weights[p], c});
    }
  }
  if (g.edges.empty()) g.radius = 0.0;

  std::vector<std::size_t> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) parent[find(e.a)] = find(e.b);
  std::vector<std::size_t> label(g.vertices.size(), g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const std::size_t root = find(v);
    if (label[root] == g.vertices.size()) {
      label[root] = g.components.size();
      g.components.emplace_back();
    }
    g.components[label[root]].push_back(v);
  }
  for (const auto& comp : g.components) g.component_trivial.push_back(comp.size() == 1);
  return g;
}

namespace {

// Force on the internal endpoint `a` of edge e.
std::vector<double> edge_force(const StressGraph& g, const StressEdge& e) {
  const auto& pa = g.vertices[e.a].position;
  const auto& pb = g.vertices[e.b].position;
  std::vector<double> f(g.dim, 0.0);
  if (e.constraint.kind == ConstraintKind::Wall) {
    f[e.constraint.face.axis] = e.weight * e.constraint.face.inward_sign();
    return f;
  }
  const double len = distance(pa, pb);
  if (!(len > 0.0)) throw DegenerateGradientError("stress edge of zero length");
  for (std::size_t m = 0; m < g.dim; ++m) f[m] = 0.5 * e.weight * (pa[m] - pb[m]) / len;
  return f;
}

double norm(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

}  // namespace

BalanceReport check_balance(const StressGraph& graph, double balance_tol) {
  BalanceReport r;
  const std::size_t n = graph.num_internal();
  std::vector<std::vector<double>> net(n, std::vector<double>(graph.dim, 0.0));
  std::vector<std::size_t> comp_of(graph.vertices.size(), 0);
  for (std::size_t c = 0; c < graph.components.size(); ++c)
    for (std::size_t v : graph.components[c]) comp_of[v] = c;
  std::vector<std::vector<double>> boundary(graph.components.size(),
                                            std::vector<double>(graph.dim, 0.0));
  for (const auto& e : graph.edges) {
    const auto f = edge_force(graph, e);
    for (std::size_t m = 0; m < graph.dim; ++m) {
      net[e.a][m] += f[m];
      if (e.constraint.kind == ConstraintKind::Pair) net[e.b][m] -= f[m];
      else boundary[comp_of[e.b]][m] -= f[m];
    }
  }
  r.balanced = true;
  for (const auto& f : net) {
    r.internal_net_force.push_back(norm(f));
    r.balanced = r.balanced && r.internal_net_force.back() <= balance_tol;
  }
  for (const auto& f : boundary) {
    r.component_boundary_sum.push_back(norm(f));
    r.balanced = r.balanced && r.component_boundary_sum.back() <= balance_tol;
  }
  r.trivial = graph.trivial();
  return r;
}

double hull_residual(std::span<const double> point,
                     const std::vector<std::vector<double>>& generators) {
  if (generators.empty()) return std::numeric_limits<double>::infinity();
  const std::size_t K = generators.size(), d = point.size();
  lp::Problem prob(K + 2 * d);
  std::vector<double> c(K + 2 * d, 0.0);
  std::fill(c.begin() + static_cast<std::ptrdiff_t>(K), c.end(), 1.0);
  prob.set_objective(std::move(c));
  for (std::size_t m = 0; m < d; ++m) {
    std::vector<double> coeffs(K + 2 * d, 0.0);
    for (std::size_t q = 0; q < K; ++q) coeffs[q] = generators[q][m];
    coeffs[K + m] = -1.0;
    coeffs[K + d + m] = 1.0;
    prob.add_row(std::move(coeffs), lp::Relation::Equal, point[m]);
  }
  std::vector<double> ones(K + 2 * d, 0.0);
  std::fill(ones.begin(), ones.begin() + static_cast<std::ptrdiff_t>(K), 1.0);
  prob.add_row(std::move(ones), lp::Relation::Equal, 1.0);
  const auto sol = lp::solve(prob);
  check_lp(sol, "hull membership");
  return sol.objective;
}

HullReport hull_checks(const StressGraph& graph, const Tolerances& tol) {
  if (!check_balance(graph, tol.balance_tol).balanced)
    throw PreconditionError("hull checks need a balanced stress graph");
  HullReport r;
  const std::size_t n = graph.num_internal();

  std::vector<std::vector<std::vector<double>>> kissing(n);
  for (const auto& e : graph.edges) {
    const auto& pa = graph.vertices[e.a].position;
    const auto& pb = graph.vertices[e.b].position;
    if (e.constraint.kind == ConstraintKind::Wall) {
      kissing[e.a].push_back(pb);
    } else {
      std::vector<double> mid(graph.dim);
      for (std::size_t m = 0; m < graph.dim; ++m) mid[m] = 0.5 * (pa[m] + pb[m]);
      kissing[e.a].push_back(mid);
      kissing[e.b].push_back(mid);
    }
  }
  r.internal_points_in_kissing_hull = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (kissing[i].empty()) continue;
    const double res = hull_residual(graph.vertices[i].position, kissing[i]);
    r.internal_residuals.push_back(res);
    r.internal_points_in_kissing_hull = r.internal_points_in_kissing_hull && res <= tol.hull_tol;
  }

  r.components_in_boundary_hull = true;
  for (std::size_t c = 0; c < graph.components.size(); ++c) {
    if (graph.component_trivial[c]) continue;
    std::vector<std::vector<double>> feet;
    for (std::size_t v : graph.components[c])
      if (graph.vertices[v].kind == StressVertex::Kind::Boundary)
        feet.push_back(graph.vertices[v].position);
    double worst = 0.0;
    for (std::size_t v : graph.components[c])
      if (graph.vertices[v].kind == StressVertex::Kind::Internal)
        worst = std::max(worst, hull_residual(graph.vertices[v].position, feet));
    r.component_residuals.push_back(worst);
    r.components_in_boundary_hull = r.components_in_boundary_hull && worst <= tol.hull_tol;
  }
  return r;
}

Classification classify(const BoxDomain& domain, const Configuration& config, double eps_act,
                        const Tolerances& tol) {
  auto set = active_set(domain, config, eps_act);
  auto asc = solve_ascent_lp(set.constraints, config);
  const auto bal = solve_balance_lp(set.constraints, config);
  const bool ascent_ok = asc.margin > tol.margin_tol;
  std::optional<BalanceCertificate> cert;
  if (bal.residual <= tol.balance_tol) {
    cert = prune(set.constraints, config, bal, tol.weight_floor);
    if (!(cert->residual <= tol.balance_tol)) cert.reset();
  }
  if (ascent_ok && !cert)
    return Regular{AscentCertificate{std::move(asc.direction), asc.margin, std::move(set.constraints)},
                   bal.residual};
  if (cert && !ascent_ok) {
    auto graph = build_stress_graph(domain, config, *cert);
    const bool nontrivial = !graph.trivial();
    return Balanced{std::move(*cert), std::move(graph), nontrivial, asc.margin};
  }
  throw AmbiguityError(asc.margin, bal.residual);
}

Classification classify(const BoxDomain& domain, const Configuration& config, double eps_act) {
  return classify(domain, config, eps_act, Tolerances::for_domain(domain));
}

Classification classify(const BoxDomain& domain, const Configuration& config) {
  const auto tol = Tolerances::for_domain(domain);
  return classify(domain, config, tol.eps_act, tol);
}

}  // namespace hardball
