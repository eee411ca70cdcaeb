// hardball: command-line front end.
//
// Exit codes
//   0  ok / Regular          6  partial retraction or stalled flow
//   1  internal error        7  iteration cap (strict mode)
//   2  usage, I/O or JSON    8  multistart non-uniqueness
//   3  domain violation      10 Balanced
//   4  bad parameter         11 ambiguous classification
//   5  numeric failure

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hardball/errors.hpp"
#include "hardball/flow.hpp"
#include "hardball/io.hpp"
#include "hardball/parallel.hpp"
#include "hardball/roadmap.hpp"
#include "hardball/stress.hpp"
#include "hardball/svg.hpp"
#include "hardball/taut.hpp"
#include "hardball/topo.hpp"
#include "hardball/witness.hpp"

using namespace hardball;
using io::json;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240101;

enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kDomain = 3,
  kParameter = 4,
  kNumeric = 5,
  kPartial = 6,
  kIterationCap = 7,
  kNonUnique = 8,
  kBalanced = 10,
  kAmbiguous = 11,
};

struct RunConfig {
  std::string domain_path;
  std::string config_path;
  std::optional<double> eps_act, balance_tol, margin_tol;
  std::uint64_t seed = kDefaultSeed;
  std::string format = "json";
  std::size_t threads = 0;
  bool verbose = false;

  std::size_t thread_count() const { return threads > 0 ? threads : default_threads(); }
};

struct Inputs {
  std::optional<BoxDomain> domain;
  std::optional<Configuration> config;
  std::optional<double> radius;
  Tolerances tol;
  double eps_act = 0.0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Inputs load(const RunConfig& rc, bool need_domain, bool need_config) {
  Inputs in;
  if (!rc.domain_path.empty()) in.domain = io::decode_domain(io::read_json_file(rc.domain_path));
  else if (need_domain) throw UsageError("--domain is required");
  if (!rc.config_path.empty()) {
    const auto j = io::read_json_file(rc.config_path);
    in.config = io::decode_configuration(j);
    in.radius = io::decode_radius(j);
  } else if (need_config) {
    throw UsageError("--config is required");
  }
  if (in.domain && in.config) require_same_dim(*in.domain, *in.config);
  in.tol = in.domain ? Tolerances::for_domain(*in.domain) : Tolerances{};
  if (rc.balance_tol) in.tol.balance_tol = *rc.balance_tol;
  if (rc.margin_tol) in.tol.margin_tol = *rc.margin_tol;
  in.eps_act = rc.eps_act.value_or(in.tol.eps_act);
  in.tol.eps_act = in.eps_act;
  return in;
}

void emit(const RunConfig& rc, const json& j) {
  if (rc.format == "text") {
    for (const auto& [k, v] : j.items()) std::cout << k << ": " << v.dump() << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

void note(const RunConfig& rc, const std::string& msg) {
  if (rc.verbose) std::cerr << msg << "\n";
}

void positive(CLI::Option* opt) { opt->check(CLI::PositiveNumber); }

// --- subcommands -----------------------------------------------------------

int cmd_tau(const RunConfig& rc) {
  const auto in = load(rc, true, true);
  const auto set = active_set(*in.domain, *in.config, in.eps_act);
  if (rc.format == "text") {
    std::printf("tau %.17g\n", set.tau);
    for (const auto& c : set.constraints) {
      if (c.kind == ConstraintKind::Pair)
        std::printf("pair %zu %zu %.17g\n", c.i + 1, c.j + 1, c.value);
      else
        std::printf("wall %zu %s %.17g\n", c.i + 1, c.face.id().c_str(), c.value);
    }
    return kOk;
  }
  emit(rc, io::encode(set));
  return kOk;
}

int cmd_classify(const RunConfig& rc) {
  const auto in = load(rc, true, true);
  Classification cls;
  try {
    cls = classify(*in.domain, *in.config, in.eps_act, in.tol);
  } catch (const AmbiguityError& e) {
    emit(rc, json{{"class", "ambiguous"}, {"ascent_margin", e.ascent_margin()}, {"balance_residual", e.balance_residual()}});
    return kAmbiguous;
  }
  if (rc.format == "svg") {
    if (const auto* b = std::get_if<Balanced>(&cls))
      std::cout << svg::render_stress_graph(*in.domain, *in.config, b->graph);
    else
      std::cout << svg::render_configuration(*in.domain, *in.config, tau(*in.domain, *in.config));
  } else {
    auto j = io::encode(cls);
    if (const auto* b = std::get_if<Balanced>(&cls)) {
      j["balance"] = io::encode(check_balance(b->graph, in.tol.balance_tol));
      j["hull"] = io::encode(hull_checks(b->graph, in.tol));
    }
    emit(rc, j);
  }
  note(rc, is_balanced(cls) ? "balanced" : "regular");
  return is_balanced(cls) ? kBalanced : kOk;
}

int flow_exit(FlowStatus s) {
  return s == FlowStatus::ReachedTarget ? kOk : kPartial;
}

int cmd_ascend(const RunConfig& rc, double target, const FlowOptions& base) {
  const auto in = load(rc, true, true);
  FlowOptions opts = base;
  opts.tolerances = in.tol;
  const auto tr = ascend(*in.domain, *in.config, target, opts);
  if (rc.format == "jsonl") io::write_jsonl(std::cout, tr);
  else emit(rc, io::encode_summary(tr));
  note(rc, "ascend: " + to_string(tr.status) + " after " + std::to_string(tr.samples.size()) + " samples");
  return flow_exit(tr.status);
}

std::vector<Configuration> load_batch(const std::string& path) {
  const auto j = io::read_json_file(path);
  std::vector<Configuration> out;
  if (j.is_array()) {
    for (const auto& c : j) out.push_back(io::decode_configuration(c));
  } else if (j.contains("configurations")) {
    for (const auto& c : j.at("configurations")) out.push_back(io::decode_configuration(c));
  } else {
    out.push_back(io::decode_configuration(j));
  }
  return out;
}

int cmd_retract(const RunConfig& rc, double a, double b, const std::string& batch, const FlowOptions& base) {
  auto in = load(rc, true, batch.empty());
  std::vector<Configuration> configs = batch.empty() ? std::vector<Configuration>{*in.config} : load_batch(batch);
  FlowOptions opts = base;
  opts.tolerances = in.tol;
  opts.threads = rc.thread_count();
  const auto rep = retract_level(*in.domain, configs, a, b, opts);
  if (rc.format == "jsonl") {
    for (const auto& tr : rep.trajectories) io::write_jsonl(std::cout, tr);
  } else {
    json trs = json::array();
    for (const auto& tr : rep.trajectories) trs.push_back(io::encode_summary(tr));
    json stalled = json::array();
    for (std::size_t i : rep.stalled) stalled.push_back(i + 1);
    emit(rc, json{{"a", a}, {"b", b}, {"complete", rep.complete()}, {"stalled", stalled}, {"trajectories", trs}});
  }
  note(rc, std::to_string(rep.stalled.size()) + " of " + std::to_string(configs.size()) + " inputs stalled");
  return rep.complete() ? kOk : kPartial;
}

std::vector<std::size_t> parse_perm(const std::vector<std::size_t>& one_based, std::size_t n) {
  if (one_based.empty()) {
    std::vector<std::size_t> id(n);
    for (std::size_t k = 0; k < n; ++k) id[k] = k;
    return id;
  }
  std::vector<std::size_t> p;
  for (std::size_t v : one_based) {
    if (v == 0) throw ParameterError("permutation entries are 1-based");
    p.push_back(v - 1);
  }
  return p;
}

ChainSpec make_spec(const BoxDomain& box, std::size_t n, std::optional<std::size_t> axis,
                    const std::vector<std::size_t>& perm) {
  if (!axis && perm.empty()) return ChainSpec::make(box, n);
  return ChainSpec::make(box, n, axis.value_or(box.shortest_axis()), parse_perm(perm, n));
}

int cmd_chain(const RunConfig& rc, std::size_t n, std::optional<std::size_t> axis,
              const std::vector<std::size_t>& perm) {
  const auto in = load(rc, true, false);
  const auto spec = make_spec(*in.domain, n, axis, perm);
  const auto res = chain_configuration(*in.domain, n, spec);
  if (rc.format == "svg") {
    std::cout << svg::render_configuration(*in.domain, res.config, res.r_star);
    return kOk;
  }
  json j{{"spec", io::encode(spec)}, {"r_star", res.r_star}, {"configuration", io::encode(res.config, res.r_star)}};
  try {
    j["classification"] = io::encode(classify(*in.domain, res.config, in.eps_act, in.tol));
  } catch (const AmbiguityError& e) {
    j["classification"] = json{{"class", "ambiguous"}};
  }
  emit(rc, j);
  return kOk;
}

int cmd_sphere(const RunConfig& rc, std::size_t n, double eps, std::optional<double> retract_r,
               std::size_t steps) {
  const auto in = load(rc, true, false);
  const auto s = sample_S_epsilon(*in.domain, n, eps, rc.seed);
  if (retract_r) {
    const auto path = retract_chain(*in.domain, s, *retract_r, s.r_prime, {steps, 1e-6});
    if (rc.format == "jsonl") {
      io::write_jsonl(std::cout, path);
    } else {
      double worst = std::numeric_limits<double>::infinity();
      for (const auto& c : path) worst = std::min(worst, tau(*in.domain, c));
      emit(rc, json{{"sample", io::encode(s)},
                    {"r", *retract_r},
                    {"steps", path.size()},
                    {"min_tau", worst},
                    {"final", io::encode(path.back())}});
    }
    return kOk;
  }
  if (rc.format == "svg") {
    std::cout << svg::render_configuration(*in.domain, s.config, s.r_prime);
    return kOk;
  }
  const auto t = tangent_rank(*in.domain, s);
  emit(rc, json{{"sample", io::encode(s)},
                {"tangent_dimension", t.dimension},
                {"jacobian_rank", t.rank},
                {"degenerate", t.degenerate}});
  return kOk;
}

int cmd_sigma(const RunConfig& rc, std::optional<double> r, std::optional<std::size_t> axis, bool gap_from_first) {
  const auto in = load(rc, true, true);
  const double radius = r ? *r : in.radius.value_or(-1.0);
  if (radius < 0.0) throw UsageError("sigma needs --r or a radius in the configuration file");
  SigmaOptions opts;
  opts.axis = axis.value_or(in.domain->shortest_axis());
  opts.gap_from_first = gap_from_first;
  opts.tol = in.tol.sigma_tol;
  const bool member = sigma_membership(*in.domain, *in.config, radius, opts);
  emit(rc, json{{"member", member}, {"r", radius}, {"axis", opts.axis}, {"gap_from_first", gap_from_first}});
  return kOk;
}

int cmd_intersect(const RunConfig& rc, std::size_t n, double eps, std::size_t starts) {
  const auto in = load(rc, true, false);
  const auto w = intersection_witness(*in.domain, n, eps, rc.seed, starts);
  if (rc.format == "svg") {
    std::cout << svg::render_configuration(*in.domain, w.config, in.domain->shortest_side() / (2.0 * n) + eps);
    return kOk;
  }
  emit(rc, json{{"configuration", io::encode(w.config)},
                {"transversality_rank", w.transversality_rank},
                {"full_rank", w.transversality_rank == w.config.flat().size()},
                {"starts", w.starts},
                {"converged_in_sigma", w.converged_in_sigma},
                {"converged_outside_sigma", w.converged_outside_sigma},
                {"spread", w.spread}});
  return kOk;
}

int cmd_betti(const RunConfig& rc, std::int64_t n, std::int64_t d, std::optional<std::int64_t> k) {
  std::optional<BoxDomain> box;
  if (!rc.domain_path.empty()) box = io::decode_domain(io::read_json_file(rc.domain_path));
  std::int64_t kk = 1;
  if (k) kk = *k;
  else if (box) kk = static_cast<std::int64_t>(k_multiplicity(*box));
  if (box && static_cast<std::int64_t>(box->dim()) != d) throw ParameterError("--d disagrees with the domain");
  const auto t = betti_across_threshold(n, d, kk);
  std::optional<double> r_star;
  if (box) r_star = box->shortest_side() / (2.0 * static_cast<double>(n));
  if (rc.format == "text") {
    std::printf("%-8s %10s %10s\n", "degree", "below", "above");
    for (std::size_t i = 0; i < t.below.size(); ++i)
      std::printf("%-8zu %10lld %10lld\n", i, static_cast<long long>(t.below[i]), static_cast<long long>(t.above[i]));
    std::printf("cells attached %lld, to beta_N %lld\n", static_cast<long long>(t.cells_attached),
                static_cast<long long>(t.cells_to_betti_N));
    if (r_star) std::printf("r* %.17g\n", *r_star);
    return kOk;
  }
  emit(rc, io::encode(t, r_star));
  return kOk;
}

std::vector<double> parse_sweep(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad --sweep entry '" + item + "'");
    }
  }
  return out;
}

int cmd_connect(const RunConfig& rc, std::size_t n, std::optional<double> r, std::size_t samples,
                std::size_t neighbors, const std::string& sweep, const std::string& adjacency) {
  const auto in = load(rc, true, false);
  RoadmapOptions opts;
  opts.neighbors = neighbors;
  opts.threads = rc.thread_count();
  if (!sweep.empty()) {
    std::cout << "r,components\n";
    for (double radius : parse_sweep(sweep)) {
      std::size_t comps = 0;
      try {
        comps = connectivity_experiment(*in.domain, n, radius, samples, rc.seed, opts).components;
      } catch (const InsufficientDataError&) {
        comps = 0;
      }
      std::cout << radius << "," << comps << "\n";
    }
    return kOk;
  }
  if (!r) throw UsageError("connect needs --r or --sweep");
  const auto res = connectivity_experiment(*in.domain, n, *r, samples, rc.seed, opts);
  if (!adjacency.empty()) {
    std::ofstream out(adjacency);
    if (!out) throw io::ParseError("cannot write " + adjacency);
    out << io::encode(res.roadmap).dump() << "\n";
  }
  emit(rc, json{{"components", res.components},
                {"nodes", res.roadmap.nodes.size()},
                {"attempted", res.attempted},
                {"edges", res.roadmap.edges.size()},
                {"r", *r},
                {"seed", rc.seed}});
  return kOk;
}

int cmd_render(const RunConfig& rc, std::optional<double> r, bool stress) {
  const auto in = load(rc, true, true);
  if (in.domain->dim() != 2) std::cerr << "warning: rendering the first two coordinates only\n";
  if (stress) {
    const auto cls = classify(*in.domain, *in.config, in.eps_act, in.tol);
    if (const auto* b = std::get_if<Balanced>(&cls)) {
      std::cout << svg::render_stress_graph(*in.domain, *in.config, b->graph);
      return kOk;
    }
  }
  const double radius = r ? *r : in.radius.value_or(tau(*in.domain, *in.config));
  std::cout << svg::render_configuration(*in.domain, *in.config, radius);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hard-sphere configuration spaces in a box"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig rc;
  app.add_option("--domain", rc.domain_path, "Domain JSON file");
  app.add_option("--config", rc.config_path, "Configuration JSON file");
  positive(app.add_option("--eps-act", rc.eps_act, "Active-set band"));
  positive(app.add_option("--balance-tol", rc.balance_tol, "Balance residual tolerance"));
  positive(app.add_option("--margin-tol", rc.margin_tol, "Ascent margin tolerance"));
  app.add_option("--seed", rc.seed, "RNG seed")->capture_default_str();
  app.add_option("--format", rc.format, "json | text | svg | jsonl")
      ->check(CLI::IsMember({"json", "text", "svg", "jsonl"}))
      ->capture_default_str();
  app.add_option("--threads", rc.threads, "Worker threads (default: HARDBALL_THREADS or 1)");
  app.add_flag("--verbose", rc.verbose, "Progress on stderr");

  auto* tau_cmd = app.add_subcommand("tau", "Print tau and the active set");
  auto* classify_cmd = app.add_subcommand("classify", "Regular or balanced");

  FlowOptions flow;
  double target = 0.0, a = 0.0, b = 0.0;
  std::string batch;
  auto* ascend_cmd = app.add_subcommand("ascend", "Flow to a higher tau");
  ascend_cmd->add_option("--target", target, "Target tau")->required();
  ascend_cmd->add_flag("--strict", flow.strict, "Iteration cap is an error");
  ascend_cmd->add_option("--max-iter", flow.max_iterations, "Iteration cap");
  auto* retract_cmd = app.add_subcommand("retract", "Retract M^a onto M^b");
  retract_cmd->add_option("--a", a, "Lower level")->required();
  retract_cmd->add_option("--b", b, "Upper level")->required();
  retract_cmd->add_option("--inputs", batch, "JSON list of configurations");
  retract_cmd->add_flag("--strict", flow.strict, "Iteration cap is an error");

  std::size_t n = 0;
  std::optional<std::size_t> axis;
  std::vector<std::size_t> perm;
  auto* chain_cmd = app.add_subcommand("chain", "Critical chain at r* = L/2n");
  chain_cmd->add_option("--n", n, "Number of balls")->required();
  chain_cmd->add_option("--axis", axis, "Spanned axis (0-based)");
  chain_cmd->add_option("--perm", perm, "Labels along the chain (1-based)")->delimiter(',');

  double eps = 0.0;
  std::optional<double> retract_r;
  std::size_t steps = 64;
  auto* sphere_cmd = app.add_subcommand("sphere", "Sample the sphere of chains S_eps");
  sphere_cmd->add_option("--n", n, "Number of balls")->required();
  sphere_cmd->add_option("--epsilon", eps, "Offset above r*")->required();
  sphere_cmd->add_option("--retract", retract_r, "Contract the sample inside Conf(n, r)");
  sphere_cmd->add_option("--steps", steps, "Homotopy steps per stage")->capture_default_str();

  std::optional<double> r;
  bool gap_from_first = false;
  auto* sigma_cmd = app.add_subcommand("sigma", "Membership in the stacked polytope");
  sigma_cmd->add_option("--r", r, "Radius");
  sigma_cmd->add_option("--axis", axis, "Height axis (0-based)");
  sigma_cmd->add_flag("--gap-from-first", gap_from_first, "Also constrain the first gap");

  std::size_t starts = 16;
  auto* intersect_cmd = app.add_subcommand("intersect", "Transversal intersection point");
  intersect_cmd->add_option("--n", n, "Number of balls")->required();
  intersect_cmd->add_option("--epsilon", eps, "Offset above r*")->required();
  intersect_cmd->add_option("--starts", starts, "Multistart count")->capture_default_str();

  std::int64_t bn = 0, bd = 0;
  std::optional<std::int64_t> bk;
  auto* betti_cmd = app.add_subcommand("betti", "Betti numbers across r*");
  betti_cmd->add_option("--n", bn, "Number of balls")->required();
  betti_cmd->add_option("--d", bd, "Dimension")->required();
  betti_cmd->add_option("--k", bk, "Multiplicity of the shortest side");

  std::size_t samples = 500, neighbors = 10;
  std::string sweep, adjacency;
  auto* connect_cmd = app.add_subcommand("connect", "Roadmap component count");
  connect_cmd->add_option("--n", n, "Number of balls")->required();
  connect_cmd->add_option("--r", r, "Radius");
  connect_cmd->add_option("--samples", samples, "Roadmap nodes")->capture_default_str();
  connect_cmd->add_option("--neighbors", neighbors, "k nearest")->capture_default_str();
  connect_cmd->add_option("--sweep", sweep, "Comma-separated radii; prints CSV");
  connect_cmd->add_option("--adjacency", adjacency, "Write the roadmap JSON here");

  bool stress = false;
  auto* render_cmd = app.add_subcommand("render", "SVG of a configuration");
  render_cmd->add_option("--r", r, "Drawn radius");
  render_cmd->add_flag("--stress", stress, "Draw the stress graph when balanced");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*tau_cmd) return cmd_tau(rc);
    if (*classify_cmd) return cmd_classify(rc);
    if (*ascend_cmd) return cmd_ascend(rc, target, flow);
    if (*retract_cmd) return cmd_retract(rc, a, b, batch, flow);
    if (*chain_cmd) return cmd_chain(rc, n, axis, perm);
    if (*sphere_cmd) return cmd_sphere(rc, n, eps, retract_r, steps);
    if (*sigma_cmd) return cmd_sigma(rc, r, axis, gap_from_first);
    if (*intersect_cmd) return cmd_intersect(rc, n, eps, starts);
    if (*betti_cmd) return cmd_betti(rc, bn, bd, bk);
    if (*connect_cmd) return cmd_connect(rc, n, r, samples, neighbors, sweep, adjacency);
    if (*render_cmd) return cmd_render(rc, r, stress);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const IterationCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIterationCap;
  } catch (const NonUniquenessError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNonUnique;
  } catch (const AmbiguityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kAmbiguous;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParameter;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParameter;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParameter;
  } catch (const Error& e) {
    // NumericError and its remaining subclasses, InsufficientData, Overflow.
    std::cerr << "error: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
