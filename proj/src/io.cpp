#include "hardball/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "hardball/errors.hpp"

namespace hardball::io {

json encode(const BoxDomain& domain) { return json{{"lengths", domain.lengths()}}; }

json encode(const Configuration& config, std::optional<double> radius) {
  json j{{"points", config.to_points()}};
  if (radius) j["radius"] = *radius;
  return j;
}

json encode(const Constraint& c) {
  json j;
  if (c.kind == ConstraintKind::Pair) {
    j = {{"kind", "pair"}, {"i", c.i + 1}, {"j", c.j + 1}, {"value", c.value}};
  } else {
    j = {{"kind", "wall"}, {"i", c.i + 1}, {"face", c.face.id()}, {"foot", c.foot}, {"value", c.value}};
    if (c.one_sided) j["one_sided"] = true;
  }
  return j;
}

json encode(const ActiveSet& set) {
  json cs = json::array();
  for (const auto& c : set.constraints) cs.push_back(encode(c));
  return json{{"tau", set.tau}, {"constraints", cs}};
}

namespace {
json encode_constraints(const std::vector<Constraint>& constraints) {
  json cs = json::array();
  for (const auto& c : constraints) cs.push_back(encode(c));
  return cs;
}
std::vector<Constraint> decode_constraints(const json& j) {
  std::vector<Constraint> out;
  for (const auto& c : j) out.push_back(decode_constraint(c));
  return out;
}
}  // namespace

json encode(const AscentCertificate& cert) {
  return json{{"direction", cert.direction}, {"margin", cert.margin},
              {"constraints", encode_constraints(cert.constraints)}};
}

json encode(const BalanceCertificate& cert) {
  return json{{"constraints", encode_constraints(cert.constraints)},
              {"weights", cert.weights},
              {"residual", cert.residual},
              {"support_size", cert.support_size()}};
}

json encode(const StressGraph& graph) {
  json vs = json::array();
  for (const auto& v : graph.vertices)
    vs.push_back({{"kind", v.kind == StressVertex::Kind::Internal ? "internal" : "boundary"},
                  {"point", v.point + 1},
                  {"position", v.position}});
  json es = json::array();
  for (const auto& e : graph.edges)
    es.push_back({{"a", e.a + 1}, {"b", e.b + 1}, {"weight", e.weight}, {"constraint", encode(e.constraint)}});
  json comps = json::array();
  for (const auto& c : graph.components) {
    json ids = json::array();
    for (std::size_t v : c) ids.push_back(v + 1);
    comps.push_back(ids);
  }
  json trivial = json::array();
  for (bool t : graph.component_trivial) trivial.push_back(t);
  return json{{"radius", graph.radius},        {"vertices", vs},
              {"edges", es},                   {"components", comps},
              {"component_trivial", trivial},  {"trivial", graph.trivial()}};
}

json encode(const BalanceReport& r) {
  return json{{"balanced", r.balanced},
              {"trivial", r.trivial},
              {"internal_net_force", r.internal_net_force},
              {"component_boundary_sum", r.component_boundary_sum}};
}

json encode(const HullReport& r) {
  return json{{"internal_points_in_kissing_hull", r.internal_points_in_kissing_hull},
              {"components_in_boundary_hull", r.components_in_boundary_hull},
              {"internal_residuals", r.internal_residuals},
              {"component_residuals", r.component_residuals}};
}

json encode(const Classification& cls) {
  if (const auto* reg = std::get_if<Regular>(&cls))
    return json{{"class", "regular"},
                {"certificate", encode(reg->certificate)},
                {"balance_residual", reg->balance_residual}};
  const auto& bal = std::get<Balanced>(cls);
  return json{{"class", "balanced"},
              {"certificate", encode(bal.certificate)},
              {"graph", encode(bal.graph)},
              {"nontrivial", bal.nontrivial},
              {"ascent_margin", bal.ascent_margin}};
}

json encode(const TrajectorySample& s) {
  return json{{"t", s.time}, {"tau", s.tau}, {"points", s.config.flat()}};
}

json encode_summary(const Trajectory& traj) {
  json j{{"status", to_string(traj.status)},
         {"samples", traj.samples.size()},
         {"initial_tau", traj.front().tau},
         {"final_tau", traj.back().tau},
         {"final_time", traj.back().time},
         {"last_margin", traj.last_margin},
         {"final", encode(traj.back().config)}};
  if (traj.status == FlowStatus::Stalled) {
    j["stall_confirmed_balanced"] = traj.stall_confirmed_balanced;
    if (traj.stall_certificate) j["stall_certificate"] = encode(*traj.stall_certificate);
  }
  return j;
}

json encode(const BettiTables& t, std::optional<double> r_star) {
  json j{{"n", t.n},
         {"d", t.d},
         {"k", t.k},
         {"N", t.top_degree},
         {"below", t.below},
         {"above", t.above},
         {"cells_attached", t.cells_attached},
         {"cells_to_betti_N", t.cells_to_betti_N},
         {"conditional", t.conditional}};
  if (r_star) j["r_star"] = *r_star;
  return j;
}

json encode(const ChainSpec& spec) {
  json perm = json::array();
  for (std::size_t p : spec.permutation) perm.push_back(p + 1);
  return json{{"axis", spec.axis}, {"permutation", perm}, {"r_star", spec.r_star}};
}

json encode(const SphereSample& s) {
  return json{{"spec", encode(s.spec)},
              {"epsilon", s.epsilon},
              {"r_prime", s.r_prime},
              {"directions", s.directions},
              {"points", s.config.to_points()}};
}

json encode(const Roadmap& map) {
  json edges = json::array();
  for (const auto& [a, b] : map.edges) edges.push_back({a + 1, b + 1});
  return json{{"components", map.component_count},
              {"nodes", map.nodes.size()},
              {"labels", map.component},
              {"edges", edges}};
}

BoxDomain decode_domain(const json& j) {
  try {
    return BoxDomain(j.at("lengths").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad domain document: ") + e.what());
  }
}

Configuration decode_configuration(const json& j) {
  try {
    return Configuration::from_points(j.at("points").get<std::vector<std::vector<double>>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad configuration document: ") + e.what());
  }
}

std::optional<double> decode_radius(const json& j) {
  if (!j.contains("radius")) return std::nullopt;
  try {
    return j.at("radius").get<double>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad radius: ") + e.what());
  }
}

Constraint decode_constraint(const json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    const auto i = j.at("i").get<std::size_t>();
    if (i == 0) throw ParseError("indices are 1-based");
    if (kind == "pair") {
      const auto jj = j.at("j").get<std::size_t>();
      if (jj == 0) throw ParseError("indices are 1-based");
      return Constraint::pair(i - 1, jj - 1, j.at("value").get<double>());
    }
    if (kind == "wall") {
      auto c = Constraint::wall(i - 1, Face::parse(j.at("face").get<std::string>()),
                                j.at("foot").get<std::vector<double>>(), j.at("value").get<double>());
      c.one_sided = j.value("one_sided", false);
      return c;
    }
    throw ParseError("unknown constraint kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad constraint: ") + e.what());
  }
}

ActiveSet decode_active_set(const json& j) {
  try {
    return ActiveSet{j.at("tau").get<double>(), decode_constraints(j.at("constraints"))};
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad active set: ") + e.what());
  }
}

AscentCertificate decode_ascent(const json& j) {
  try {
    return AscentCertificate{j.at("direction").get<std::vector<double>>(), j.at("margin").get<double>(),
                             decode_constraints(j.at("constraints"))};
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad ascent certificate: ") + e.what());
  }
}

BalanceCertificate decode_balance(const json& j) {
  try {
    BalanceCertificate c;
    c.constraints = decode_constraints(j.at("constraints"));
    c.weights = j.at("weights").get<std::vector<double>>();
    c.residual = j.at("residual").get<double>();
    if (c.weights.size() != c.constraints.size()) throw ParseError("weights/constraints size mismatch");
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad balance certificate: ") + e.what());
  }
}

TrajectorySample decode_sample(const json& j, std::size_t dim) {
  try {
    auto flat = j.at("points").get<std::vector<double>>();
    if (dim == 0 || flat.size() % dim != 0) throw ParseError("points do not divide into dimension");
    const std::size_t n = flat.size() / dim;
    return TrajectorySample{j.at("t").get<double>(), Configuration(n, dim, std::move(flat)),
                            j.at("tau").get<double>()};
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad trajectory sample: ") + e.what());
  }
}

BettiTables decode_betti(const json& j) {
  try {
    BettiTables t;
    t.n = j.at("n").get<std::int64_t>();
    t.d = j.at("d").get<std::int64_t>();
    t.k = j.at("k").get<std::int64_t>();
    t.top_degree = j.at("N").get<std::int64_t>();
    t.below = j.at("below").get<std::vector<std::int64_t>>();
    t.above = j.at("above").get<std::vector<std::int64_t>>();
    t.cells_attached = j.at("cells_attached").get<std::int64_t>();
    t.cells_to_betti_N = j.at("cells_to_betti_N").get<std::int64_t>();
    t.conditional = j.value("conditional", true);
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad betti document: ") + e.what());
  }
}

void write_jsonl(std::ostream& out, const Trajectory& traj) {
  for (const auto& s : traj.samples) out << encode(s).dump() << '\n';
}

void write_jsonl(std::ostream& out, const std::vector<Configuration>& path) {
  for (std::size_t k = 0; k < path.size(); ++k) {
    TrajectorySample s{static_cast<double>(k), path[k], 0.0};
    json j = encode(s);
    j.erase("tau");
    out << j.dump() << '\n';
  }
}

std::vector<TrajectorySample> read_jsonl(std::istream& in, std::size_t dim) {
  std::vector<TrajectorySample> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(decode_sample(json::parse(line), dim));
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad JSON line: ") + e.what());
    }
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace hardball::io
