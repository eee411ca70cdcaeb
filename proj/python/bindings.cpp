#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hardball/errors.hpp"
#include "hardball/flow.hpp"
#include "hardball/io.hpp"
#include "hardball/roadmap.hpp"
#include "hardball/stress.hpp"
#include "hardball/taut.hpp"
#include "hardball/topo.hpp"
#include "hardball/witness.hpp"

namespace py = pybind11;
using namespace hardball;
using io::json;

namespace {

using Points = std::vector<std::vector<double>>;

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_py(v));
      return out;
    }
    default: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_py(v);
      return out;
    }
  }
}

Tolerances tolerances(const BoxDomain& box, std::optional<double> eps_act) {
  auto tol = Tolerances::for_domain(box);
  if (eps_act) tol.eps_act = *eps_act;
  return tol;
}

py::object trajectory(const Trajectory& tr) {
  json j = io::encode_summary(tr);
  json samples = json::array();
  for (const auto& s : tr.samples)
    samples.push_back({{"t", s.time}, {"tau", s.tau}, {"points", s.config.to_points()}});
  j["trajectory"] = samples;
  return to_py(j);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hard spheres in a box: tau, Farkas certificates, flows, chains and Betti numbers.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<NonUniquenessError>(m, "NonUniquenessError", base.ptr());
  py::register_exception<AmbiguityError>(m, "AmbiguityError", base.ptr());
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError", base.ptr());

  m.def("tau", [](const std::vector<double>& lengths, const Points& pts) {
    return tau(BoxDomain(lengths), Configuration::from_points(pts));
  }, py::arg("lengths"), py::arg("points"));

  m.def("active_set", [](const std::vector<double>& lengths, const Points& pts, std::optional<double> eps_act) {
    const BoxDomain box(lengths);
    return to_py(io::encode(active_set(box, Configuration::from_points(pts), tolerances(box, eps_act).eps_act)));
  }, py::arg("lengths"), py::arg("points"), py::arg("eps_act") = py::none());

  m.def("in_conf", [](const std::vector<double>& lengths, const Points& pts, double r) {
    return in_conf(BoxDomain(lengths), Configuration::from_points(pts), Radius(r));
  }, py::arg("lengths"), py::arg("points"), py::arg("r"));

  m.def("classify", [](const std::vector<double>& lengths, const Points& pts, std::optional<double> eps_act) {
    const BoxDomain box(lengths);
    const auto tol = tolerances(box, eps_act);
    return to_py(io::encode(classify(box, Configuration::from_points(pts), tol.eps_act, tol)));
  }, py::arg("lengths"), py::arg("points"), py::arg("eps_act") = py::none());

  m.def("ascend", [](const std::vector<double>& lengths, const Points& pts, double target, std::size_t max_iterations) {
    FlowOptions opts;
    opts.max_iterations = max_iterations;
    py::gil_scoped_release release;
    auto tr = ascend(BoxDomain(lengths), Configuration::from_points(pts), target, opts);
    py::gil_scoped_acquire acquire;
    return trajectory(tr);
  }, py::arg("lengths"), py::arg("points"), py::arg("target"), py::arg("max_iterations") = 10000);

  m.def("retract_level", [](const std::vector<double>& lengths, const std::vector<Points>& batch, double a, double b,
                            std::size_t threads) {
    std::vector<Configuration> configs;
    for (const auto& p : batch) configs.push_back(Configuration::from_points(p));
    FlowOptions opts;
    opts.threads = threads;
    RetractionReport rep;
    {
      py::gil_scoped_release release;
      rep = retract_level(BoxDomain(lengths), configs, a, b, opts);
    }
    py::list trs;
    for (const auto& tr : rep.trajectories) trs.append(to_py(io::encode_summary(tr)));
    py::dict out;
    out["complete"] = rep.complete();
    out["stalled"] = rep.stalled;
    out["trajectories"] = trs;
    return out;
  }, py::arg("lengths"), py::arg("configs"), py::arg("a"), py::arg("b"), py::arg("threads") = 1);

  m.def("chain_configuration", [](const std::vector<double>& lengths, std::size_t n) {
    const BoxDomain box(lengths);
    const auto res = chain_configuration(box, n, ChainSpec::make(box, n));
    return py::make_tuple(res.config.to_points(), res.r_star);
  }, py::arg("lengths"), py::arg("n"));

  m.def("sample_S_epsilon", [](const std::vector<double>& lengths, std::size_t n, double epsilon, std::uint64_t seed) {
    const BoxDomain box(lengths);
    const auto s = sample_S_epsilon(box, n, epsilon, seed);
    auto d = to_py(io::encode(s)).cast<py::dict>();
    d["tangent_dimension"] = tangent_rank(box, s).dimension;
    return d;
  }, py::arg("lengths"), py::arg("n"), py::arg("epsilon"), py::arg("seed") = 1);

  m.def("retract_chain", [](const std::vector<double>& lengths, std::size_t n, double epsilon, std::uint64_t seed,
                            double r, std::size_t steps) {
    const BoxDomain box(lengths);
    const auto s = sample_S_epsilon(box, n, epsilon, seed);
    std::vector<Points> out;
    for (const auto& c : retract_chain(box, s, r, s.r_prime, {steps, 1e-6})) out.push_back(c.to_points());
    return out;
  }, py::arg("lengths"), py::arg("n"), py::arg("epsilon"), py::arg("seed"), py::arg("r"), py::arg("steps") = 64);

  m.def("sigma_membership", [](const std::vector<double>& lengths, const Points& pts, double r, bool gap_from_first) {
    const BoxDomain box(lengths);
    SigmaOptions opts;
    opts.axis = box.shortest_axis();
    opts.gap_from_first = gap_from_first;
    return sigma_membership(box, Configuration::from_points(pts), r, opts);
  }, py::arg("lengths"), py::arg("points"), py::arg("r"), py::arg("gap_from_first") = false);

  m.def("intersection_witness", [](const std::vector<double>& lengths, std::size_t n, double epsilon,
                                   std::uint64_t seed, std::size_t starts) {
    const auto w = intersection_witness(BoxDomain(lengths), n, epsilon, seed, starts);
    py::dict out;
    out["points"] = w.config.to_points();
    out["transversality_rank"] = w.transversality_rank;
    out["spread"] = w.spread;
    out["starts"] = w.starts;
    return out;
  }, py::arg("lengths"), py::arg("n"), py::arg("epsilon"), py::arg("seed") = 1, py::arg("starts") = 16);

  m.def("poincare_conf", [](std::int64_t n, std::int64_t d) { return poincare_conf(n, d).coefficients; },
        py::arg("n"), py::arg("d"));
  m.def("harmonic", [](std::int64_t k) {
    const auto h = harmonic(k);
    return py::make_tuple(h.num(), h.den());
  }, py::arg("m"));
  m.def("k_multiplicity", [](const std::vector<double>& lengths) { return k_multiplicity(BoxDomain(lengths)); },
        py::arg("lengths"));
  m.def("betti_across_threshold", [](std::int64_t n, std::int64_t d, std::int64_t k) {
    return to_py(io::encode(betti_across_threshold(n, d, k)));
  }, py::arg("n"), py::arg("d"), py::arg("k"));

  m.def("connectivity_experiment", [](const std::vector<double>& lengths, std::size_t n, double r,
                                      std::size_t num_samples, std::uint64_t seed, std::size_t threads) {
    RoadmapOptions opts;
    opts.threads = threads;
    ConnectivityResult res;
    {
      py::gil_scoped_release release;
      res = connectivity_experiment(BoxDomain(lengths), n, r, num_samples, seed, opts);
    }
    py::dict out;
    out["components"] = res.components;
    out["nodes"] = res.roadmap.nodes.size();
    out["edges"] = res.roadmap.edges.size();
    return out;
  }, py::arg("lengths"), py::arg("n"), py::arg("r"), py::arg("num_samples"), py::arg("seed"), py::arg("threads") = 1);
}
