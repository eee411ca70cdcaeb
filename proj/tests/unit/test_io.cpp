#include <random>
#include <sstream>

#include "doctest.h"
#include "hardball/errors.hpp"
#include "hardball/io.hpp"
#include "hardball/svg.hpp"
#include "oracles.hpp"

using namespace hardball;
using io::json;

namespace {

const BoxDomain kBox({1.0, 2.0});
const Configuration kChain = Configuration::from_points({{0.25, 1.0}, {0.75, 1.0}});

json reparse(const json& j) { return json::parse(j.dump()); }

}  // namespace

TEST_CASE("domain and configuration round trip") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto c = oracle::uniform_config(kBox, 3, rng);
    CHECK(io::decode_configuration(reparse(io::encode(c))) == c);
  }
  CHECK(io::decode_domain(reparse(io::encode(kBox))) == kBox);
  const auto j = io::encode(kChain, 0.25);
  CHECK(j["points"][1][0] == 0.75);
  CHECK(*io::decode_radius(j) == 0.25);
  CHECK_FALSE(io::decode_radius(io::encode(kChain)));
  CHECK_THROWS_AS(io::decode_domain(json::parse(R"({"lengths": [1, -1]})")), ParameterError);
  CHECK_THROWS(io::decode_configuration(json::parse(R"({"pts": []})")));
}

TEST_CASE("active set document") {
  const auto s = active_set(kBox, kChain, 1e-9);
  const auto j = io::encode(s);
  CHECK(j["tau"] == 0.25);
  REQUIRE(j["constraints"].size() == 3);
  bool saw_pair = false;
  for (const auto& c : j["constraints"])
    if (c["kind"] == "pair") {
      saw_pair = true;
      CHECK(c["i"] == 1);
      CHECK(c["j"] == 2);
    } else {
      CHECK(c["kind"] == "wall");
      CHECK((c["face"] == "0-" || c["face"] == "0+"));
    }
  CHECK(saw_pair);
  const auto back = io::decode_active_set(reparse(j));
  CHECK(back.tau == s.tau);
  for (std::size_t k = 0; k < s.constraints.size(); ++k) {
    CHECK(back.constraints[k].same_parameter(s.constraints[k]));
    CHECK(back.constraints[k].value == s.constraints[k].value);
    CHECK(back.constraints[k].foot == s.constraints[k].foot);
  }
}

TEST_CASE("certificates round trip") {
  const auto b = *balance_weights(kBox, kChain, 1e-9);
  const auto bb = io::decode_balance(reparse(io::encode(b)));
  CHECK(bb.weights == b.weights);
  CHECK(bb.residual == b.residual);
  const auto a = *ascent_direction(kBox, Configuration::from_points({{0.3, 0.5}, {0.6, 1.5}}), 1e-9);
  const auto aa = io::decode_ascent(reparse(io::encode(a)));
  CHECK(aa.direction == a.direction);
  CHECK(aa.margin == a.margin);
  const auto cls = io::encode(classify(kBox, kChain));
  CHECK(cls["class"] == "balanced");
}

TEST_CASE("betti document") {
  const auto t = betti_across_threshold(3, 2, 1);
  const auto j = io::encode(t, 1.0 / 6);
  CHECK(j["above"] == json::array({1, 7, 0}));
  CHECK(j["cells_attached"] == 6);
  CHECK(j["cells_to_betti_N"] == 2);
  const auto back = io::decode_betti(reparse(j));
  CHECK(back.above == t.above);
  CHECK(back.below == t.below);
}

TEST_CASE("trajectory json lines") {
  BoxDomain unit({1.0, 1.0});
  const auto tr = ascend(unit, Configuration::from_points({{0.1, 0.5}}), 0.3);
  std::stringstream ss;
  io::write_jsonl(ss, tr);
  const auto back = io::read_jsonl(ss, 2);
  REQUIRE(back.size() == tr.samples.size());
  for (std::size_t k = 0; k < back.size(); ++k) {
    CHECK(back[k].time == tr.samples[k].time);
    CHECK(back[k].tau == tr.samples[k].tau);
    CHECK(back[k].config == tr.samples[k].config);
  }
}

TEST_CASE("missing and malformed files") {
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/box.json"), io::ParseError);
}

TEST_CASE("svg") {
  const auto s = svg::render_configuration(kBox, kChain, 0.25);
  CHECK(s.find("<svg") != std::string::npos);
  CHECK(s.find("<circle") != std::string::npos);
  const auto cls = classify(kBox, kChain);
  const auto g = svg::render_stress_graph(kBox, kChain, std::get<Balanced>(cls).graph);
  CHECK(g.find("<line") != std::string::npos);
}
