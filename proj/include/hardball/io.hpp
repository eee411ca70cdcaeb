#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hardball/flow.hpp"
#include "hardball/geometry.hpp"
#include "hardball/roadmap.hpp"
#include "hardball/stress.hpp"
#include "hardball/taut.hpp"
#include "hardball/topo.hpp"
#include "hardball/witness.hpp"

namespace hardball::io {

using json = nlohmann::json;

// Indices are 1-based in every document, 0-based in memory.

json encode(const BoxDomain& domain);
json encode(const Configuration& config, std::optional<double> radius = std::nullopt);
json encode(const Constraint& c);
json encode(const ActiveSet& set);
json encode(const AscentCertificate& cert);
json encode(const BalanceCertificate& cert);
json encode(const StressGraph& graph);
json encode(const BalanceReport& report);
json encode(const HullReport& report);
json encode(const Classification& cls);
json encode(const TrajectorySample& sample);
json encode_summary(const Trajectory& traj);
json encode(const BettiTables& tables, std::optional<double> r_star = std::nullopt);
json encode(const SphereSample& sample);
json encode(const ChainSpec& spec);
json encode(const Roadmap& roadmap);

BoxDomain decode_domain(const json& j);
Configuration decode_configuration(const json& j);
std::optional<double> decode_radius(const json& j);
Constraint decode_constraint(const json& j);
ActiveSet decode_active_set(const json& j);
AscentCertificate decode_ascent(const json& j);
BalanceCertificate decode_balance(const json& j);
TrajectorySample decode_sample(const json& j, std::size_t dim);
BettiTables decode_betti(const json& j);

/// One JSON object per line: {"t", "tau", "points" (flattened)}.
void write_jsonl(std::ostream& out, const Trajectory& traj);
std::vector<TrajectorySample> read_jsonl(std::istream& in, std::size_t dim);
void write_jsonl(std::ostream& out, const std::vector<Configuration>& path);

/// Parses a file; throws ParseError for missing files or malformed JSON.
json read_json_file(const std::string& path);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hardball::io
