#pragma once

#include <string>

#include "hardball/geometry.hpp"
#include "hardball/stress.hpp"

namespace hardball::svg {

/// Box outline and balls of radius r. For d > 2 only the first two
/// coordinates are drawn.
std::string render_configuration(const BoxDomain& domain, const Configuration& config, double r);

/// Configuration plus stress edges, stroke width proportional to weight.
std::string render_stress_graph(const BoxDomain& domain, const Configuration& config,
                                const StressGraph& graph);

}  // namespace hardball::svg
