#include "hardball/svg.hpp"

#include <algorithm>
#include <sstream>

namespace hardball::svg {

namespace {

constexpr double kCanvas = 480.0;
constexpr double kMargin = 20.0;

struct Frame {
  double scale;
  double height;
  double x(double v) const { return kMargin + scale * v; }
  double y(double v) const { return kMargin + scale * (height - v); }
};

Frame frame_for(const BoxDomain& domain) {
  const double w = domain.length(0);
  const double h = domain.dim() > 1 ? domain.length(1) : domain.length(0);
  return Frame{kCanvas / std::max(w, h), h};
}

void open(std::ostringstream& os, const BoxDomain& domain, const Frame& f) {
  const double w = domain.length(0);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * kMargin + f.scale * w
     << "\" height=\"" << 2 * kMargin + f.scale * f.height << "\">\n";
  if (domain.dim() > 2) os << "<!-- projected onto the first two coordinates -->\n";
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << f.scale * w
     << "\" height=\"" << f.scale * f.height << "\" fill=\"none\" stroke=\"black\"/>\n";
}

double coord(const Configuration& c, std::size_t i, std::size_t m) {
  return m < c.dim() ? c(i, m) : 0.0;
}

void balls(std::ostringstream& os, const Configuration& config, double r, const Frame& f) {
  for (std::size_t i = 0; i < config.size(); ++i) {
    const double cx = f.x(coord(config, i, 0)), cy = f.y(coord(config, i, 1));
    os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << f.scale * r
       << "\" fill=\"#9ecae1\" fill-opacity=\"0.6\" stroke=\"#3182bd\"/>\n";
    os << "<text x=\"" << cx << "\" y=\"" << cy << "\" font-size=\"12\" text-anchor=\"middle\">"
       << i + 1 << "</text>\n";
  }
}

}  // namespace

std::string render_configuration(const BoxDomain& domain, const Configuration& config, double r) {
  std::ostringstream os;
  const Frame f = frame_for(domain);
  open(os, domain, f);
  balls(os, config, r, f);
  os << "</svg>\n";
  return os.str();
}

std::string render_stress_graph(const BoxDomain& domain, const Configuration& config,
                                const StressGraph& graph) {
  std::ostringstream os;
  const Frame f = frame_for(domain);
  open(os, domain, f);
  balls(os, config, graph.radius, f);
  double wmax = 0.0;
  for (const auto& e : graph.edges) wmax = std::max(wmax, e.weight);
  for (const auto& e : graph.edges) {
    const auto& a = graph.vertices[e.a].position;
    const auto& b = graph.vertices[e.b].position;
    const double width = wmax > 0.0 ? 1.0 + 7.0 * e.weight / wmax : 1.0;
    os << "<line x1=\"" << f.x(a[0]) << "\" y1=\"" << f.y(a.size() > 1 ? a[1] : 0.0) << "\" x2=\""
       << f.x(b[0]) << "\" y2=\"" << f.y(b.size() > 1 ? b[1] : 0.0)
       << "\" stroke=\"#de2d26\" stroke-width=\"" << width << "\"/>\n";
  }
  for (const auto& v : graph.vertices) {
    if (v.kind != StressVertex::Kind::Boundary) continue;
    os << "<circle cx=\"" << f.x(v.position[0]) << "\" cy=\""
       << f.y(v.position.size() > 1 ? v.position[1] : 0.0) << "\" r=\"3\" fill=\"black\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hardball::svg
