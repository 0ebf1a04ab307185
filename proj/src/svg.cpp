// SPDX-License-Identifier: Apache-2.0
#include "ellrange/svg.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "ellrange/geom.hpp"

namespace ellrange {
namespace {

std::string f6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string render_range_svg(const RangeBoundary& boundary, double delta, double hausdorff) {
  const EllipseParams p = EllipseParams::make(delta);
  const double half = 1.2 * p.a;
  const double stroke = half / 300.0;
  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << f6(-half) << ' '
    << f6(-half) << ' ' << f6(2 * half) << ' ' << f6(2 * half) << "\" width=\"600\" height=\"600\">\n";
  s << "<!-- delta=" << delta << " hausdorff=" << hausdorff << " angles=" << boundary.angles.size()
    << " -->\n";
  s << "<g transform=\"scale(1,-1)\">\n";
  s << "<line x1=\"" << f6(-half) << "\" y1=\"0\" x2=\"" << f6(half) << "\" y2=\"0\" stroke=\"#bbb\" stroke-width=\""
    << f6(stroke) << "\"/>\n";
  s << "<line x1=\"0\" y1=\"" << f6(-half) << "\" x2=\"0\" y2=\"" << f6(half) << "\" stroke=\"#bbb\" stroke-width=\""
    << f6(stroke) << "\"/>\n";
  s << "<ellipse id=\"gamma-delta\" cx=\"0\" cy=\"0\" rx=\"" << f6(p.a) << "\" ry=\"" << f6(p.b)
    << "\" fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"" << f6(2 * stroke) << "\"/>\n";
  for (double fx : {-p.focus, p.focus}) {
    s << "<circle class=\"focus\" cx=\"" << f6(fx) << "\" cy=\"0\" r=\"" << f6(3 * stroke)
      << "\" fill=\"#1f5fbf\"/>\n";
  }

  double spread = 0.0;
  for (const Complex& w : boundary.points)
    spread = std::max(spread, std::abs(w - boundary.points.front()));
  if (boundary.points.empty()) {
    // nothing to draw
  } else if (spread <= 1e-12 * std::max(1.0, std::abs(boundary.points.front()))) {
    const Complex w = boundary.points.front();
    s << "<circle id=\"range\" cx=\"" << f6(w.real()) << "\" cy=\"" << f6(w.imag()) << "\" r=\""
      << f6(4 * stroke) << "\" fill=\"#c0392b\"/>\n";
  } else {
    s << "<polygon id=\"range\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"" << f6(stroke)
      << "\" points=\"";
    for (const Complex& w : boundary.points) s << f6(w.real()) << ',' << f6(w.imag()) << ' ';
    s << "\"/>\n";
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

}  // namespace ellrange
