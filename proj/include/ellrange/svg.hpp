// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "ellrange/numrange.hpp"

namespace ellrange {

/// SVG 1.1 drawing of the ellipse, the W(T) boundary polyline (a dot when the
/// range is a single point) and the foci. The viewBox is the square
/// [-1.2(1+d), 1.2(1+d)]^2 and the y axis points up.
std::string render_range_svg(const RangeBoundary& boundary, double delta, double hausdorff);

}  // namespace ellrange
