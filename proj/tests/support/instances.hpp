// SPDX-License-Identifier: Apache-2.0
//
// Random problem instances with a prescribed side and margin of the support
// test. The scale is found with the library's inclusion_scale; the verdicts
// under test are always recomputed by the callers.
#pragma once

#include "ellrange/dilation.hpp"
#include "ellrange/numrange.hpp"
#include "testkit.hpp"

namespace testkit {

struct Instance {
  ellrange::ComplexMatrix T;
  double delta = 0.0;
  double gap = 0.0;  // support-test min gap
};

// Mix of Ginibre and strictly upper-triangular (non-normal) shapes, rescaled
// so W(T) sits strictly inside (or strictly outside) K_delta by `margin`.
inline Instance strict_instance(Gen& g, int n, double delta, bool inside, double margin = 1e-3) {
  for (;;) {
    ellrange::ComplexMatrix t0 = g.ginibre(n);
    if (g.integer(0, 2) == 0) {
      t0 = t0.triangularView<Eigen::Upper>();
      t0.diagonal() *= 0.5;
    }
    const double s = ellrange::inclusion_scale(t0, delta);
    if (!std::isfinite(s) || s <= 0) continue;
    const double factor = inside ? g.uniform(0.3, 0.97) : g.uniform(1.03, 1.6);
    const ellrange::ComplexMatrix t = factor * s * t0;
    const auto sv = ellrange::contains_support(t, delta);
    if (inside ? sv.min_gap < margin : sv.min_gap > -margin) continue;
    if (delta > 0 && inside && !ellrange::is_generic(t, delta).generic) continue;
    return {t, delta, sv.min_gap};
  }
}

inline Instance strict_inside(Gen& g, int n, double delta, double margin = 1e-3) {
  return strict_instance(g, n, delta, true, margin);
}

}  // namespace testkit
