// SPDX-License-Identifier: Apache-2.0
//
// Numerical range W(T) = { <Tu, u> : |u| = 1 } and two independent tests of
// W(T) in K_delta:
//   * support sweep: lambda_max(Re(e^{-i theta} T)) <= h(theta) for all theta,
//   * Herglotz test: Re G(z) >= 0 on the unit circle, where
//       G(z) = z f'(z) (T - f(z))^{-1},  f(z) = 1/z + delta z.
#pragma once

#include <vector>

#include "ellrange/geom.hpp"
#include "ellrange/mats.hpp"

namespace ellrange {

inline constexpr int kDefaultAngles = 512;
inline constexpr int kDefaultCirclePoints = 1024;

struct SupportSample {
  double theta = 0.0;
  double support = 0.0;  // lambda_max(Re(e^{-i theta} T))
  Complex point;         // <T v, v> for the top unit eigenvector v
};

/// Top eigenpair of Re(e^{-i theta} T), as a boundary point of W(T).
SupportSample support_sample(const ComplexMatrix& t, double theta);

struct RangeBoundary {
  std::vector<Complex> points;
  std::vector<double> angles;
  std::vector<double> support_values;
};

/// Boundary of W(T) sampled at num_angles uniformly spaced support directions.
RangeBoundary range_boundary(const ComplexMatrix& t, int num_angles = kDefaultAngles);

/// w(T) = max |<Tu, u>|, grid search refined by golden section.
double numerical_radius(const ComplexMatrix& t, int num_angles = kDefaultAngles);

enum class Inclusion { Inside, Boundary, Outside };
const char* to_string(Inclusion v) noexcept;

struct SupportVerdict {
  Inclusion verdict = Inclusion::Inside;
  double min_gap = 0.0;      // min over theta of h(theta) - lambda_max(theta)
  double worst_theta = 0.0;  // angle attaining min_gap
  Complex witness;           // boundary point of W(T) at worst_theta
};

/// Inside when min_gap >= margin, Outside when min_gap < -margin, otherwise
/// Boundary. The grid minimum is refined by golden section.
SupportVerdict contains_support(const ComplexMatrix& t, double delta,
                                int num_angles = kDefaultAngles, double margin = 1e-9);

/// Largest s >= 0 with W(sT) in K_delta (infinity when W(T) = {0}).
double inclusion_scale(const ComplexMatrix& t, double delta, int num_angles = kDefaultAngles);

/// sup_theta |lambda_max(theta) - h(theta)|: Hausdorff distance between the
/// convex sets W(T) and K_delta.
double hausdorff_to_ellipse(const ComplexMatrix& t, double delta, int num_angles = kDefaultAngles);

struct HerglotzReport {
  bool nonnegative = true;
  double min_eigenvalue = 0.0;  // min over grid of lambda_min(Re G(z))
  double worst_angle = 0.0;     // arg z at the minimum
};

/// Evaluates Re G on the circle grid. Throws SpectrumOutsideError when an
/// eigenvalue of T is exterior to K_delta and SingularResolventError when
/// T - f(z) is numerically singular at a grid point.
HerglotzReport herglotz_check(const ComplexMatrix& t, double delta,
                              int num_circle_points = kDefaultCirclePoints, double tol = 1e-9);

bool contains_herglotz(const ComplexMatrix& t, double delta,
                       int num_circle_points = kDefaultCirclePoints, double tol = 1e-9);

/// G(z) itself (G(0) = I).
ComplexMatrix herglotz_function(const ComplexMatrix& t, double delta, Complex z);

}  // namespace ellrange
