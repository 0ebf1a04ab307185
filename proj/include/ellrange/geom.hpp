// SPDX-License-Identifier: Apache-2.0
//
// Geometry of the closed elliptical set K_delta = { x^2/(1+d)^2 + y^2/(1-d)^2 <= 1 },
// its boundary ellipse, the annulus R_delta = { d < |z| < 1 } and the two
// conformal maps relating them:
//   pi(lambda)   = lambda + d / lambda      (R_delta -> G_delta, two to one)
//   zhukovskii(z) = 1 / z + d z = pi(1 / z)
#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ellrange {

using Complex = std::complex<double>;

struct EllipseParams {
  double delta = 0.0;
  double a = 1.0;        // semi-major axis, 1 + delta
  double b = 1.0;        // semi-minor axis, 1 - delta
  double focus = 0.0;    // foci at +-focus = +-2 sqrt(delta)
  double annulus_inner = 0.0;
  double annulus_outer = 1.0;

  /// Throws DomainError unless 0 <= delta < 1.
  static EllipseParams make(double delta);
};

enum class Region { Interior, Boundary, Exterior };

const char* to_string(Region r) noexcept;

Complex pi_map(Complex lambda, double delta);
Complex zhukovskii(Complex z, double delta);

/// Point of the boundary ellipse at parameter t: (1+d) cos t + i (1-d) sin t.
Complex ellipse_point(double t, double delta);

/// q(w) = x^2/(1+d)^2 + y^2/(1-d)^2.
double ellipse_quadratic_form(Complex w, double delta);

/// Classifies w against K_delta using q(w): Interior when q < 1 - tol,
/// Boundary when |q - 1| <= tol.
Region membership(Complex w, double delta, double tol = 1e-12);

/// Vectorized membership over a point list.
std::vector<Region> membership(std::span<const Complex> points, double delta, double tol = 1e-12);

/// h(theta) = max_{w in K_delta} Re(e^{-i theta} w).
double support_function(double theta, double delta);

/// Support values on a list of angles (batched kernel).
std::vector<double> support_function(std::span<const double> thetas, double delta);

/// Radius of the largest disc centred at (t, 0) inside K_delta. Requires
/// |t| <= 1 + delta and delta in (0, 1).
double max_disc_radius(double t, double delta);

/// Checks |z| <= (1-d) sqrt(1 - t^2/(4d))  =>  t + z in K_delta, for
/// t in [-2 sqrt(d), 2 sqrt(d)].
bool focal_disc_check(double t, Complex z, double delta, double tol = 1e-12);

/// Membership of lambda in the closed annulus delta <= |lambda| <= 1 (with tol).
bool in_closed_annulus(Complex lambda, double delta, double tol = 1e-12);

}  // namespace ellrange
