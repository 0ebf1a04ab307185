// SPDX-License-Identifier: Apache-2.0
#include "ellrange/geom.hpp"

#include <cmath>
#include <string>

#include "ellrange/errors.hpp"
#include "ellrange/kernels.hpp"

namespace ellrange {
namespace {

void require_delta(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw DomainError("delta must lie in [0, 1), got " + std::to_string(delta));
  }
}

}  // namespace

EllipseParams EllipseParams::make(double delta) {
  require_delta(delta);
  EllipseParams p;
  p.delta = delta;
  p.a = 1.0 + delta;
  p.b = 1.0 - delta;
  p.focus = 2.0 * std::sqrt(delta);
  p.annulus_inner = delta;
  p.annulus_outer = 1.0;
  return p;
}

const char* to_string(Region r) noexcept {
  switch (r) {
    case Region::Interior:
      return "interior";
    case Region::Boundary:
      return "boundary";
    case Region::Exterior:
      return "exterior";
  }
  return "unknown";
}

Complex pi_map(Complex lambda, double delta) {
  if (lambda == Complex(0.0, 0.0)) throw DomainError("pi_map is undefined at 0");
  return lambda + delta / lambda;
}

Complex zhukovskii(Complex z, double delta) {
  if (z == Complex(0.0, 0.0)) throw DomainError("zhukovskii map is undefined at 0");
  return 1.0 / z + delta * z;
}

Complex ellipse_point(double t, double delta) {
  return {(1.0 + delta) * std::cos(t), (1.0 - delta) * std::sin(t)};
}

double ellipse_quadratic_form(Complex w, double delta) {
  const double a = 1.0 + delta;
  const double b = 1.0 - delta;
  return w.real() * w.real() / (a * a) + w.imag() * w.imag() / (b * b);
}

Region membership(Complex w, double delta, double tol) {
  require_delta(delta);
  const double q = ellipse_quadratic_form(w, delta);
  if (q < 1.0 - tol) return Region::Interior;
  if (std::abs(q - 1.0) <= tol) return Region::Boundary;
  return Region::Exterior;
}

std::vector<Region> membership(std::span<const Complex> points, double delta, double tol) {
  require_delta(delta);
  std::vector<double> x(points.size()), y(points.size()), q(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    x[i] = points[i].real();
    y[i] = points[i].imag();
  }
  kernels::quadratic_form(x, y, 1.0 + delta, 1.0 - delta, q);
  std::vector<Region> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (q[i] < 1.0 - tol) {
      out[i] = Region::Interior;
    } else if (std::abs(q[i] - 1.0) <= tol) {
      out[i] = Region::Boundary;
    } else {
      out[i] = Region::Exterior;
    }
  }
  return out;
}

double support_function(double theta, double delta) {
  const double a = 1.0 + delta;
  const double b = 1.0 - delta;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return std::sqrt(a * a * c * c + b * b * s * s);
}

std::vector<double> support_function(std::span<const double> thetas, double delta) {
  std::vector<double> c(thetas.size()), s(thetas.size()), h(thetas.size());
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    c[i] = std::cos(thetas[i]);
    s[i] = std::sin(thetas[i]);
  }
  kernels::support_values(c, s, 1.0 + delta, 1.0 - delta, h);
  return h;
}

double max_disc_radius(double t, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("max_disc_radius needs delta in (0, 1)");
  const double at = std::abs(t);
  if (at > 1.0 + delta) throw DomainError("|t| exceeds the semi-major axis");
  const double transition = 4.0 * delta / (1.0 + delta);
  if (at <= transition) {
    return (1.0 - delta) * std::sqrt(std::max(0.0, 1.0 - t * t / (4.0 * delta)));
  }
  return 1.0 + delta - at;
}

bool focal_disc_check(double t, Complex z, double delta, double tol) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("focal_disc_check needs delta in (0, 1)");
  const double focus = 2.0 * std::sqrt(delta);
  if (std::abs(t) > focus * (1.0 + 1e-15)) throw DomainError("t must lie between the foci");
  const double r = (1.0 - delta) * std::sqrt(std::max(0.0, 1.0 - t * t / (4.0 * delta)));
  if (std::abs(z) > r) return true;
  return membership(Complex(t, 0.0) + z, delta, tol) != Region::Exterior;
}

bool in_closed_annulus(Complex lambda, double delta, double tol) {
  const double r = std::abs(lambda);
  return r >= delta - tol && r <= 1.0 + tol;
}

}  // namespace ellrange
