// SPDX-License-Identifier: Apache-2.0
#include "ellrange/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ellrange/errors.hpp"
#include "ellrange/parallel.hpp"
#include "optimize.hpp"

namespace ellrange {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_angles(int n) {
  if (n < 8) throw DomainError("need at least 8 angles, got " + std::to_string(n));
}

std::vector<double> uniform_angles(int n) {
  std::vector<double> a(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] = kTwoPi * k / n;
  return a;
}

std::vector<SupportSample> sweep(const ComplexMatrix& t, const std::vector<double>& angles) {
  std::vector<SupportSample> out(angles.size());
  parallel_for(angles.size(), [&](std::size_t k) { out[k] = support_sample(t, angles[k]); });
  return out;
}

double top_eigenvalue(const ComplexMatrix& t, double theta) {
  const Complex rot = std::polar(1.0, -theta);
  const ComplexMatrix h = 0.5 * (rot * t + std::conj(rot) * t.adjoint());
  return lambda_max(h);
}

// Indices of circular-grid local minima of v, lowest first.
std::vector<std::size_t> local_minima(const std::vector<double>& v, std::size_t keep) {
  const std::size_t n = v.size();
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < n; ++k) {
    const double prev = v[(k + n - 1) % n];
    const double next = v[(k + 1) % n];
    if (v[k] <= prev && v[k] <= next) idx.push_back(k);
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return v[a] < v[b] || (v[a] == v[b] && a < b);
  });
  if (idx.size() > keep) idx.resize(keep);
  return idx;
}

}  // namespace

const char* to_string(Inclusion v) noexcept {
  switch (v) {
    case Inclusion::Inside:
      return "inside";
    case Inclusion::Boundary:
      return "boundary";
    case Inclusion::Outside:
      return "outside";
  }
  return "unknown";
}

SupportSample support_sample(const ComplexMatrix& t, double theta) {
  const Complex rot = std::polar(1.0, -theta);
  const ComplexMatrix h = 0.5 * (rot * t + std::conj(rot) * t.adjoint());
  const HermitianEigen eig = hermitian_eigen(h);
  const Eigen::Index top = eig.values.size() - 1;
  const ComplexVector v = eig.vectors.col(top);
  SupportSample s;
  s.theta = theta;
  s.support = eig.values(top);
  s.point = v.dot(t * v);  // v* T v
  return s;
}

RangeBoundary range_boundary(const ComplexMatrix& t, int num_angles) {
  require_square(t, "T");
  require_angles(num_angles);
  RangeBoundary rb;
  rb.angles = uniform_angles(num_angles);
  const auto samples = sweep(t, rb.angles);
  rb.points.reserve(samples.size());
  rb.support_values.reserve(samples.size());
  for (const auto& s : samples) {
    rb.points.push_back(s.point);
    rb.support_values.push_back(s.support);
  }
  return rb;
}

double numerical_radius(const ComplexMatrix& t, int num_angles) {
  require_square(t, "T");
  require_angles(num_angles);
  const auto angles = uniform_angles(num_angles);
  const auto samples = sweep(t, angles);
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double a = std::abs(samples[k].point);
    if (a > best_abs) {
      best_abs = a;
      best = k;
    }
  }
  // w(T) = max_theta lambda_max(Re(e^{-i theta} T)).
  const double step = kTwoPi / num_angles;
  const double theta0 = std::arg(samples[best].point);
  const auto [arg, val] = detail::golden_max(
      [&](double th) { return top_eigenvalue(t, th); }, theta0 - step, theta0 + step, 1e-12);
  (void)arg;
  return std::max(best_abs, val);
}

SupportVerdict contains_support(const ComplexMatrix& t, double delta, int num_angles,
                                double margin) {
  require_square(t, "T");
  require_angles(num_angles);
  EllipseParams::make(delta);
  const auto angles = uniform_angles(num_angles);
  const auto samples = sweep(t, angles);
  const auto h = support_function(angles, delta);

  std::vector<double> gap(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) gap[k] = h[k] - samples[k].support;

  SupportVerdict out;
  std::size_t worst = 0;
  for (std::size_t k = 1; k < gap.size(); ++k)
    if (gap[k] < gap[worst]) worst = k;
  out.min_gap = gap[worst];
  out.worst_theta = angles[worst];
  out.witness = samples[worst].point;

  const double step = kTwoPi / num_angles;
  auto neg_gap = [&](double th) { return top_eigenvalue(t, th) - support_function(th, delta); };
  for (std::size_t k : local_minima(gap, 4)) {
    const auto [th, v] = detail::golden_max(neg_gap, angles[k] - step, angles[k] + step, 1e-12);
    if (-v < out.min_gap) {
      out.min_gap = -v;
      out.worst_theta = th;
      out.witness = support_sample(t, th).point;
    }
  }

  if (out.min_gap >= margin) {
    out.verdict = Inclusion::Inside;
  } else if (out.min_gap < -margin) {
    out.verdict = Inclusion::Outside;
  } else {
    out.verdict = Inclusion::Boundary;
  }
  return out;
}

double inclusion_scale(const ComplexMatrix& t, double delta, int num_angles) {
  require_square(t, "T");
  require_angles(num_angles);
  EllipseParams::make(delta);
  const auto angles = uniform_angles(num_angles);
  const auto samples = sweep(t, angles);
  const auto h = support_function(angles, delta);
  std::vector<double> ratio(angles.size(), std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < angles.size(); ++k) {
    if (samples[k].support > 0.0) ratio[k] = h[k] / samples[k].support;
  }
  double best = *std::min_element(ratio.begin(), ratio.end());
  if (!std::isfinite(best)) return best;
  const double step = kTwoPi / num_angles;
  auto neg_ratio = [&](double th) {
    const double s = top_eigenvalue(t, th);
    return s > 0.0 ? -support_function(th, delta) / s : -std::numeric_limits<double>::infinity();
  };
  for (std::size_t k : local_minima(ratio, 4)) {
    const auto [th, v] = detail::golden_max(neg_ratio, angles[k] - step, angles[k] + step, 1e-12);
    (void)th;
    best = std::min(best, -v);
  }
  return best;
}

double hausdorff_to_ellipse(const ComplexMatrix& t, double delta, int num_angles) {
  require_square(t, "T");
  require_angles(num_angles);
  EllipseParams::make(delta);
  const auto angles = uniform_angles(num_angles);
  const auto samples = sweep(t, angles);
  const auto h = support_function(angles, delta);
  std::vector<double> neg_dev(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k)
    neg_dev[k] = -std::abs(samples[k].support - h[k]);
  double best = -*std::min_element(neg_dev.begin(), neg_dev.end());
  const double step = kTwoPi / num_angles;
  auto dev = [&](double th) { return std::abs(top_eigenvalue(t, th) - support_function(th, delta)); };
  for (std::size_t k : local_minima(neg_dev, 4)) {
    const auto [th, v] = detail::golden_max(dev, angles[k] - step, angles[k] + step, 1e-12);
    (void)th;
    best = std::max(best, v);
  }
  return best;
}

ComplexMatrix herglotz_function(const ComplexMatrix& t, double delta, Complex z) {
  require_square(t, "T");
  const Eigen::Index n = t.rows();
  if (z == Complex(0.0, 0.0)) return identity(n);
  const Complex f = zhukovskii(z, delta);
  const Complex zfp = delta * z - 1.0 / z;
  const ComplexMatrix r = t - f * identity(n);
  Eigen::JacobiSVD<ComplexMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues()(n - 1);
  if (smin <= 1e-12 * std::max(1.0, std::abs(f) + operator_norm(t))) {
    throw SingularResolventError("T - f(z) is numerically singular at z = (" +
                                 std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
  }
  return zfp * svd.solve(identity(n));
}

HerglotzReport herglotz_check(const ComplexMatrix& t, double delta, int num_circle_points,
                              double tol) {
  require_square(t, "T");
  require_angles(num_circle_points);
  EllipseParams::make(delta);
  for (const Complex& mu : spectrum(t)) {
    if (membership(mu, delta, 1e-9) == Region::Exterior) {
      throw SpectrumOutsideError("eigenvalue (" + std::to_string(mu.real()) + ", " +
                                 std::to_string(mu.imag()) + ") lies outside K_delta");
    }
  }
  const auto angles = uniform_angles(num_circle_points);
  std::vector<double> lmin(angles.size());
  parallel_for(angles.size(), [&](std::size_t k) {
    const ComplexMatrix g = herglotz_function(t, delta, std::polar(1.0, angles[k]));
    lmin[k] = lambda_min(hermitian_part(g));
  });
  HerglotzReport rep;
  std::size_t worst = 0;
  for (std::size_t k = 1; k < lmin.size(); ++k)
    if (lmin[k] < lmin[worst]) worst = k;
  rep.min_eigenvalue = lmin[worst];
  rep.worst_angle = angles[worst];
  rep.nonnegative = rep.min_eigenvalue >= -tol;
  return rep;
}

bool contains_herglotz(const ComplexMatrix& t, double delta, int num_circle_points, double tol) {
  return herglotz_check(t, delta, num_circle_points, tol).nonnegative;
}

}  // namespace ellrange
