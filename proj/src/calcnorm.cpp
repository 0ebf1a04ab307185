// SPDX-License-Identifier: Apache-2.0
#include "ellrange/calcnorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ellrange/dpops.hpp"
#include "ellrange/errors.hpp"
#include "ellrange/geom.hpp"
#include "ellrange/kernels.hpp"
#include "ellrange/numrange.hpp"
#include "ellrange/parallel.hpp"
#include "optimize.hpp"

namespace ellrange {
namespace {

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

ComplexMatrix ginibre(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0 / std::numbers::sqrt2);
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(nd(rng), nd(rng));
  return g;
}

ComplexMatrix haar_unitary(int n, std::mt19937_64& rng) {
  const ComplexMatrix g = ginibre(n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

constexpr std::uint64_t kBfdStream = 0xbfd;
constexpr std::uint64_t kDpStream = 0xd9;
constexpr std::uint64_t kUnitaryStream = 0x5e;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Running max with tie-break by smaller index.
NormEstimate reduce(const std::vector<double>& values, const std::vector<ComplexMatrix>& mats,
                    const std::vector<std::string>& kinds, std::uint64_t seed) {
  NormEstimate est;
  est.seed = seed;
  est.samples_used = static_cast<int>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) continue;
    if (est.witness_index < 0 || values[i] > est.lower_bound) {
      est.lower_bound = values[i];
      est.witness_index = static_cast<int>(i);
    }
  }
  if (est.witness_index >= 0) {
    est.witness = mats[static_cast<std::size_t>(est.witness_index)];
    est.witness_kind = kinds[static_cast<std::size_t>(est.witness_index)];
  }
  return est;
}

}  // namespace

Complex PolyFn::operator()(Complex s) const {
  Complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * s + *it;
  return acc;
}

ComplexMatrix PolyFn::operator()(const ComplexMatrix& t) const {
  require_square(t, "T");
  const Eigen::Index n = t.rows();
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * t;
    acc.diagonal().array() += *it;
  }
  return acc;
}

Complex LaurentFn::coeff(int k) const {
  const auto it = coeffs.find(k);
  return it == coeffs.end() ? Complex(0.0) : it->second;
}

Complex LaurentFn::operator()(Complex lambda) const {
  Complex acc = 0.0;
  for (const auto& [k, c] : coeffs) acc += c * std::pow(lambda, k);
  return acc;
}

ComplexMatrix LaurentFn::operator()(const ComplexMatrix& x) const {
  require_square(x, "X");
  const Eigen::Index n = x.rows();
  ComplexMatrix result = ComplexMatrix::Zero(n, n);
  if (coeffs.empty()) return result;
  const int hi = std::max(0, coeffs.rbegin()->first);
  const int lo = std::min(0, coeffs.begin()->first);
  // Nonnegative powers: Horner in X.
  for (int k = hi; k >= 0; --k) {
    result = result * x;
    result.diagonal().array() += coeff(k);
  }
  if (lo < 0) {
    const Eigen::FullPivLU<ComplexMatrix> lu(x);
    if (!lu.isInvertible()) throw SingularError("X is singular");
    const ComplexMatrix x_inv = lu.inverse();
    // sum_{k>=1} c_{-k} X^{-k} = X^-1 (c_{-1} + X^-1 (c_{-2} + ...)).
    ComplexMatrix neg = ComplexMatrix::Zero(n, n);
    for (int k = -lo; k >= 1; --k) {
      neg.diagonal().array() += coeff(-k);
      neg = x_inv * neg;
    }
    result += neg;
  }
  return result;
}

LaurentFn pi_sharp(const PolyFn& phi, double delta) {
  LaurentFn psi;
  psi.delta = delta;
  for (int k = 0; k <= phi.degree(); ++k) {
    const Complex c = phi.coeffs[static_cast<std::size_t>(k)];
    if (c == Complex(0.0)) continue;
    for (int j = 0; j <= k; ++j) {
      psi.coeffs[k - 2 * j] += c * binomial(k, j) * std::pow(delta, j);
    }
  }
  return psi;
}

double symmetry_defect(const LaurentFn& psi, double delta) {
  double worst = 0.0;
  for (const auto& [k, c] : psi.coeffs) {
    const int a = std::abs(k);
    const double d = std::abs(psi.coeff(-a) - std::pow(delta, a) * psi.coeff(a));
    worst = std::max(worst, d);
    (void)c;
  }
  return worst;
}

bool is_symmetric(const LaurentFn& psi, double delta, double tol) {
  for (const auto& [k, c] : psi.coeffs) {
    (void)c;
    const int a = std::abs(k);
    const Complex pos = std::pow(delta, a) * psi.coeff(a);
    const Complex neg = psi.coeff(-a);
    if (std::abs(neg - pos) > tol * std::max({1.0, std::abs(pos), std::abs(neg)})) return false;
  }
  return true;
}

ComplexMatrix random_unitary(int n, std::uint64_t seed, std::uint64_t stream) {
  auto rng = stream_rng(seed, kUnitaryStream, stream);
  return haar_unitary(n, rng);
}

ComplexMatrix bfd_sample(double delta, int n_dim, std::uint64_t seed, int index,
                         std::string* kind) {
  if (n_dim < 1) throw DomainError("n_dim must be at least 1");
  EllipseParams::make(delta);
  auto rng = stream_rng(seed, kBfdStream, static_cast<std::uint64_t>(index));
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const double shrink = 1.0 - 1e-7;
  auto set_kind = [&](const char* k) {
    if (kind) *kind = k;
  };
  if (index == 0) {
    set_kind("vertex-normal");
    ComplexMatrix t = ComplexMatrix::Zero(n_dim, n_dim);
    t(0, 0) = (1.0 + delta) * shrink;
    for (int i = 1; i < n_dim; ++i) t(i, i) = ellipse_point(std::numbers::pi * i / n_dim, delta) * 0.5;
    return t;
  }
  if (index == 1) {
    set_kind("boundary-normal");
    ComplexMatrix t = ComplexMatrix::Zero(n_dim, n_dim);
    for (int i = 0; i < n_dim; ++i)
      t(i, i) = ellipse_point(2.0 * std::numbers::pi * ud(rng), delta) * shrink;
    return t;
  }
  if (index == 2 && n_dim >= 2 && delta > 0.0) {
    set_kind("focal-boundary");
    ComplexMatrix t = ComplexMatrix::Zero(n_dim, n_dim);
    t.topLeftCorner(2, 2) = fact103_matrix(delta) * shrink;
    return t;
  }
  set_kind("ginibre");
  ComplexMatrix t = ginibre(n_dim, rng);
  const double s = inclusion_scale(t, delta);
  // Half the samples sit at the inclusion limit, the rest are spread inward.
  const double r = (index % 2 == 0) ? 1.0 : std::cbrt(ud(rng));
  t *= s * shrink * r;
  for (int k = 0; k < 40 && contains_support(t, delta, kDefaultAngles, 0.0).verdict != Inclusion::Inside; ++k)
    t *= 1.0 - 1e-6;
  return t;
}

NormEstimate sample_bfd(const PolyFn& phi, double delta, int n_dim, int n_samples,
                        std::uint64_t seed) {
  if (n_samples < 1) throw DomainError("n_samples must be positive");
  const auto count = static_cast<std::size_t>(n_samples);
  std::vector<double> values(count, -std::numeric_limits<double>::infinity());
  std::vector<ComplexMatrix> mats(count);
  std::vector<std::string> kinds(count);
  parallel_for(count, [&](std::size_t i) {
    mats[i] = bfd_sample(delta, n_dim, seed, static_cast<int>(i), &kinds[i]);
    if (contains_support(mats[i], delta, kDefaultAngles, 0.0).verdict == Inclusion::Inside)
      values[i] = operator_norm(phi(mats[i]));
  }, 16);
  return reduce(values, mats, kinds, seed);
}

ComplexMatrix dp_sample(double delta, int n_dim, std::uint64_t seed, int index) {
  if (n_dim < 1) throw DomainError("n_dim must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  auto rng = stream_rng(seed, kDpStream, static_cast<std::uint64_t>(index));
  constexpr double eps = 1e-6;
  if (index % 4 == 0) return (1.0 - eps) * haar_unitary(n_dim, rng);
  std::uniform_real_distribution<double> ud(delta + eps, 1.0 - eps);
  const ComplexMatrix u = haar_unitary(n_dim, rng);
  const ComplexMatrix v = haar_unitary(n_dim, rng);
  RealVector s(n_dim);
  for (int i = 0; i < n_dim; ++i) s(i) = ud(rng);
  return u * s.cast<Complex>().asDiagonal() * v.adjoint();
}

NormEstimate sample_dp(const LaurentFn& psi, double delta, int n_dim, int n_samples,
                       std::uint64_t seed, const std::vector<ComplexMatrix>& extra,
                       double extra_tol) {
  if (n_samples < 1) throw DomainError("n_samples must be positive");
  const auto count = static_cast<std::size_t>(n_samples) + extra.size();
  std::vector<double> values(count, -std::numeric_limits<double>::infinity());
  std::vector<ComplexMatrix> mats(count);
  std::vector<std::string> kinds(count);
  parallel_for(count, [&](std::size_t i) {
    if (i < static_cast<std::size_t>(n_samples)) {
      mats[i] = dp_sample(delta, n_dim, seed, static_cast<int>(i));
      kinds[i] = (i % 4 == 0) ? "unitary" : "svd";
      if (!is_douglas_paulsen(mats[i], delta, 0.0).is_dp) return;
      for (const Complex& mu : spectrum(mats[i]))
        if (!in_closed_annulus(mu, delta, 0.0)) return;
    } else {
      mats[i] = extra[i - static_cast<std::size_t>(n_samples)];
      kinds[i] = "extra";
      if (!is_douglas_paulsen(mats[i], delta, extra_tol).is_dp) return;
    }
    values[i] = operator_norm(psi(mats[i]));
  }, 16);
  return reduce(values, mats, kinds, seed);
}

double delyon_bound(double delta) {
  EllipseParams::make(delta);
  const double diam = 2.0 * (1.0 + delta);
  const double area = std::numbers::pi * (1.0 + delta) * (1.0 - delta);
  const double base = 2.0 * std::numbers::pi * diam * diam / area;
  const double k = 3.0 + base * base * base;
  return std::isfinite(k) ? k : std::numeric_limits<double>::infinity();
}

double sup_on_Gdelta(const PolyFn& phi, double delta, int grid) {
  EllipseParams::make(delta);
  if (grid < 8) throw DomainError("grid must have at least 8 points");
  if (phi.coeffs.empty()) return 0.0;
  const auto n = static_cast<std::size_t>(grid);
  std::vector<double> x(n), y(n), v(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex w = ellipse_point(2.0 * std::numbers::pi * static_cast<double>(k) / grid, delta);
    x[k] = w.real();
    y[k] = w.imag();
  }
  kernels::poly_abs(phi.coeffs, x, y, v);
  const double step = 2.0 * std::numbers::pi / grid;
  auto f = [&](double t) { return std::abs(phi(ellipse_point(t, delta))); };
  // Refine the largest few local maxima.
  std::vector<std::size_t> peaks;
  for (std::size_t k = 0; k < n; ++k) {
    if (v[k] >= v[(k + n - 1) % n] && v[k] >= v[(k + 1) % n]) peaks.push_back(k);
  }
  std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) {
    return v[a] > v[b] || (v[a] == v[b] && a < b);
  });
  if (peaks.size() > 8) peaks.resize(8);
  double best = *std::max_element(v.begin(), v.end());
  for (std::size_t k : peaks) {
    const double t0 = step * static_cast<double>(k);
    best = std::max(best, detail::golden_max(f, t0 - step, t0 + step, 1e-13).second);
  }
  return best;
}

bool bidisc_slice_member(Complex s, Complex p) {
  return std::abs(s - std::conj(s) * p) < 1.0 - std::norm(p);
}

}  // namespace ellrange
