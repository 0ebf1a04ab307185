// SPDX-License-Identifier: Apache-2.0
#include "ellrange/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ellrange/errors.hpp"
#include "ellrange/geom.hpp"

namespace ellrange {
namespace {

void require_delta_open(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("delta must lie in (0, 1), got " + std::to_string(delta));
  }
}

std::string fmt(Complex z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

}  // namespace

GenericityReport is_generic(const ComplexMatrix& t, double delta, double sep_tol) {
  require_square(t, "T");
  require_delta_open(delta);
  GenericityReport rep;
  const auto mu = spectrum(t);
  rep.min_gap = min_pairwise_gap(mu);
  rep.min_focal_distance = std::numeric_limits<double>::infinity();
  for (const Complex& m : mu)
    rep.min_focal_distance = std::min(rep.min_focal_distance, std::abs(m * m - 4.0 * delta));

  for (const Complex& m : mu) {
    if (membership(m, delta, 1e-12) == Region::Exterior) {
      rep.reason = "eigenvalue " + fmt(m) + " lies outside K_delta";
      return rep;
    }
  }
  if (rep.min_gap <= sep_tol) {
    rep.reason = "eigenvalues are not distinct (min gap " + std::to_string(rep.min_gap) + ")";
    return rep;
  }
  if (rep.min_focal_distance <= sep_tol) {
    rep.reason = "4 delta is an eigenvalue of T^2 (focal eigenvalue)";
    return rep;
  }
  rep.generic = true;
  return rep;
}

Prepair make_prepair(const ComplexMatrix& t, double delta, BranchRule branch, double sep_tol) {
  require_square(t, "T");
  require_delta_open(delta);
  const EigenDecomposition dec = diagonalize(t, sep_tol);
  const Eigen::Index n = t.rows();
  Prepair p;
  p.eigen_data.reserve(static_cast<std::size_t>(n));
  ComplexVector l1(n), l2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex mu = dec.values[static_cast<std::size_t>(i)];
    if (std::abs(mu * mu - 4.0 * delta) <= sep_tol) {
      throw NonGenericError("eigenvalue " + fmt(mu) + " is a focus: mu^2 = 4 delta");
    }
    const Complex disc = std::sqrt(mu * mu - 4.0 * delta);
    Complex a = 0.5 * (mu + disc);
    Complex b = 0.5 * (mu - disc);
    // Re-derive the smaller root from the product so both satisfy a b = delta.
    if (std::abs(b) > std::abs(a)) std::swap(a, b);
    b = delta / a;
    const double ra = std::abs(a);
    const double rb = std::abs(b);
    bool a_first = true;
    if (std::abs(ra - rb) <= 1e-12 * std::max(1.0, ra)) a_first = a.imag() >= b.imag();
    if (!a_first) std::swap(a, b);
    if (branch == BranchRule::Swapped) std::swap(a, b);
    l1(i) = a;
    l2(i) = b;
    p.eigen_data.push_back({mu, a, b, dec.vectors.col(i)});
  }
  const ComplexMatrix& v = dec.vectors;
  const Eigen::PartialPivLU<ComplexMatrix> lu(v);
  p.X1 = v * l1.asDiagonal() * lu.inverse();
  p.X2 = v * l2.asDiagonal() * lu.inverse();
  p.Q = p.X1 - p.X2;
  return p;
}

ComplexMatrix u_matrix(Eigen::Index n) {
  const double s = 1.0 / std::numbers::sqrt2;
  ComplexMatrix u(2 * n, 2 * n);
  const ComplexMatrix i = identity(n);
  u << s * i, s * i, s * i, -s * i;
  return u;
}

ComplexMatrix j_matrix(Eigen::Index n) {
  ComplexMatrix j = identity(2 * n);
  j.bottomRightCorner(n, n) *= -1.0;
  return j;
}

ComplexMatrix z_matrix(const ComplexMatrix& t, const ComplexMatrix& q, double delta, double tol) {
  require_square(t, "T");
  require_square(q, "Q");
  if (t.rows() != q.rows()) throw DomainError("T and Q differ in size");
  const Eigen::Index n = t.rows();
  const double scale = std::max(1.0, t.squaredNorm());
  const double comm = operator_norm(q * t - t * q);
  if (comm > tol * scale) {
    throw CommutationError("QT - TQ has norm " + std::to_string(comm));
  }
  const double sq = operator_norm(q * q - (t * t - 4.0 * delta * identity(n)));
  if (sq > tol * scale) {
    throw SqrtResidualError("Q^2 - (T^2 - 4 delta) has norm " + std::to_string(sq));
  }
  ComplexMatrix z(2 * n, 2 * n);
  z << 0.5 * t, 0.5 * q, 0.5 * q, 0.5 * t;
  return z;
}

ComplexMatrix lmi_matrix(const ComplexMatrix& z, const ComplexMatrix& gamma) {
  const Eigen::Index n = gamma.rows();
  const ComplexMatrix p = block_diag(identity(n), gamma);
  return p - z.adjoint() * p * z;
}

ComplexMatrix delta_from_gamma(const ComplexMatrix& gamma) {
  require_square(gamma, "Gamma");
  if (!is_hermitian(gamma, 1e-10 * std::max(1.0, gamma.norm()))) {
    throw NotHermitianError("Gamma is not Hermitian");
  }
  if (lambda_min(gamma) <= 0.0) throw NotPositiveError("Gamma is not positive definite");
  const Eigen::Index n = gamma.rows();
  const ComplexMatrix u = u_matrix(n);
  ComplexMatrix d = 0.5 * u * block_diag(identity(n), gamma) * u;
  return 0.5 * (d + d.adjoint());
}

EvenStranger even_stranger(const ComplexMatrix& t, double delta, const Prepair& prepair,
                           const ComplexMatrix& delta_matrix, double tol) {
  require_square(t, "T");
  require_delta_open(delta);
  const Eigen::Index n = t.rows();
  if (delta_matrix.rows() != 2 * n || delta_matrix.cols() != 2 * n) {
    throw DomainError("Delta must be 2n x 2n");
  }
  const HermitianEigen eig = hermitian_eigen(delta_matrix);
  if (eig.values(0) <= 0.0) throw NotPositiveError("Delta is not positive definite");
  const RealVector sq = eig.values.cwiseSqrt();
  const ComplexMatrix half = eig.vectors * sq.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  const ComplexMatrix inv_half =
      eig.vectors * sq.cwiseInverse().cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  EvenStranger out;
  out.Y = half * block_diag(prepair.X1, prepair.X2) * inv_half;
  const double ny = operator_norm(out.Y);
  if (ny > 1.0 + 10.0 * tol) {
    throw ContractionViolationError("|Y| = " + std::to_string(ny) + " exceeds 1");
  }
  out.E = ComplexMatrix(2 * n, n);
  out.E << identity(n), identity(n);
  out.E /= std::numbers::sqrt2;
  return out;
}

std::vector<Complex> default_z_samples(int count) {
  constexpr double kGolden = 2.399963229728653;  // pi (3 - sqrt 5)
  std::vector<Complex> z;
  z.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const double r = 0.95 * std::sqrt((j + 0.5) / count);
    z.push_back(std::polar(r, kGolden * j));
  }
  return z;
}

std::vector<ComplexMatrix> power_sums(const ComplexMatrix& t, double delta, int max_power) {
  const Eigen::Index n = t.rows();
  std::vector<ComplexMatrix> p;
  p.reserve(static_cast<std::size_t>(std::max(max_power, 1) + 1));
  p.push_back(2.0 * identity(n));
  p.push_back(t);
  for (int k = 2; k <= max_power; ++k) {
    p.push_back(t * p[static_cast<std::size_t>(k - 1)] - delta * p[static_cast<std::size_t>(k - 2)]);
  }
  p.resize(static_cast<std::size_t>(std::max(max_power, 0) + 1));
  for (auto& m : p) m *= 0.5;
  return p;
}

SeriesReport verify_series(const ComplexMatrix& t, double delta, const ComplexMatrix& e,
                           const ComplexMatrix& y, const std::vector<Complex>& z_samples,
                           int max_power) {
  require_square(t, "T");
  require_square(y, "Y");
  const Eigen::Index n = t.rows();
  const Eigen::Index m = y.rows();
  if (e.rows() != m || e.cols() != n) throw DomainError("E must be dim(Y) x dim(T)");
  SeriesReport rep;
  const ComplexMatrix in = identity(n);
  const ComplexMatrix im = identity(m);
  for (const Complex& z : z_samples) {
    if (std::abs(z) >= 1.0) throw DomainError("z samples must lie in the open unit disc");
    const ComplexMatrix denom = in - z * t + delta * z * z * in;
    Eigen::JacobiSVD<ComplexMatrix> svd(denom, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()(n - 1) <= 1e-13 * std::max(1.0, svd.singularValues()(0))) {
      throw SingularResolventError("1 - zT + delta z^2 is singular at z = " + fmt(z));
    }
    const ComplexMatrix lhs = (in - 0.5 * z * t) * svd.solve(in);
    const ComplexMatrix rhs = e.adjoint() * (im - z * y).partialPivLu().solve(e);
    rep.resolvent_residual = std::max(rep.resolvent_residual, operator_norm(lhs - rhs));
  }
  const auto ps = power_sums(t, delta, max_power);
  ComplexMatrix yk = im;
  for (int k = 0; k <= max_power; ++k) {
    const ComplexMatrix rhs = e.adjoint() * yk * e;
    rep.power_residual =
        std::max(rep.power_residual, operator_norm(ps[static_cast<std::size_t>(k)] - rhs));
    yk = yk * y;
  }
  return rep;
}

ComplexMatrix FiniteUnitaryDilation::embed(const ComplexMatrix& column) const {
  ComplexMatrix out = ComplexMatrix::Zero(U.rows(), column.cols());
  out.topRows(column.rows()) = column;
  return out;
}

FiniteUnitaryDilation schaffer_dilation(const ComplexMatrix& y, int depth, double tol) {
  require_square(y, "Y");
  if (depth < 1) throw DomainError("depth must be at least 1");
  const Eigen::Index m = y.rows();
  Eigen::JacobiSVD<ComplexMatrix> svd(y, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  if (s(0) > 1.0 + tol) {
    throw ContractionViolationError("|Y| = " + std::to_string(s(0)) + " exceeds 1");
  }
  // Both defects share the singular vectors of Y, which keeps Y D_Y = D_{Y*} Y exact.
  RealVector d(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double v = (1.0 - s(i)) * (1.0 + s(i));
    if (v < -tol) throw DefectSqrtError("I - Y^*Y has eigenvalue " + std::to_string(v));
    d(i) = std::sqrt(std::max(0.0, v));
  }
  const ComplexMatrix& w = svd.matrixU();
  const ComplexMatrix& v = svd.matrixV();
  const ComplexMatrix dy = v * d.cast<Complex>().asDiagonal() * v.adjoint();
  const ComplexMatrix dys = w * d.cast<Complex>().asDiagonal() * w.adjoint();

  const Eigen::Index blocks = depth + 1;
  FiniteUnitaryDilation out;
  out.depth = depth;
  out.block = m;
  out.U = ComplexMatrix::Zero(blocks * m, blocks * m);
  out.U.block(0, 0, m, m) = y;
  out.U.block(0, depth * m, m, m) = dys;
  out.U.block(m, 0, m, m) = dy;
  out.U.block(m, depth * m, m, m) = -y.adjoint();
  for (Eigen::Index j = 2; j < blocks; ++j) out.U.block(j * m, (j - 1) * m, m, m) = identity(m);
  out.unitarity_residual =
      operator_norm(out.U.adjoint() * out.U - identity(blocks * m));
  return out;
}

}  // namespace ellrange
