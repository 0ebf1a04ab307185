// SPDX-License-Identifier: Apache-2.0
#include "ellrange/ando.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ellrange/errors.hpp"
#include "ellrange/numrange.hpp"

namespace ellrange {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Unitary polar factor of a square matrix via its full SVD. Zero singular
// values are completed by the SVD's own orthonormal bases.
ComplexMatrix polar_unitary(const ComplexMatrix& v) {
  Eigen::JacobiSVD<ComplexMatrix> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

Germinator Germinator::from_matrix(const ComplexMatrix& c, double delta) {
  require_square(c, "C");
  if (c.rows() % 2 != 0) throw DomainError("a germinator has even dimension");
  const Eigen::Index n = c.rows() / 2;
  Germinator g;
  g.C = c;
  g.delta = delta;
  g.C11 = c.topLeftCorner(n, n);
  g.C12 = c.topRightCorner(n, n);
  g.C21 = c.bottomLeftCorner(n, n);
  g.C22 = c.bottomRightCorner(n, n);
  return g;
}

GerminatorReport validate_germinator(const ComplexMatrix& c, double delta,
                                     const GerminatorTolerances& tols) {
  require_square(c, "C");
  if (c.rows() % 2 != 0) throw DomainError("a germinator has even dimension");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  const Eigen::Index n = c.rows() / 2;
  GerminatorReport rep;
  rep.norm = operator_norm(c);
  const double smin = min_singular_value(c);
  if (smin <= 1e-14 * std::max(1.0, rep.norm)) throw SingularError("C is not invertible");

  rep.min_gap = min_pairwise_gap(spectrum(c));
  const ComplexMatrix j = j_matrix(n);
  const ComplexMatrix c_inv = c.partialPivLu().inverse();
  rep.symmetry_residual = operator_norm(delta * c_inv - j * c * j);
  rep.c12_min_singular = min_singular_value(c.topRightCorner(n, n));

  if (rep.norm > 1.0 + tols.norm) {
    rep.reason = "norm condition: |C| = " + num(rep.norm) + " exceeds 1";
  } else if (rep.min_gap <= tols.separation) {
    rep.reason = "distinct spectrum condition: eigenvalue gap " + num(rep.min_gap);
  } else if (rep.symmetry_residual > tols.symmetry * std::max(1.0, rep.norm)) {
    rep.reason = "symmetry condition: |delta C^-1 - JCJ| = " + num(rep.symmetry_residual);
  } else if (rep.c12_min_singular <= tols.c12) {
    rep.reason = "C12 invertibility: sigma_min(C12) = " + num(rep.c12_min_singular);
  } else {
    rep.valid = true;
  }
  return rep;
}

Germinator germinator_from_certificate(const ComplexMatrix& t, double delta,
                                       const Prepair& prepair, const DilationCertificate& cert,
                                       const GerminatorTolerances& tols) {
  const Eigen::Index n = t.rows();
  const ComplexMatrix z = z_matrix(t, prepair.Q, delta);
  const ComplexMatrix s = psd_sqrt(cert.gamma);
  const ComplexMatrix s_inv = pd_inv_sqrt(cert.gamma);
  const ComplexMatrix c = block_diag(identity(n), s) * z * block_diag(identity(n), s_inv);
  const GerminatorReport rep = validate_germinator(c, delta, tols);
  if (!rep.valid) throw GerminatorInvalidError(rep.reason);
  Germinator g = Germinator::from_matrix(c, delta);
  const double scale = std::max(1.0, operator_norm(t));
  const double r11 = operator_norm(2.0 * g.C11 - t);
  const ComplexMatrix sum = c + delta * c.partialPivLu().inverse();
  const double r_restrict = operator_norm(sum.topLeftCorner(n, n) - t);
  const double r_off = operator_norm(sum.bottomLeftCorner(n, n));
  if (std::max({r11, r_restrict, r_off}) > 1e-7 * scale) {
    throw GerminatorInvalidError("C + delta C^-1 does not restrict to T (residual " +
                                 num(std::max({r11, r_restrict, r_off})) + ")");
  }
  return g;
}

GerminatorSplit germinator_split(const Germinator& g, double tol) {
  const double delta = g.delta;
  const Eigen::Index n = g.C.rows() / 2;
  const ComplexMatrix x = g.C * j_matrix(n) / std::sqrt(delta);
  GerminatorSplit out;
  out.involution_residual = operator_norm(x * x - identity(2 * n));
  if (out.involution_residual > tol * std::max(1.0, operator_norm(x))) {
    throw InvolutionError("X^2 - I has norm " + num(out.involution_residual));
  }
  // Trace zero with eigenvalues +-1 gives an n-dimensional +1 eigenspace,
  // which is the range of I + X.
  Eigen::JacobiSVD<ComplexMatrix> svd(identity(2 * n) + x, Eigen::ComputeFullU);
  const ComplexMatrix q1 = svd.matrixU().leftCols(n);
  const ComplexMatrix q2 = svd.matrixU().rightCols(n);
  out.E = q1.adjoint() * x * q2;
  const ComplexMatrix v1 = q1.topRows(n).adjoint();
  const ComplexMatrix v2 = q2.topRows(n).adjoint();
  ComplexMatrix a = v1.adjoint() * v1 - v2.adjoint() * v2;
  out.A = 0.5 * (a + a.adjoint());
  const ComplexMatrix u1 = polar_unitary(v1);
  const ComplexMatrix u2 = polar_unitary(v2);
  out.F = u1.adjoint() * out.E * u2;
  const auto [rp, rm] = plus_minus_roots(out.A);
  const ComplexMatrix rebuilt = std::sqrt(delta) * (out.A + 0.5 * rp * out.F * rm);
  out.reconstruction_residual = operator_norm(rebuilt - g.C11);
  return out;
}

std::pair<ComplexMatrix, ComplexMatrix> plus_minus_roots(const ComplexMatrix& a) {
  const HermitianEigen eig = hermitian_eigen(a);
  const Eigen::Index n = a.rows();
  RealVector p(n), m(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    p(i) = std::sqrt(std::max(0.0, 1.0 + eig.values(i)));
    m(i) = std::sqrt(std::max(0.0, 1.0 - eig.values(i)));
  }
  const ComplexMatrix& v = eig.vectors;
  return {v * p.cast<Complex>().asDiagonal() * v.adjoint(),
          v * m.cast<Complex>().asDiagonal() * v.adjoint()};
}

ComplexMatrix ando_compose(const ComplexMatrix& a, const ComplexMatrix& b, double delta,
                           double tol) {
  require_square(a, "A");
  require_square(b, "B");
  if (a.rows() != b.rows()) throw DomainError("A and B differ in size");
  if (!(delta >= 0.0 && delta < 1.0)) throw DomainError("delta must lie in [0, 1)");
  if (!is_hermitian(a, tol * std::max(1.0, a.norm()))) throw NotHermitianError("A is not Hermitian");
  const double na = operator_norm(a);
  if (na > 1.0 + tol) throw NotContractionError("|A| = " + num(na) + " exceeds 1");
  const double nb = operator_norm(b);
  if (nb > 1.0 + tol) throw NotContractionError("|B| = " + num(nb) + " exceeds 1");
  const ComplexMatrix ah = 0.5 * (a + a.adjoint());
  const auto [rp, rm] = plus_minus_roots(ah);
  return 2.0 * std::sqrt(delta) * ah + (1.0 - delta) * rp * b * rm;
}

AndoFactors ando_factor(const ComplexMatrix& t, double delta, const ScalingOptions& opts) {
  require_square(t, "T");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  const ScalingResult sr = find_scaling(t, delta, opts);
  if (!sr.feasible()) throw InfeasibleError("W(T) is not contained in K_delta: " + sr.reason);
  const Germinator g = germinator_from_certificate(t, delta, sr.prepair, *sr.certificate);
  const GerminatorSplit split = germinator_split(g);
  AndoFactors out;
  out.delta = delta;
  out.A = split.A;
  out.B = (std::sqrt(delta) / (1.0 - delta)) * split.F;
  out.reconstruction_residual = operator_norm(ando_compose(out.A, out.B, delta, 1e-7) - t);
  return out;
}

}  // namespace ellrange
