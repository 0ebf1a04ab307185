// SPDX-License-Identifier: Apache-2.0
#include "ellrange/dpops.hpp"

#include <cmath>
#include <string>

#include "ellrange/ando.hpp"
#include "ellrange/errors.hpp"
#include "ellrange/numrange.hpp"

namespace ellrange {

DpReport is_douglas_paulsen(const ComplexMatrix& x, double delta, double tol) {
  require_square(x, "X");
  Eigen::JacobiSVD<ComplexMatrix> svd(x);
  const RealVector& s = svd.singularValues();
  DpReport r;
  r.norm = s(0);
  r.min_singular = s(s.size() - 1);
  r.upper_margin = 1.0 - r.norm;
  r.lower_margin = r.min_singular - delta;
  r.is_dp = r.norm <= 1.0 + tol && r.min_singular >= delta - tol;
  return r;
}

ComplexMatrix dp_push(const ComplexMatrix& x, double delta, double tol) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  const DpReport r = is_douglas_paulsen(x, delta, tol);
  if (r.min_singular <= 1e-14 * std::max(1.0, r.norm)) throw SingularError("X is singular");
  if (!r.is_dp) throw DomainError("X is not a Douglas-Paulsen operator for this delta");
  return x + delta * x.partialPivLu().inverse();
}

DpWitness dp_extend(const ComplexMatrix& t, double delta, const ScalingOptions& opts) {
  require_square(t, "T");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  const SupportVerdict sv = contains_support(t, delta, opts.angles);
  if (sv.verdict != Inclusion::Inside) {
    throw InfeasibleError(std::string("W(T) is not strictly inside K_delta (") +
                          to_string(sv.verdict) + ")");
  }
  const ScalingResult sr = find_scaling(t, delta, opts);
  if (!sr.feasible()) throw InfeasibleError("no scaling certificate: " + sr.reason);
  const Germinator g = germinator_from_certificate(t, delta, sr.prepair, *sr.certificate);
  const Eigen::Index n = t.rows();
  DpWitness w;
  w.X = g.C;
  const ComplexMatrix x_inv = g.C.partialPivLu().inverse();
  w.pi_X = w.X + delta * x_inv;
  w.norm_X = operator_norm(w.X);
  w.norm_Xinv = operator_norm(x_inv);
  w.restriction_residual = operator_norm(w.pi_X.topLeftCorner(n, n) - t);
  w.offdiag_residual = operator_norm(w.pi_X.bottomLeftCorner(n, n));
  return w;
}

const char* to_string(DpVerdict v) noexcept {
  switch (v) {
    case DpVerdict::DouglasPaulsen:
      return "douglas-paulsen";
    case DpVerdict::Boundary:
      return "boundary";
    case DpVerdict::NotDouglasPaulsen:
      return "not-douglas-paulsen";
  }
  return "unknown";
}

DpVerdict dp_verdict(const ComplexMatrix& x, double delta, double tol) {
  const DpReport r = is_douglas_paulsen(x, delta, tol);
  if (!r.is_dp) return DpVerdict::NotDouglasPaulsen;
  if (std::abs(r.norm - 1.0) <= tol || std::abs(r.min_singular - delta) <= tol)
    return DpVerdict::Boundary;
  return DpVerdict::DouglasPaulsen;
}

ComplexMatrix fact103_matrix(double delta) {
  const double s = std::sqrt(delta);
  ComplexMatrix t(2, 2);
  t << 2.0 * s, 2.0 * (1.0 - delta), 0.0, -2.0 * s;
  return t;
}

Fact103Report fact103_demo(double delta, int num_angles) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  const double s = std::sqrt(delta);
  Fact103Report r;
  r.delta = delta;
  r.T = fact103_matrix(delta);
  r.hausdorff = hausdorff_to_ellipse(r.T, delta, num_angles);
  r.quadratic = 1.0 - 6.0 * delta + delta * delta;

  r.closed_form_X = ComplexMatrix(2, 2);
  r.closed_form_X << s, 4.0 * delta / (1.0 - delta), 0.0, -s;
  const ComplexMatrix cf_inv = r.closed_form_X.inverse();
  r.closed_form_norm = operator_norm(r.closed_form_X);
  r.closed_form_residual = operator_norm(r.closed_form_X + delta * cf_inv - r.T);
  r.closed_form_verdict = dp_verdict(r.closed_form_X, delta);

  // Eigenvectors of the upper-triangular T: (1, 0) for 2 sqrt(d) and
  // (1 - d, -2 sqrt(d)) for -2 sqrt(d).
  ComplexMatrix v(2, 2);
  v << 1.0, 1.0 - delta, 0.0, -2.0 * s;
  ComplexMatrix lam = ComplexMatrix::Zero(2, 2);
  lam(0, 0) = s;
  lam(1, 1) = -s;
  r.preimage_X = v * lam * v.inverse();
  r.preimage_norm = operator_norm(r.preimage_X);
  r.preimage_residual = operator_norm(r.preimage_X + delta * r.preimage_X.inverse() - r.T);
  r.preimage_verdict = dp_verdict(r.preimage_X, delta);
  return r;
}

}  // namespace ellrange
