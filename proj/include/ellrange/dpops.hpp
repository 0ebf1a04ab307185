// SPDX-License-Identifier: Apache-2.0
//
// Douglas-Paulsen operators (|X| <= 1, |X^-1| <= 1/delta) and the map
// pi(X) = X + delta X^-1 into operators with W in K_delta.
#pragma once

#include "ellrange/dilation.hpp"
#include "ellrange/mats.hpp"

namespace ellrange {

struct DpReport {
  bool is_dp = false;
  double norm = 0.0;          // sigma_max(X)
  double min_singular = 0.0;  // sigma_min(X)
  double upper_margin = 0.0;  // 1 - sigma_max
  double lower_margin = 0.0;  // sigma_min - delta
};

DpReport is_douglas_paulsen(const ComplexMatrix& x, double delta, double tol = 1e-10);

/// X + delta X^-1. Throws DomainError when X is not Douglas-Paulsen and
/// SingularError when X is numerically singular.
ComplexMatrix dp_push(const ComplexMatrix& x, double delta, double tol = 1e-10);

struct DpWitness {
  ComplexMatrix X;       // 2n x 2n
  ComplexMatrix pi_X;    // X + delta X^-1
  double norm_X = 0.0;
  double norm_Xinv = 0.0;
  double restriction_residual = 0.0;  // |pi(X)_11 - T|
  double offdiag_residual = 0.0;      // |pi(X)_21|
};

/// Extends T (generic, W(T) strictly inside K_delta) to pi(X) on the doubled
/// space with X = C the germinator of a scaling certificate. Throws
/// InfeasibleError when W(T) is not strictly inside and NonGenericError.
DpWitness dp_extend(const ComplexMatrix& t, double delta, const ScalingOptions& opts = {});

enum class DpVerdict { DouglasPaulsen, Boundary, NotDouglasPaulsen };
const char* to_string(DpVerdict v) noexcept;

/// DouglasPaulsen when |X| < 1 - tol, Boundary when |X| = 1 within tol.
/// Also requires sigma_min(X) >= delta - tol for the first two.
DpVerdict dp_verdict(const ComplexMatrix& x, double delta, double tol = 1e-8);

struct Fact103Report {
  double delta = 0.0;
  ComplexMatrix T;                  // 2 [[sqrt d, 1 - d], [0, -sqrt d]]
  double hausdorff = 0.0;           // W(T) against the ellipse, support distance
  ComplexMatrix closed_form_X;      // [[sqrt d, 4d/(1-d)], [0, -sqrt d]]
  double closed_form_norm = 0.0;
  double closed_form_residual = 0.0;  // |pi(closed_form_X) - T|
  DpVerdict closed_form_verdict = DpVerdict::NotDouglasPaulsen;
  ComplexMatrix preimage_X;         // solved from the eigendecomposition of T
  double preimage_norm = 0.0;
  double preimage_residual = 0.0;     // |pi(preimage_X) - T|
  DpVerdict preimage_verdict = DpVerdict::NotDouglasPaulsen;
  double quadratic = 0.0;           // 1 - 6 d + d^2
};

/// The 2 x 2 example with W(T) = K_delta and focal eigenvalues +-2 sqrt(d).
/// The preimage is computed from the eigenvectors of T: X shares them, with
/// eigenvalues +-sqrt(d), the unique roots of pi over +-2 sqrt(d).
Fact103Report fact103_demo(double delta, int num_angles = 4096);

ComplexMatrix fact103_matrix(double delta);

}  // namespace ellrange
