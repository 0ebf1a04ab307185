// SPDX-License-Identifier: Apache-2.0
//
// (delta, H)-germinators and the elliptical Ando parametrization
//   T = 2 sqrt(d) A + (1 - d) sqrt(1 + A) B sqrt(1 - A),
// with A a Hermitian contraction and B a contraction.
#pragma once

#include <string>

#include "ellrange/dilation.hpp"
#include "ellrange/mats.hpp"

namespace ellrange {

struct Germinator {
  ComplexMatrix C;
  double delta = 0.0;
  ComplexMatrix C11, C12, C21, C22;

  static Germinator from_matrix(const ComplexMatrix& c, double delta);
};

struct GerminatorTolerances {
  double norm = 1e-8;       // |C| <= 1 + norm
  double separation = 1e-8; // eigenvalue gap
  double symmetry = 1e-8;   // |delta C^-1 - JCJ| <= symmetry * max(1, |C|)
  double c12 = 1e-10;       // sigma_min(C12) > c12
};

struct GerminatorReport {
  bool valid = false;
  std::string reason;  // first failed condition
  double norm = 0.0;
  double min_gap = 0.0;
  double symmetry_residual = 0.0;
  double c12_min_singular = 0.0;
};

/// Checks, in order: |C| <= 1, 2n distinct eigenvalues, delta C^-1 = JCJ,
/// C12 invertible. Throws SingularError when C is not invertible.
GerminatorReport validate_germinator(const ComplexMatrix& c, double delta,
                                     const GerminatorTolerances& tols = {});

/// C = diag(1, S) Z_T diag(1, S)^-1 with S = Gamma^{1/2}. Throws
/// GerminatorInvalidError naming the failed condition.
Germinator germinator_from_certificate(const ComplexMatrix& t, double delta,
                                       const Prepair& prepair, const DilationCertificate& cert,
                                       const GerminatorTolerances& tols = {});

struct GerminatorSplit {
  ComplexMatrix A;  // Hermitian, |A| <= 1
  ComplexMatrix F;  // |F| <= 1/sqrt(d) - sqrt(d)
  ComplexMatrix E;  // off-diagonal block of X in the normal form [[I, E], [0, -I]]
  double involution_residual = 0.0;      // |X^2 - I|
  double reconstruction_residual = 0.0;  // |C11 - sqrt(d)(A + 1/2 sqrt(1+A) F sqrt(1-A))|
};

/// Splits C through the involution X = C J / sqrt(delta). Throws
/// InvolutionError when |X^2 - I| exceeds tol.
GerminatorSplit germinator_split(const Germinator& g, double tol = 1e-8);

/// PSD square roots sqrt(1 + A), sqrt(1 - A) from one eigendecomposition of A.
std::pair<ComplexMatrix, ComplexMatrix> plus_minus_roots(const ComplexMatrix& a);

/// 2 sqrt(d) A + (1 - d) sqrt(1 + A) B sqrt(1 - A). Throws NotHermitianError
/// or NotContractionError when A or B violate their constraints by more than tol.
ComplexMatrix ando_compose(const ComplexMatrix& a, const ComplexMatrix& b, double delta,
                           double tol = 1e-9);

struct AndoFactors {
  ComplexMatrix A;
  ComplexMatrix B;
  double delta = 0.0;
  double reconstruction_residual = 0.0;  // |ando_compose(A, B) - T|
};

/// find_scaling -> germinator_from_certificate -> germinator_split ->
/// B = sqrt(d) / (1 - d) F. Throws InfeasibleError or NonGenericError.
AndoFactors ando_factor(const ComplexMatrix& t, double delta, const ScalingOptions& opts = {});

}  // namespace ellrange
