// SPDX-License-Identifier: Apache-2.0
//
// Prepairs, the block matrix Z_T, the scaling LMI
//   M(Gamma) = diag(1, Gamma) - Z_T^* diag(1, Gamma) Z_T >= 0,
// even-stranger certificates (E, Y) on the doubled space and finite unitary
// dilations of the contraction Y.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellrange/mats.hpp"

namespace ellrange {

struct GenericityReport {
  bool generic = false;
  std::string reason;  // failed clause, empty when generic
  double min_gap = 0.0;            // min pairwise eigenvalue distance
  double min_focal_distance = 0.0; // min_i |mu_i^2 - 4 delta|
};

/// sigma(T) in K_delta, pairwise gaps > sep_tol and |mu_i^2 - 4 delta| > sep_tol.
GenericityReport is_generic(const ComplexMatrix& t, double delta, double sep_tol = 1e-8);

/// Canonical: X1 takes the root of lambda^2 - mu lambda + delta with larger
/// modulus; equal moduli (mu real, |mu| < 2 sqrt(delta)) are broken by larger
/// imaginary part. Swapped exchanges the two roots.
enum class BranchRule { Canonical, Swapped };

struct EigenRecord {
  Complex mu;
  Complex lambda1;
  Complex lambda2;
  ComplexVector e;
};

struct Prepair {
  ComplexMatrix X1;
  ComplexMatrix X2;
  ComplexMatrix Q;  // X1 - X2
  std::vector<EigenRecord> eigen_data;
};

Prepair make_prepair(const ComplexMatrix& t, double delta, BranchRule branch = BranchRule::Canonical,
                     double sep_tol = 1e-8);

/// (1/sqrt 2) [[I, I], [I, -I]]
ComplexMatrix u_matrix(Eigen::Index n);

/// J = diag(I, -I)
ComplexMatrix j_matrix(Eigen::Index n);

/// 1/2 [[T, Q], [Q, T]]. Checks QT = TQ and Q^2 = T^2 - 4 delta against
/// tol * max(1, |T|^2).
ComplexMatrix z_matrix(const ComplexMatrix& t, const ComplexMatrix& q, double delta,
                       double tol = 1e-8);

/// M(Gamma) for a given Z_T.
ComplexMatrix lmi_matrix(const ComplexMatrix& z, const ComplexMatrix& gamma);

/// 1/2 U diag(I, Gamma) U.
ComplexMatrix delta_from_gamma(const ComplexMatrix& gamma);

struct EvenStranger {
  ComplexMatrix E;  // 2n x n
  ComplexMatrix Y;  // 2n x 2n
};

EvenStranger even_stranger(const ComplexMatrix& t, double delta, const Prepair& prepair,
                           const ComplexMatrix& delta_matrix, double tol = 1e-8);

struct SeriesReport {
  double resolvent_residual = 0.0;
  double power_residual = 0.0;
  double max() const noexcept {
    return resolvent_residual > power_residual ? resolvent_residual : power_residual;
  }
};

/// Deterministic points in the open unit disc (radius < 0.95).
std::vector<Complex> default_z_samples(int count = 32);

/// Compares (1 - zT/2)(1 - zT + delta z^2)^{-1} with E^*(1 - zY)^{-1} E at the
/// samples, and 1/2 (X1^k + X2^k) with E^* Y^k E for k <= max_power. The power
/// sums come from the recurrence p_k = T p_{k-1} - delta p_{k-2}.
SeriesReport verify_series(const ComplexMatrix& t, double delta, const ComplexMatrix& e,
                           const ComplexMatrix& y, const std::vector<Complex>& z_samples,
                           int max_power);

/// 1/2 (X1^k + X2^k) for k = 0..max_power.
std::vector<ComplexMatrix> power_sums(const ComplexMatrix& t, double delta, int max_power);

struct FiniteUnitaryDilation {
  ComplexMatrix U;          // (depth + 1) blocks of size dim(Y)
  int depth = 0;
  Eigen::Index block = 0;   // dim(Y); the embedding is the first block
  double unitarity_residual = 0.0;

  /// First-block compression P U^k P.
  ComplexMatrix compress(const ComplexMatrix& m) const { return m.topLeftCorner(block, block); }
  /// Inclusion of an operator-valued column into the first block.
  ComplexMatrix embed(const ComplexMatrix& column) const;
};

FiniteUnitaryDilation schaffer_dilation(const ComplexMatrix& y, int depth, double tol = 1e-8);

enum class ScalingMethod { Barrier, Dykstra };

struct ScalingOptions {
  ScalingMethod method = ScalingMethod::Barrier;
  double trace_bound = 1e6;          // barrier: tr Gamma <= trace_bound
  double barrier_max_weight = 1e14;  // barrier: give up once s exceeds this
  double epsilon = 1e-8;          // Gamma >= epsilon I
  double lmi_margin = 1e-8;       // cone target M >= lmi_margin I
  int max_iterations = 20000;
  double plateau_level = 1e-4;
  int plateau_window = 2000;
  bool near_boundary_policy = true;
  double near_boundary_margin = 1e-6;
  int angles = 512;
  int z_samples = 32;
  int max_power = 12;
  BranchRule branch = BranchRule::Canonical;
};

struct CertificateResiduals {
  double lmi = 0.0;          // max(0, -lambda_min(M(Gamma)))
  double isometry = 0.0;     // |E^*E - I|
  double series = 0.0;       // verify_series max
  double delta_column = 0.0; // |Delta [I; I] - 1/2 [I; I]|
  double contraction = 0.0;  // |diag(1, S) Z diag(1, S^-1)| with S = Gamma^{1/2}
};

struct DilationCertificate {
  ComplexMatrix gamma;
  ComplexMatrix delta_matrix;
  ComplexMatrix E;
  ComplexMatrix Y;
  CertificateResiduals residuals;
  int iterations = 0;
};

enum class ScalingStatus { Feasible, Infeasible };

struct ScalingResult {
  ScalingStatus status = ScalingStatus::Infeasible;
  std::optional<DilationCertificate> certificate;
  Prepair prepair;
  ComplexMatrix z;
  std::string reason;                  // why infeasible
  std::vector<double> residual_trace;  // barrier: margin t per centering; Dykstra: residual per 100 iterations
  int iterations = 0;
  bool feasible() const noexcept { return status == ScalingStatus::Feasible; }
};

/// Searches for Gamma > 0 with M(Gamma) >= 0. Exterior eigenvalues give
/// Infeasible directly; other non-generic input throws NonGenericError.
/// Throws SolverStalledError for near-boundary input (policy) and when the
/// iteration budget runs out without a verdict.
ScalingResult find_scaling(const ComplexMatrix& t, double delta, const ScalingOptions& opts = {});

/// Builds Delta, (E, Y) and all residuals for an accepted Gamma.
DilationCertificate assemble_certificate(const ComplexMatrix& t, double delta,
                                         const Prepair& prepair, const ComplexMatrix& gamma,
                                         const ScalingOptions& opts = {});

}  // namespace ellrange
