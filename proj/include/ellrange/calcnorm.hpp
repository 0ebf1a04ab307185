// SPDX-License-Identifier: Apache-2.0
//
// Functions on G_delta (polynomials) and on R_delta (Laurent polynomials),
// the pullback phi -> phi o pi, and sampled lower bounds for the bfd and dp
// calcular norms together with the Delyon upper bound.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ellrange/mats.hpp"

namespace ellrange {

enum class DomainTag { GDelta, Disc };

struct PolyFn {
  std::vector<Complex> coeffs;  // ascending powers
  DomainTag domain = DomainTag::GDelta;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  Complex operator()(Complex s) const;
  /// Horner evaluation in matrix arithmetic.
  ComplexMatrix operator()(const ComplexMatrix& t) const;
};

struct LaurentFn {
  std::map<int, Complex> coeffs;  // exponent -> coefficient
  double delta = 0.0;

  Complex coeff(int k) const;
  Complex operator()(Complex lambda) const;
  /// Positive and negative parts by Horner in X and X^-1. Throws
  /// SingularError when X is not invertible.
  ComplexMatrix operator()(const ComplexMatrix& x) const;
};

LaurentFn pi_sharp(const PolyFn& phi, double delta);

/// coeff(-k) = delta^k coeff(k) for every k, within tol (relative).
bool is_symmetric(const LaurentFn& psi, double delta, double tol = 1e-12);

/// Largest |coeff(-k) - delta^k coeff(k)|.
double symmetry_defect(const LaurentFn& psi, double delta);

struct NormEstimate {
  double lower_bound = 0.0;
  ComplexMatrix witness;
  std::string witness_kind;
  int witness_index = -1;
  int samples_used = 0;
  std::uint64_t seed = 0;
};

/// Lower bound for sup ||phi(T)|| over matrices with W(T) in G_delta. Sample i
/// depends only on (seed, i), so a longer run extends a shorter one. Samples
/// 0..2 are structured: a near-vertex normal matrix, a normal matrix with
/// spectrum near the ellipse and (n_dim >= 2) the scaled boundary example
/// 2 [[sqrt d, 1 - d], [0, -sqrt d]]. The rest are Ginibre matrices scaled to
/// just inside the inclusion limit.
NormEstimate sample_bfd(const PolyFn& phi, double delta, int n_dim, int n_samples,
                        std::uint64_t seed);

/// The bfd sample with index i (exposed for tests and injections).
ComplexMatrix bfd_sample(double delta, int n_dim, std::uint64_t seed, int index,
                         std::string* kind = nullptr);

/// Lower bound for sup ||psi(X)|| over Douglas-Paulsen X with spectrum in
/// R_delta. Every fourth sample is (1 - 1e-6) times a Haar unitary; the others
/// use SVD synthesis with singular values in [delta + 1e-6, 1 - 1e-6]. Extra
/// matrices are evaluated after the random pool when they are Douglas-Paulsen
/// within extra_tol.
NormEstimate sample_dp(const LaurentFn& psi, double delta, int n_dim, int n_samples,
                       std::uint64_t seed, const std::vector<ComplexMatrix>& extra = {},
                       double extra_tol = 1e-8);

ComplexMatrix dp_sample(double delta, int n_dim, std::uint64_t seed, int index);

/// kappa = 3 + (2 pi diam^2 / area)^3 for the ellipse; +inf when it overflows.
double delyon_bound(double delta);

/// max |phi| on the boundary ellipse, grid search refined by golden section.
double sup_on_Gdelta(const PolyFn& phi, double delta, int grid = 4096);

/// |s - conj(s) p| < 1 - |p|^2
bool bidisc_slice_member(Complex s, Complex p);

/// Haar-distributed unitary from a Ginibre QR with phase correction.
ComplexMatrix random_unitary(int n, std::uint64_t seed, std::uint64_t stream);

}  // namespace ellrange
