// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ellrange {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Absolute-plus-relative tolerance: a quantity passes when it is at most
/// atol + rtol * scale.
struct Tolerance {
  double atol = 1e-10;
  double rtol = 1e-10;

  double bound(double scale) const noexcept { return atol + rtol * scale; }
};

/// Throws DomainError unless m is square with finite entries.
void require_square(const ComplexMatrix& m, std::string_view what = "matrix");
bool all_finite(const ComplexMatrix& m);

/// Total order used for every eigenvalue enumeration: (Re, Im) lexicographic.
bool lexicographic_less(const Complex& a, const Complex& b) noexcept;
void sort_lexicographic(std::vector<Complex>& values);

/// Smallest pairwise distance between the listed points (infinity for < 2).
double min_pairwise_gap(const std::vector<Complex>& values);

/// Eigenvalues with multiplicity, sorted lexicographically.
/// Throws ConvergenceError if the Schur iteration does not converge.
std::vector<Complex> spectrum(const ComplexMatrix& t);

/// Largest singular value.
double operator_norm(const ComplexMatrix& t);
/// Smallest singular value.
double min_singular_value(const ComplexMatrix& t);

struct EigenDecomposition {
  std::vector<Complex> values;  // canonical order
  ComplexMatrix vectors;        // unit columns, largest entry real positive
  double residual = 0.0;        // max_i |T v_i - mu_i v_i|
  double condition = 1.0;       // 2-norm condition number of `vectors`
};

/// Diagonalizes T when its eigenvalues are pairwise separated by more than
/// sep_tol; otherwise throws EigenvalueClusterError.
EigenDecomposition diagonalize(const ComplexMatrix& t, double sep_tol = 1e-8);

/// f(T) = V diag(f(mu_i)) V^-1 for diagonalizable T. Exact on diagonal input.
/// Throws DomainError if f is not finite at some eigenvalue.
ComplexMatrix apply_function(const ComplexMatrix& t, const std::function<Complex(Complex)>& f,
                             double sep_tol = 1e-8);

// Hermitian helpers. Inputs are symmetrized before decomposition.

struct HermitianEigen {
  RealVector values;  // ascending
  ComplexMatrix vectors;
};

HermitianEigen hermitian_eigen(const ComplexMatrix& h);
double lambda_min(const ComplexMatrix& h);
double lambda_max(const ComplexMatrix& h);

/// (T + T*) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& t);
bool is_hermitian(const ComplexMatrix& h, double tol);

/// Principal square root of a PSD matrix. Eigenvalues in [-clamp_tol, 0) are
/// clamped to zero; anything more negative throws NotPositiveError.
ComplexMatrix psd_sqrt(const ComplexMatrix& h, double clamp_tol = 1e-12);
/// Inverse square root of a strictly positive definite matrix.
ComplexMatrix pd_inv_sqrt(const ComplexMatrix& h);

ComplexMatrix identity(Eigen::Index n);
ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b);
/// Non-negative integer power by repeated squaring.
ComplexMatrix matrix_power(const ComplexMatrix& t, int k);

}  // namespace ellrange
