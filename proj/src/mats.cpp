// SPDX-License-Identifier: Apache-2.0
#include "ellrange/mats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ellrange/errors.hpp"

namespace ellrange {

void require_square(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DomainError(std::string(what) + " must be a non-empty square matrix");
  }
  if (!all_finite(m)) {
    throw DomainError(std::string(what) + " has non-finite entries");
  }
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

bool lexicographic_less(const Complex& a, const Complex& b) noexcept {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

void sort_lexicographic(std::vector<Complex>& values) {
  std::sort(values.begin(), values.end(), lexicographic_less);
}

double min_pairwise_gap(const std::vector<Complex>& values) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      gap = std::min(gap, std::abs(values[i] - values[j]));
    }
  }
  return gap;
}

namespace {

bool is_diagonal(const ComplexMatrix& t) {
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      if (i != j && t(i, j) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

// Rotates each column so its largest-magnitude entry is real and positive.
void normalize_columns(ComplexMatrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    const double nrm = v.col(j).norm();
    if (nrm == 0.0) continue;
    Eigen::Index imax = 0;
    v.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex pivot = v(imax, j);
    const Complex phase = std::conj(pivot) / std::abs(pivot);
    v.col(j) *= phase / nrm;
  }
}

}  // namespace

std::vector<Complex> spectrum(const ComplexMatrix& t) {
  require_square(t, "T");
  std::vector<Complex> values;
  values.reserve(static_cast<std::size_t>(t.rows()));
  if (is_diagonal(t)) {
    for (Eigen::Index i = 0; i < t.rows(); ++i) values.push_back(t(i, i));
  } else {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(t, false);
    if (solver.info() != Eigen::Success) {
      throw ConvergenceError("Schur iteration did not converge", 30 * static_cast<int>(t.rows()));
    }
    for (Eigen::Index i = 0; i < t.rows(); ++i) values.push_back(solver.eigenvalues()(i));
  }
  sort_lexicographic(values);
  return values;
}

double operator_norm(const ComplexMatrix& t) {
  if (t.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(t);
  return svd.singularValues()(0);
}

double min_singular_value(const ComplexMatrix& t) {
  if (t.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(t);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

EigenDecomposition diagonalize(const ComplexMatrix& t, double sep_tol) {
  require_square(t, "T");
  const Eigen::Index n = t.rows();
  EigenDecomposition out;

  std::vector<Complex> raw(static_cast<std::size_t>(n));
  ComplexMatrix raw_vectors(n, n);
  if (is_diagonal(t)) {
    raw_vectors.setIdentity();
    for (Eigen::Index i = 0; i < n; ++i) raw[static_cast<std::size_t>(i)] = t(i, i);
  } else {
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(t, true);
    if (solver.info() != Eigen::Success) {
      throw ConvergenceError("Schur iteration did not converge", 30 * static_cast<int>(n));
    }
    raw_vectors = solver.eigenvectors();
    for (Eigen::Index i = 0; i < n; ++i) raw[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  }

  const double gap = min_pairwise_gap(raw);
  if (gap <= sep_tol) {
    throw EigenvalueClusterError(
        "eigenvalues not separated: min gap " + std::to_string(gap) + " <= " + std::to_string(sep_tol),
        gap);
  }

  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lexicographic_less(raw[a], raw[b]); });

  out.vectors.resize(n, n);
  out.values.reserve(raw.size());
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = static_cast<Eigen::Index>(order[static_cast<std::size_t>(k)]);
    out.values.push_back(raw[order[static_cast<std::size_t>(k)]]);
    out.vectors.col(k) = raw_vectors.col(src);
  }
  normalize_columns(out.vectors);

  for (Eigen::Index k = 0; k < n; ++k) {
    const double r =
        (t * out.vectors.col(k) - out.values[static_cast<std::size_t>(k)] * out.vectors.col(k)).norm();
    out.residual = std::max(out.residual, r);
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(out.vectors);
  const auto& s = svd.singularValues();
  out.condition = s(n - 1) > 0.0 ? s(0) / s(n - 1) : std::numeric_limits<double>::infinity();
  if (!std::isfinite(out.condition)) {
    throw SingularError("eigenvector matrix is singular");
  }
  const double scale = std::max(1.0, operator_norm(t));
  if (out.residual > 1e-10 * scale) {
    throw NumericalError("eigen-decomposition residual " + std::to_string(out.residual) +
                         " exceeds 1e-10*|T|");
  }
  return out;
}

ComplexMatrix apply_function(const ComplexMatrix& t, const std::function<Complex(Complex)>& f,
                             double sep_tol) {
  require_square(t, "T");
  const Eigen::Index n = t.rows();
  if (is_diagonal(t)) {
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Complex v = f(t(i, i));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw DomainError("function undefined at an eigenvalue");
      }
      out(i, i) = v;
    }
    return out;
  }
  const EigenDecomposition eig = diagonalize(t, sep_tol);
  ComplexVector fv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex v = f(eig.values[static_cast<std::size_t>(i)]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("function undefined at an eigenvalue");
    }
    fv(i) = v;
  }
  // V diag(f) V^-1 via a solve rather than an explicit inverse.
  const ComplexMatrix vd = eig.vectors * fv.asDiagonal();
  return eig.vectors.transpose().partialPivLu().solve(vd.transpose()).transpose();
}

HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
  const ComplexMatrix sym = hermitian_part(h);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("Hermitian eigen-solver did not converge", 0);
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double lambda_min(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(h), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double lambda_max(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(h), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(solver.eigenvalues().size() - 1);
}

ComplexMatrix hermitian_part(const ComplexMatrix& t) { return 0.5 * (t + t.adjoint()); }

bool is_hermitian(const ComplexMatrix& h, double tol) {
  return h.rows() == h.cols() && (h - h.adjoint()).norm() <= tol;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h, double clamp_tol) {
  const HermitianEigen eig = hermitian_eigen(h);
  RealVector roots(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double v = eig.values(i);
    if (v < -clamp_tol) {
      throw NotPositiveError("matrix has eigenvalue " + std::to_string(v) + " below -" +
                             std::to_string(clamp_tol));
    }
    roots(i) = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix pd_inv_sqrt(const ComplexMatrix& h) {
  const HermitianEigen eig = hermitian_eigen(h);
  if (eig.values(0) <= 0.0) {
    throw NotPositiveError("matrix is not strictly positive definite");
  }
  const RealVector roots = eig.values.cwiseSqrt().cwiseInverse();
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix block_diag(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

ComplexMatrix matrix_power(const ComplexMatrix& t, int k) {
  if (k < 0) throw DomainError("matrix_power needs a non-negative exponent");
  ComplexMatrix result = identity(t.rows());
  ComplexMatrix base = t;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

}  // namespace ellrange
