// SPDX-License-Identifier: Apache-2.0
//
// Feasibility search for M(Gamma) >= 0, Gamma > 0. Two methods: a phase-I
// barrier method (default, below) and Dykstra projections.
//
// Dykstra primal: alternating projections in the product space (Gamma, M)
// between the affine graph M = M0 + L(Gamma) and the cone
// {Gamma >= eps} x {M >= margin}. Hermitian matrices are handled in a real
// orthonormal coordinate system so the affine projection is a fixed linear map.
//
// Dykstra dual: the same scheme searches for a separating W >= 0 with
//   [W - Z W Z^*]_22 = -R, R >= 0, tr [W - Z W Z^*]_11 = -1,
// which gives <W, M(Gamma)> = -1 - <R, Gamma> < 0 for every Gamma >= 0.
#include <algorithm>
#include <cmath>
#include <string>

#include "ellrange/dilation.hpp"
#include "ellrange/errors.hpp"
#include "ellrange/geom.hpp"
#include "ellrange/numrange.hpp"

namespace ellrange {
namespace {

using RealMatrix = Eigen::MatrixXd;

// Real orthonormal coordinates of an m x m Hermitian matrix (dimension m^2).
void herm_to_vec(const ComplexMatrix& h, double* out) {
  const Eigen::Index m = h.rows();
  Eigen::Index k = 0;
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < m; ++i) out[k++] = h(i, i).real();
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = j + 1; i < m; ++i) {
      out[k++] = r2 * 0.5 * (h(i, j).real() + h(j, i).real());
      out[k++] = r2 * 0.5 * (h(i, j).imag() - h(j, i).imag());
    }
  }
}

ComplexMatrix vec_to_herm(const double* v, Eigen::Index m) {
  ComplexMatrix h(m, m);
  Eigen::Index k = 0;
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < m; ++i) h(i, i) = v[k++];
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = j + 1; i < m; ++i) {
      const double re = s * v[k++];
      const double im = s * v[k++];
      h(i, j) = Complex(re, im);
      h(j, i) = Complex(re, -im);
    }
  }
  return h;
}

ComplexMatrix herm_basis(Eigen::Index m, Eigen::Index idx) {
  RealVector e = RealVector::Zero(m * m);
  e(idx) = 1.0;
  return vec_to_herm(e.data(), m);
}

RealVector to_vec(const ComplexMatrix& h) {
  RealVector v(h.rows() * h.rows());
  herm_to_vec(h, v.data());
  return v;
}

ComplexMatrix clamp_below(const ComplexMatrix& h, double floor, double* lmin = nullptr) {
  const HermitianEigen eig = hermitian_eigen(h);
  if (lmin) *lmin = eig.values(0);
  if (eig.values(0) >= floor) return h;
  const RealVector c = eig.values.cwiseMax(floor);
  return eig.vectors * c.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

// Projection onto {x : A x = b} with A of full row rank.
struct AffineProjector {
  RealMatrix a;
  RealVector b;
  Eigen::LDLT<RealMatrix> gram;

  AffineProjector(RealMatrix a_in, RealVector b_in) : a(std::move(a_in)), b(std::move(b_in)) {
    gram.compute(a * a.transpose());
  }
  RealVector operator()(const RealVector& x) const {
    const RealVector r = a * x - b;
    return x - a.transpose() * gram.solve(r);
  }
};

// Two blocks of Hermitian coordinates: (first m1 x m1, second m2 x m2).
struct Split {
  Eigen::Index m1, m2;
  ComplexMatrix first(const RealVector& x) const { return vec_to_herm(x.data(), m1); }
  ComplexMatrix second(const RealVector& x) const { return vec_to_herm(x.data() + m1 * m1, m2); }
  RealVector join(const ComplexMatrix& a, const ComplexMatrix& b) const {
    RealVector x(m1 * m1 + m2 * m2);
    herm_to_vec(a, x.data());
    herm_to_vec(b, x.data() + m1 * m1);
    return x;
  }
};

class DykstraSolver {
 public:
  DykstraSolver(const ComplexMatrix& z, Eigen::Index n, const ScalingOptions& opts)
      : z_(z), n_(n), opts_(opts), primal_split_{n, 2 * n}, dual_split_{2 * n, n},
        primal_(build_primal()), dual_(build_dual()) {}

  // Returns true with gamma set on a primal certificate, false with
  // separated set on a dual one; throws SolverStalledError otherwise.
  bool run(ComplexMatrix& gamma, std::string& reason, std::vector<double>& trace, int& iters) {
    const ComplexMatrix eye = identity(n_);
    if (accept_primal(eye)) {
      gamma = eye;
      iters = 0;
      return true;
    }
    RealVector y = primal_split_.join(eye, lmi_matrix(z_, eye));
    RealVector q = RealVector::Zero(y.size());
    RealVector dy = primal_dual_start();
    RealVector dq = RealVector::Zero(dy.size());

    double window_start = std::numeric_limits<double>::infinity();
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= opts_.max_iterations; ++it) {
      // Primal step.
      const RealVector xa = primal_(y);
      const RealVector shifted = xa + q;
      const ComplexMatrix g_c = clamp_below(primal_split_.first(shifted), opts_.epsilon);
      const ComplexMatrix m_c = clamp_below(primal_split_.second(shifted), opts_.lmi_margin);
      y = primal_split_.join(g_c, m_c);
      q = shifted - y;
      residual = (xa - y).norm();

      // Dual step.
      const RealVector da = dual_(dy);
      const RealVector dshift = da + dq;
      const ComplexMatrix w_c = clamp_below(dual_split_.first(dshift), 1e-10);
      const ComplexMatrix r_c = clamp_below(dual_split_.second(dshift), 0.0);
      dy = dual_split_.join(w_c, r_c);
      dq = dshift - dy;

      if (it % 10 == 0 || it == 1) {
        const ComplexMatrix ga = primal_split_.first(xa);
        if (accept_primal(ga)) {
          gamma = ga;
          iters = it;
          return true;
        }
        if (accept_primal(g_c)) {
          gamma = g_c;
          iters = it;
          return true;
        }
        if (accept_dual(dual_split_.first(da)) || accept_dual(w_c)) {
          reason = "separating certificate found";
          iters = it;
          return false;
        }
      }
      if (it % 100 == 0) trace.push_back(residual);
      if (it % opts_.plateau_window == 0) {
        if (residual > opts_.plateau_level && residual > 0.99 * window_start) {
          reason = "primal residual plateau at " + std::to_string(residual);
          iters = it;
          return false;
        }
        window_start = residual;
      }
    }
    iters = opts_.max_iterations;
    throw SolverStalledError("scaling search exhausted its iteration budget", iters, residual);
  }

 private:
  AffineProjector build_primal() const {
    // x = [Gamma; M], constraint M - L(Gamma) = M0.
    const Eigen::Index dg = n_ * n_;
    const Eigen::Index dm = 4 * n_ * n_;
    RealMatrix a = RealMatrix::Zero(dm, dg + dm);
    a.rightCols(dm) = RealMatrix::Identity(dm, dm);
    const ComplexMatrix zero_n = ComplexMatrix::Zero(n_, n_);
    for (Eigen::Index i = 0; i < dg; ++i) {
      const ComplexMatrix p = block_diag(zero_n, herm_basis(n_, i));
      a.col(i) = -to_vec(p - z_.adjoint() * p * z_);
    }
    const ComplexMatrix p0 = block_diag(identity(n_), zero_n);
    return AffineProjector(std::move(a), to_vec(p0 - z_.adjoint() * p0 * z_));
  }

  AffineProjector build_dual() const {
    // x = [W; R], constraints [K(W)]_22 + R = 0 and tr [K(W)]_11 = -1.
    const Eigen::Index dw = 4 * n_ * n_;
    const Eigen::Index dr = n_ * n_;
    RealMatrix a = RealMatrix::Zero(dr + 1, dw + dr);
    for (Eigen::Index i = 0; i < dw; ++i) {
      const ComplexMatrix w = herm_basis(2 * n_, i);
      const ComplexMatrix k = w - z_ * w * z_.adjoint();
      a.block(0, i, dr, 1) = to_vec(k.bottomRightCorner(n_, n_));
      a(dr, i) = k.topLeftCorner(n_, n_).trace().real();
    }
    a.block(0, dw, dr, dr) = RealMatrix::Identity(dr, dr);
    RealVector b = RealVector::Zero(dr + 1);
    b(dr) = -1.0;
    return AffineProjector(std::move(a), std::move(b));
  }

  RealVector primal_dual_start() const {
    return dual_(dual_split_.join(identity(2 * n_), ComplexMatrix::Zero(n_, n_)));
  }

  bool accept_primal(const ComplexMatrix& g) const {
    const ComplexMatrix gh = 0.5 * (g + g.adjoint());
    if (lambda_min(gh) <= 0.0) return false;
    return lambda_min(lmi_matrix(z_, gh)) >= 0.0;
  }

  bool accept_dual(const ComplexMatrix& w) const {
    const ComplexMatrix wh = 0.5 * (w + w.adjoint());
    if (lambda_min(wh) < 0.0) return false;
    const ComplexMatrix k = wh - z_ * wh * z_.adjoint();
    if (k.topLeftCorner(n_, n_).trace().real() > -0.5) return false;
    return lambda_min(-k.bottomRightCorner(n_, n_)) >= 0.0;
  }

  const ComplexMatrix& z_;
  Eigen::Index n_;
  const ScalingOptions& opts_;
  Split primal_split_;
  Split dual_split_;
  AffineProjector primal_;
  AffineProjector dual_;
};

// Phase-I barrier method: maximize t subject to M(Gamma) >= t I,
// Gamma >= t I and tr Gamma <= bound. Each centering minimizes
//   -s t - log det(M(Gamma) - t I) - log det(Gamma - t I) - log(bound - tr Gamma).
// On the central path the optimal t is at most t_s + m / s (m = 3n + 1), so a
// centered point with t_s + m / s < 0 certifies infeasibility.
class BarrierSolver {
 public:
  BarrierSolver(const ComplexMatrix& z, Eigen::Index n, const ScalingOptions& opts)
      : z_(z), n_(n), opts_(opts) {
    const Eigen::Index dg = n * n;
    const ComplexMatrix zero_n = ComplexMatrix::Zero(n, n);
    basis_.reserve(static_cast<std::size_t>(dg));
    lmi_basis_.reserve(static_cast<std::size_t>(dg));
    trace_.resize(dg);
    for (Eigen::Index i = 0; i < dg; ++i) {
      basis_.push_back(herm_basis(n, i));
      const ComplexMatrix p = block_diag(zero_n, basis_.back());
      lmi_basis_.push_back(p - z.adjoint() * p * z);
      trace_(i) = basis_.back().trace().real();
    }
    const ComplexMatrix p0 = block_diag(identity(n), zero_n);
    m0_ = p0 - z.adjoint() * p0 * z;
  }

  bool run(ComplexMatrix& gamma, std::string& reason, std::vector<double>& trace, int& iters) {
    const Eigen::Index dg = n_ * n_;
    const double m = static_cast<double>(3 * n_ + 1);
    RealVector x(dg + 1);
    x.head(dg) = to_vec(identity(n_));
    x(dg) = std::min(lambda_min(lmi_matrix(z_, identity(n_))), 1.0) - 1.0;
    double s = 1.0;
    iters = 0;
    while (s < opts_.barrier_max_weight) {
      for (int inner = 0; inner < 100; ++inner) {
        ++iters;
        double dec = 0.0;
        if (!newton_step(x, s, dec)) break;
        if (dec < 1e-10) break;
        if (iters >= opts_.max_iterations) break;
      }
      const double t = x(dg);
      trace.push_back(t);
      if (t > 0.0) {
        const ComplexMatrix g = vec_to_herm(x.data(), n_);
        if (accept(g)) {
          gamma = g;
          return true;
        }
      }
      if (t + 1.5 * m / s < 0.0) {
        reason = "barrier bound: optimal LMI margin is below " + std::to_string(t + 1.5 * m / s);
        return false;
      }
      if (iters >= opts_.max_iterations) break;
      s *= 8.0;
    }
    throw SolverStalledError("scaling search did not separate the LMI margin from zero", iters,
                             x(dg));
  }

 private:
  struct Eval {
    bool ok = false;
    double value = 0.0;
    ComplexMatrix f1_inv, f2_inv;
    double slack = 0.0;
  };

  Eval evaluate(const RealVector& x, double s) const {
    const Eigen::Index dg = n_ * n_;
    Eval e;
    const double t = x(dg);
    const ComplexMatrix g = vec_to_herm(x.data(), n_);
    e.slack = opts_.trace_bound - g.trace().real();
    if (!(e.slack > 0.0)) return e;
    const ComplexMatrix f1 = lmi_matrix(z_, g) - t * identity(2 * n_);
    const ComplexMatrix f2 = g - t * identity(n_);
    const Eigen::LLT<ComplexMatrix> c1(0.5 * (f1 + f1.adjoint()));
    const Eigen::LLT<ComplexMatrix> c2(0.5 * (f2 + f2.adjoint()));
    if (c1.info() != Eigen::Success || c2.info() != Eigen::Success) return e;
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < 2 * n_; ++i) logdet += 2.0 * std::log(c1.matrixLLT()(i, i).real());
    for (Eigen::Index i = 0; i < n_; ++i) logdet += 2.0 * std::log(c2.matrixLLT()(i, i).real());
    if (!std::isfinite(logdet)) return e;
    e.ok = true;
    e.value = -s * t - logdet - std::log(e.slack);
    e.f1_inv = c1.solve(identity(2 * n_));
    e.f2_inv = c2.solve(identity(n_));
    return e;
  }

  bool newton_step(RealVector& x, double s, double& decrement) const {
    const Eigen::Index dg = n_ * n_;
    const Eval e = evaluate(x, s);
    if (!e.ok) return false;
    const Eigen::Index nv = dg + 1;
    std::vector<ComplexMatrix> g1(static_cast<std::size_t>(nv)), g2(static_cast<std::size_t>(nv));
    for (Eigen::Index i = 0; i < dg; ++i) {
      g1[static_cast<std::size_t>(i)] = e.f1_inv * lmi_basis_[static_cast<std::size_t>(i)];
      g2[static_cast<std::size_t>(i)] = e.f2_inv * basis_[static_cast<std::size_t>(i)];
    }
    g1[static_cast<std::size_t>(dg)] = -e.f1_inv;
    g2[static_cast<std::size_t>(dg)] = -e.f2_inv;
    RealVector grad(nv);
    Eigen::MatrixXd hess(nv, nv);
    for (Eigen::Index i = 0; i < nv; ++i) {
      const auto& a1 = g1[static_cast<std::size_t>(i)];
      const auto& a2 = g2[static_cast<std::size_t>(i)];
      const double tr_i = i < dg ? trace_(i) : 0.0;
      grad(i) = -a1.trace().real() - a2.trace().real() + tr_i / e.slack;
      for (Eigen::Index j = 0; j <= i; ++j) {
        const auto& b1 = g1[static_cast<std::size_t>(j)];
        const auto& b2 = g2[static_cast<std::size_t>(j)];
        const double tr_j = j < dg ? trace_(j) : 0.0;
        const double h = (a1.cwiseProduct(b1.transpose())).sum().real() +
                         (a2.cwiseProduct(b2.transpose())).sum().real() +
                         tr_i * tr_j / (e.slack * e.slack);
        hess(i, j) = h;
        hess(j, i) = h;
      }
    }
    grad(dg) -= s;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
    const RealVector step = -ldlt.solve(grad);
    const double slope = grad.dot(step);
    decrement = -slope;
    if (!(slope < 0.0)) {
      decrement = 0.0;
      return true;
    }
    double alpha = 1.0;
    for (int k = 0; k < 60; ++k, alpha *= 0.5) {
      const RealVector trial = x + alpha * step;
      const Eval f = evaluate(trial, s);
      if (f.ok && f.value <= e.value + 0.25 * alpha * slope) {
        x = trial;
        return true;
      }
    }
    decrement = 0.0;
    return true;
  }

  bool accept(const ComplexMatrix& g) const {
    const ComplexMatrix gh = 0.5 * (g + g.adjoint());
    if (lambda_min(gh) < opts_.epsilon) return false;
    return lambda_min(lmi_matrix(z_, gh)) >= 0.0;
  }

  const ComplexMatrix& z_;
  Eigen::Index n_;
  const ScalingOptions& opts_;
  std::vector<ComplexMatrix> basis_;
  std::vector<ComplexMatrix> lmi_basis_;
  RealVector trace_;
  ComplexMatrix m0_;
};

}  // namespace

DilationCertificate assemble_certificate(const ComplexMatrix& t, double delta,
                                         const Prepair& prepair, const ComplexMatrix& gamma,
                                         const ScalingOptions& opts) {
  const Eigen::Index n = t.rows();
  const ComplexMatrix z = z_matrix(t, prepair.Q, delta);
  DilationCertificate c;
  c.gamma = 0.5 * (gamma + gamma.adjoint());
  c.delta_matrix = delta_from_gamma(c.gamma);
  const EvenStranger es = even_stranger(t, delta, prepair, c.delta_matrix);
  c.E = es.E;
  c.Y = es.Y;
  c.residuals.lmi = std::max(0.0, -lambda_min(lmi_matrix(z, c.gamma)));
  c.residuals.isometry = operator_norm(c.E.adjoint() * c.E - identity(n));
  c.residuals.series =
      verify_series(t, delta, c.E, c.Y, default_z_samples(opts.z_samples), opts.max_power).max();
  ComplexMatrix ones(2 * n, n);
  ones << identity(n), identity(n);
  c.residuals.delta_column = operator_norm(c.delta_matrix * ones - 0.5 * ones);
  const ComplexMatrix s = psd_sqrt(c.gamma);
  const ComplexMatrix s_inv = pd_inv_sqrt(c.gamma);
  c.residuals.contraction =
      operator_norm(block_diag(identity(n), s) * z * block_diag(identity(n), s_inv));
  return c;
}

ScalingResult find_scaling(const ComplexMatrix& t, double delta, const ScalingOptions& opts) {
  require_square(t, "T");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  ScalingResult res;
  for (const Complex& mu : spectrum(t)) {
    if (membership(mu, delta, 1e-12) == Region::Exterior) {
      res.status = ScalingStatus::Infeasible;
      res.reason = "spectrum is not contained in K_delta";
      return res;
    }
  }
  const GenericityReport gen = is_generic(t, delta);
  if (!gen.generic) throw NonGenericError("T is not generic: " + gen.reason);
  if (opts.near_boundary_policy) {
    const SupportVerdict sv = contains_support(t, delta, opts.angles, 0.0);
    if (std::abs(sv.min_gap) < opts.near_boundary_margin) {
      throw SolverStalledError("W(T) is within " + std::to_string(opts.near_boundary_margin) +
                                   " of the boundary of K_delta",
                               0, sv.min_gap);
    }
  }
  res.prepair = make_prepair(t, delta, opts.branch);
  res.z = z_matrix(t, res.prepair.Q, delta);

  ComplexMatrix gamma;
  bool ok = false;
  if (opts.method == ScalingMethod::Dykstra) {
    DykstraSolver solver(res.z, t.rows(), opts);
    ok = solver.run(gamma, res.reason, res.residual_trace, res.iterations);
  } else {
    BarrierSolver solver(res.z, t.rows(), opts);
    ok = solver.run(gamma, res.reason, res.residual_trace, res.iterations);
  }
  if (!ok) {
    res.status = ScalingStatus::Infeasible;
    return res;
  }
  res.status = ScalingStatus::Feasible;
  res.certificate = assemble_certificate(t, delta, res.prepair, gamma, opts);
  res.certificate->iterations = res.iterations;
  return res;
}

}  // namespace ellrange
