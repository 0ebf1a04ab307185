// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ellrange/dilation.hpp"
#include "ellrange/dpops.hpp"
#include "ellrange/errors.hpp"
#include "ellrange/geom.hpp"
#include "ellrange/numrange.hpp"
#include "support/instances.hpp"
#include "support/testkit.hpp"

using namespace ellrange;
using testkit::Gen;

namespace {

ComplexMatrix diag(std::initializer_list<Complex> d) {
  const auto n = static_cast<Eigen::Index>(d.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  Eigen::Index i = 0;
  for (Complex z : d) m(i, i) = z, ++i;
  return m;
}

// |diag(1, S) Z diag(1, S^-1)| with S = Gamma^{1/2}, computed without the
// library's residual bookkeeping.
double scaled_z_norm(const ComplexMatrix& z, const ComplexMatrix& gamma) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gamma);
  const Eigen::VectorXd ev = es.eigenvalues();
  const ComplexMatrix s = es.eigenvectors() * ev.cwiseSqrt().cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  const ComplexMatrix si = es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
                           es.eigenvectors().adjoint();
  const Eigen::Index n = gamma.rows();
  ComplexMatrix l = ComplexMatrix::Identity(2 * n, 2 * n), r = l;
  l.bottomRightCorner(n, n) = s;
  r.bottomRightCorner(n, n) = si;
  return testkit::power_norm(l * z * r, 4000);
}

ComplexMatrix half_power_sum(const Prepair& p, int k) {
  return 0.5 * (matrix_power(p.X1, k) + matrix_power(p.X2, k));
}

}  // namespace

TEST_SUITE("dilation") {
  TEST_CASE("is_generic examples") {
    const double d = 0.3;
    CHECK(is_generic(diag({0.2, Complex(-0.1, 0.3)}), d).generic);
    const auto f = is_generic(fact103_matrix(d), d);
    CHECK_FALSE(f.generic);
    CHECK(f.reason.find("4") != std::string::npos);
    CHECK(f.min_focal_distance < 1e-12);
    const auto rep = is_generic(0.2 * identity(2), d);
    CHECK_FALSE(rep.generic);
    CHECK(rep.min_gap < 1e-12);
    CHECK_FALSE(is_generic(diag({2.0, 0.1}), d).generic);
  }

  TEST_CASE("make_prepair on a scalar") {
    const double d = 0.3;
    const Complex l0(0.7, 0.4);
    ComplexMatrix t(1, 1);
    t(0, 0) = pi_map(l0, d);
    const auto p = make_prepair(t, d);
    CHECK(std::abs(p.X1(0, 0) - l0) < 1e-14);
    CHECK(std::abs(p.X2(0, 0) - d / l0) < 1e-14);
    const auto s = make_prepair(t, d, BranchRule::Swapped);
    CHECK(std::abs(s.X1(0, 0) - d / l0) < 1e-14);
  }

  TEST_CASE("make_prepair rejects the focal example") {
    CHECK_THROWS_AS(make_prepair(fact103_matrix(0.5), 0.5), NonGenericError);
  }

  TEST_CASE("property: prepair invariants") {
    Gen g(40);
    for (int trial = 0; trial < 60; ++trial) {
      const double d = g.uniform(0.05, 0.9);
      const auto inst = testkit::strict_inside(g, g.integer(1, 5), d);
      const ComplexMatrix& t = inst.T;
      const auto p = make_prepair(t, d);
      const Eigen::Index n = t.rows();
      CHECK((p.X1 + p.X2 - t).norm() <= 1e-9);
      CHECK((p.X1 * p.X2 - d * identity(n)).norm() <= 1e-9);
      CHECK((p.Q * p.Q - (t * t - 4 * d * identity(n))).norm() <= 1e-9);
      CHECK((p.Q * t - t * p.Q).norm() <= 1e-9);
      for (const auto& rec : p.eigen_data) {
        CHECK(in_closed_annulus(rec.lambda1, d));
        CHECK(in_closed_annulus(rec.lambda2, d));
        CHECK(std::abs(rec.lambda1) >= std::abs(rec.lambda2) - 1e-14);
      }
      const auto s1 = spectrum(p.X1), s2 = spectrum(p.X2);
      double gap = INFINITY;
      for (Complex a : s1)
        for (Complex b : s2) gap = std::min(gap, std::abs(a - b));
      CHECK(gap > 1e-8);
    }
  }

  TEST_CASE("z_matrix identities") {
    Gen g(41);
    for (int trial = 0; trial < 30; ++trial) {
      const double d = g.uniform(0.05, 0.9);
      const auto inst = testkit::strict_inside(g, g.integer(1, 4), d);
      const auto p = make_prepair(inst.T, d);
      const ComplexMatrix z = z_matrix(inst.T, p.Q, d);
      const Eigen::Index n = inst.T.rows();
      CHECK((z + d * testkit::inverse(z) - block_diag(inst.T, inst.T)).norm() < 1e-9);
      const ComplexMatrix u = u_matrix(n);
      CHECK((u * block_diag(p.X1, p.X2) * u - z).norm() < 1e-9);
    }
  }

  TEST_CASE("z_matrix scalar example and errors") {
    ComplexMatrix t = ComplexMatrix::Zero(1, 1);
    const auto p = make_prepair(t, 0.25);
    CHECK(std::abs(p.Q(0, 0) - Complex(0, 1)) < 1e-15);
    const ComplexMatrix z = z_matrix(t, p.Q, 0.25);
    CHECK(std::abs(z(0, 0)) < 1e-15);
    CHECK(std::abs(z(0, 1) - Complex(0, 0.5)) < 1e-15);
    CHECK(std::abs(z(1, 0) - Complex(0, 0.5)) < 1e-15);

    Gen g(42);
    const ComplexMatrix t2 = g.ginibre(2);
    CHECK_THROWS_AS(z_matrix(t2, g.ginibre(2), 0.3), CommutationError);
    CHECK_THROWS_AS(z_matrix(t2, t2, 0.3), SqrtResidualError);
  }

  TEST_CASE("delta_from_gamma examples") {
    const ComplexMatrix d1 = delta_from_gamma(identity(3));
    CHECK((d1 - 0.5 * identity(6)).norm() < 1e-15);
    const ComplexMatrix d2 = delta_from_gamma(2.0 * identity(2));
    CHECK((d2.topLeftCorner(2, 2) - 0.75 * identity(2)).norm() < 1e-15);
    CHECK((d2.bottomRightCorner(2, 2) - 0.75 * identity(2)).norm() < 1e-15);
    CHECK((d2.topRightCorner(2, 2) + 0.25 * identity(2)).norm() < 1e-15);
    CHECK((d2.bottomLeftCorner(2, 2) + 0.25 * identity(2)).norm() < 1e-15);
    Gen g(43);
    const ComplexMatrix gamma = g.hermitian(3, 0.1, 5.0);
    const ComplexMatrix dm = delta_from_gamma(gamma);
    for (int k = 0; k < 10; ++k) {
      const ComplexVector v = g.unit_vector(3);
      ComplexVector vv(6);
      vv << v, v;
      CHECK((dm * vv - 0.5 * vv).norm() < 1e-14);
    }
    CHECK_THROWS_AS(delta_from_gamma(-identity(2)), NotPositiveError);
    ComplexMatrix nh = identity(2);
    nh(0, 1) = 1.0;
    CHECK_THROWS_AS(delta_from_gamma(nh), NotHermitianError);
  }

  TEST_CASE("even_stranger scalar example") {
    ComplexMatrix t = ComplexMatrix::Zero(1, 1);
    const auto p = make_prepair(t, 0.25);
    const auto es = even_stranger(t, 0.25, p, delta_from_gamma(identity(1)));
    CHECK(std::abs(es.Y(0, 0) - Complex(0, 0.5)) < 1e-15);
    CHECK(std::abs(es.Y(1, 1) - Complex(0, -0.5)) < 1e-15);
    CHECK(std::abs(es.Y(0, 1)) < 1e-15);
    CHECK(operator_norm(es.Y) == doctest::Approx(0.5));
    CHECK((es.E.adjoint() * es.E - identity(1)).norm() < 1e-15);
  }

  TEST_CASE("even_stranger rejects a bad Delta") {
    ComplexMatrix t = ComplexMatrix::Zero(2, 2);
    t(0, 1) = 1.2;
    const double d = 0.3;
    const auto p = make_prepair(t + diag({0.01, -0.02}), d);
    // Gamma far from any feasible scaling makes Y expansive.
    ComplexMatrix gamma = identity(2);
    gamma(1, 1) = 1e-6;
    CHECK_THROWS_AS(even_stranger(t + diag({0.01, -0.02}), d, p, delta_from_gamma(gamma)),
                    ContractionViolationError);
  }

  TEST_CASE("verify_series trivial cases") {
    Gen g(44);
    const double d = 0.4;
    const auto inst = testkit::strict_inside(g, 3, d);
    const auto r = find_scaling(inst.T, d);
    REQUIRE(r.feasible());
    const auto& c = *r.certificate;
    const auto at0 = verify_series(inst.T, d, c.E, c.Y, {Complex(0, 0)}, 0);
    CHECK(at0.resolvent_residual < 1e-15);
    CHECK((c.E.adjoint() * c.Y * c.E - 0.5 * inst.T).norm() < 1e-10);
    const auto ps = power_sums(inst.T, d, 6);
    for (int k = 0; k <= 6; ++k) CHECK((ps[static_cast<std::size_t>(k)] - half_power_sum(r.prepair, k)).norm() < 1e-9);
  }

  TEST_CASE("default z samples lie in the open disc") {
    const auto zs = default_z_samples(32);
    CHECK(zs.size() == 32);
    for (Complex z : zs) CHECK(std::abs(z) < 0.96);
  }

  TEST_CASE("find_scaling examples") {
    const ComplexMatrix t = diag({0.5, Complex(0, -0.3)});
    const auto r = find_scaling(t, 0.2);
    REQUIRE(r.feasible());
    CHECK(scaled_z_norm(r.z, r.certificate->gamma) <= 1 + 1e-8);

    const auto out = find_scaling((1 + 0.2 + 0.2) * diag({1.0, 0.9}), 0.2);
    CHECK_FALSE(out.feasible());
    CHECK_FALSE(out.reason.empty());

    CHECK_THROWS_AS(find_scaling(0.1 * identity(2), 0.2), NonGenericError);
  }

  TEST_CASE("find_scaling near the boundary reports a stall") {
    Gen g(45);
    const double d = 0.3;
    const ComplexMatrix t0 = g.ginibre(3);
    const ComplexMatrix t = inclusion_scale(t0, d) * (1 - 1e-9) * t0;
    CHECK_THROWS_AS(find_scaling(t, d), SolverStalledError);
  }

  TEST_CASE("property: find_scaling matches the support test and certificates are sound") {
    Gen g(46);
    int feasible = 0;
    for (int trial = 0; trial < 80; ++trial) {
      const double d = g.pick(std::vector<double>{0.1, 0.3, 0.5, 0.8});
      const auto inst = testkit::strict_instance(g, g.integer(2, 4), d, g.coin(), 1e-3);
      if (!is_generic(inst.T, d).generic && inst.gap < 0) {
        // repeated or focal eigenvalues only matter when W(T) escapes through them
        continue;
      }
      const auto r = find_scaling(inst.T, d);
      CHECK(r.feasible() == (inst.gap > 0));
      if (!r.feasible()) continue;
      ++feasible;
      const auto& c = *r.certificate;
      CHECK(scaled_z_norm(r.z, c.gamma) <= 1 + 1e-8);
      CHECK(lambda_min(c.gamma) > 0);
      CHECK(lambda_min(c.delta_matrix) > 0);
      CHECK(operator_norm(c.Y) <= 1 + 1e-8);
      const auto rep = verify_series(inst.T, d, c.E, c.Y, default_z_samples(32), 12);
      CHECK(rep.max() <= 1e-8);
      CHECK(c.residuals.series == doctest::Approx(rep.max()));
    }
    CHECK(feasible > 20);
  }

  TEST_CASE("property: both branch rules give the same verdict") {
    Gen g(47);
    for (int trial = 0; trial < 50; ++trial) {
      const double d = g.pick(std::vector<double>{0.1, 0.3, 0.5, 0.8});
      const auto inst = testkit::strict_instance(g, g.integer(2, 4), d, g.coin(), 1e-3);
      if (!is_generic(inst.T, d).generic) continue;
      ScalingOptions a, b;
      b.branch = BranchRule::Swapped;
      const auto ra = find_scaling(inst.T, d, a);
      const auto rb = find_scaling(inst.T, d, b);
      CHECK(ra.feasible() == rb.feasible());
      if (ra.feasible() || rb.feasible()) {
        CHECK((ra.prepair.X1 - rb.prepair.X2).norm() < 1e-9);
        CHECK((ra.prepair.Q + rb.prepair.Q).norm() < 1e-9);
        const Eigen::Index n = inst.T.rows();
        const ComplexMatrix j = j_matrix(n);
        // swapping branches conjugates Z_T by the block swap J
        CHECK((j * ra.z * j - rb.z).norm() < 1e-9);
      }
    }
  }

  TEST_CASE("Dykstra solver never misclassifies and certifies interior instances") {
    Gen g(48);
    ScalingOptions opts;
    opts.method = ScalingMethod::Dykstra;
    int stalls = 0;
    for (int trial = 0; trial < 20; ++trial) {
      const double d = g.pick(std::vector<double>{0.2, 0.5});
      const bool inside = trial % 2 == 0;
      const auto inst = testkit::strict_instance(g, 2, d, inside, 0.05);
      if (!is_generic(inst.T, d).generic) continue;
      try {
        const auto r = find_scaling(inst.T, d, opts);
        CHECK(r.feasible() == inside);
        if (r.feasible()) CHECK(r.certificate->residuals.series <= 1e-8);
      } catch (const SolverStalledError& e) {
        // without a separating certificate Dykstra can only report a stall
        CHECK_MESSAGE(!inside, "stalled on an interior instance, gap " << inst.gap);
        ++stalls;
      }
    }
    MESSAGE("Dykstra stalls on exterior instances: " << stalls);
  }

  TEST_CASE("schaffer_dilation examples") {
    Gen g(49);
    const ComplexMatrix u0 = g.unitary(3);
    const auto du = schaffer_dilation(u0, 4);
    CHECK(du.unitarity_residual < 1e-12);
    for (int k = 1; k <= 4; ++k) CHECK((du.compress(matrix_power(du.U, k)) - matrix_power(u0, k)).norm() < 1e-12);

    const auto d0 = schaffer_dilation(ComplexMatrix::Zero(1, 1), 2);
    REQUIRE(d0.U.rows() == 3);
    for (Eigen::Index i = 0; i < 3; ++i) {
      int ones = 0;
      for (Eigen::Index k = 0; k < 3; ++k) {
        const double a = std::abs(d0.U(i, k));
        CHECK((a < 1e-15 || std::abs(a - 1) < 1e-15));
        ones += a > 0.5;
      }
      CHECK(ones == 1);
    }
    for (int k = 1; k <= 2; ++k) CHECK(std::abs(matrix_power(d0.U, k)(0, 0)) < 1e-15);

    for (int trial = 0; trial < 10; ++trial) {
      const ComplexMatrix y = g.with_singular_values(4, 0.0, 1.0);
      const auto dy = schaffer_dilation(y, 6);
      CHECK((dy.U.adjoint() * dy.U - identity(dy.U.rows())).norm() < 1e-10);
      for (int k = 1; k <= 6; ++k) CHECK((dy.compress(matrix_power(dy.U, k)) - matrix_power(y, k)).norm() < 1e-9);
    }
    CHECK_THROWS_AS(schaffer_dilation(1.1 * identity(2), 2), ContractionViolationError);
  }

  TEST_CASE("property: composed strange dilation reproduces power sums") {
    Gen g(50);
    for (int trial = 0; trial < 15; ++trial) {
      const double d = g.pick(std::vector<double>{0.1, 0.3, 0.5, 0.8});
      const auto inst = testkit::strict_inside(g, g.integer(1, 3), d);
      const auto r = find_scaling(inst.T, d);
      REQUIRE(r.feasible());
      const auto dil = schaffer_dilation(r.certificate->Y, 8);
      const ComplexMatrix iota = dil.embed(r.certificate->E);
      for (int k = 0; k <= 8; ++k)
        CHECK((half_power_sum(r.prepair, k) - iota.adjoint() * matrix_power(dil.U, k) * iota).norm() <= 1e-8);
    }
  }
}
