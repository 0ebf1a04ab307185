// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ellrange/ando.hpp"
#include "ellrange/dilation.hpp"
#include "ellrange/errors.hpp"
#include "ellrange/numrange.hpp"
#include "support/instances.hpp"
#include "support/testkit.hpp"

using namespace ellrange;
using testkit::Gen;

namespace {

// Hermitian square root by Eigen's own solver, independent of psd_sqrt.
ComplexMatrix herm_sqrt(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

// C = sqrt(d) X J with X = W [[I, E], [0, -I]] W* an involution and
// |E| = (1/sqrt d - sqrt d)/2, so |C| < 1 and delta C^-1 = JCJ.
ComplexMatrix normal_form_germinator(Gen& g, int n, double d) {
  ComplexMatrix e = g.ginibre(n);
  e *= ((1 / std::sqrt(d) - std::sqrt(d)) / 2) / operator_norm(e);
  ComplexMatrix x = identity(2 * n);
  x.bottomRightCorner(n, n) *= -1.0;
  x.topRightCorner(n, n) = e;
  const ComplexMatrix w = g.unitary(2 * n);
  return std::sqrt(d) * w * x * w.adjoint() * j_matrix(n);
}

struct Pipeline {
  testkit::Instance inst;
  ScalingResult scaling;
  Germinator germ;
};

Pipeline feasible_pipeline(Gen& g, int n, double d) {
  Pipeline p;
  p.inst = testkit::strict_inside(g, n, d);
  p.scaling = find_scaling(p.inst.T, d);
  REQUIRE(p.scaling.feasible());
  p.germ = germinator_from_certificate(p.inst.T, d, p.scaling.prepair, *p.scaling.certificate);
  return p;
}

}  // namespace

TEST_SUITE("ando") {
  TEST_CASE("validate_germinator: normal-form construction is valid") {
    Gen g(60);
    for (int trial = 0; trial < 30; ++trial) {
      const double d = g.uniform(0.05, 0.9);
      const ComplexMatrix c = normal_form_germinator(g, g.integer(1, 4), d);
      const auto rep = validate_germinator(c, d);
      CHECK_MESSAGE(rep.valid, rep.reason);
      CHECK(rep.norm < 1.0);
    }
  }

  TEST_CASE("validate_germinator: failures name the first broken condition") {
    const double d = 0.3;
    const auto c12 = validate_germinator(std::sqrt(d) * j_matrix(1), d);
    CHECK_FALSE(c12.valid);
    CHECK(c12.reason.find("C12") != std::string::npos);

    Gen g(61);
    const ComplexMatrix c = normal_form_germinator(g, 2, d);
    const auto big = validate_germinator(1.1 * c / operator_norm(c), d);
    CHECK_FALSE(big.valid);
    CHECK(big.reason.find("norm") != std::string::npos);

    CHECK_THROWS_AS(validate_germinator(ComplexMatrix::Zero(2, 2), d), SingularError);
  }

  TEST_CASE("germinator from a certificate: block structure") {
    Gen g(62);
    for (int trial = 0; trial < 20; ++trial) {
      const double d = g.pick(std::vector<double>{0.2, 0.5, 0.8});
      const auto p = feasible_pipeline(g, g.integer(1, 3), d);
      const ComplexMatrix& t = p.inst.T;
      const ComplexMatrix s = herm_sqrt(p.scaling.certificate->gamma);
      const ComplexMatrix si = testkit::inverse(s);
      const ComplexMatrix& q = p.scaling.prepair.Q;
      CHECK((p.germ.C11 - 0.5 * t).norm() < 1e-9);
      CHECK((p.germ.C12 - 0.5 * q * si).norm() < 1e-7 * std::max(1.0, (q * si).norm()));
      CHECK((p.germ.C21 - 0.5 * s * q).norm() < 1e-7 * std::max(1.0, (s * q).norm()));
      CHECK((p.germ.C22 - 0.5 * s * t * si).norm() < 1e-7 * std::max(1.0, (s * t * si).norm()));

      const ComplexMatrix pic = p.germ.C + d * testkit::inverse(p.germ.C);
      CHECK((pic - block_diag(t, s * t * si)).norm() < 1e-8 * std::max(1.0, pic.norm()));

      std::vector<Complex> expect;
      for (const auto& rec : p.scaling.prepair.eigen_data) {
        expect.push_back(rec.lambda1);
        expect.push_back(rec.lambda2);
      }
      sort_lexicographic(expect);
      const auto sc = spectrum(p.germ.C);
      for (std::size_t i = 0; i < sc.size(); ++i) CHECK(std::abs(sc[i] - expect[i]) < 1e-8);
    }
  }

  TEST_CASE("property: germinator eigen-symmetry and similar halves") {
    Gen g(63);
    for (int trial = 0; trial < 20; ++trial) {
      const double d = g.uniform(0.1, 0.85);
      const auto p = feasible_pipeline(g, g.integer(1, 3), d);
      const auto& c = p.germ;
      const Eigen::Index n = c.C11.rows();
      const auto dec = diagonalize(c.C);
      for (std::size_t i = 0; i < dec.values.size(); ++i) {
        ComplexVector v = dec.vectors.col(static_cast<Eigen::Index>(i));
        ComplexVector w = v;
        w.tail(n) *= -1.0;
        CHECK((c.C * w - (d / dec.values[i]) * w).norm() < 1e-8 * std::max(1.0, w.norm()));
      }
      CHECK((c.C11 * c.C12 - c.C12 * c.C22).norm() < 1e-8 * std::max(1.0, c.C12.norm()));
    }
  }

  TEST_CASE("germinator_split: involution, Hermitian A, reconstruction") {
    Gen g(64);
    for (int trial = 0; trial < 30; ++trial) {
      const double d = g.uniform(0.1, 0.85);
      Germinator germ;
      if (trial % 2 == 0) {
        germ = feasible_pipeline(g, g.integer(1, 3), d).germ;
      } else {
        germ = Germinator::from_matrix(normal_form_germinator(g, g.integer(1, 3), d), d);
      }
      const Eigen::Index n = germ.C11.rows();
      const ComplexMatrix x = germ.C * j_matrix(n) / std::sqrt(d);
      CHECK((x * x - identity(2 * n)).norm() < 1e-8);

      const auto sp = germinator_split(germ);
      CHECK((sp.A - sp.A.adjoint()).norm() < 1e-12);
      CHECK(testkit::power_norm(sp.A) <= 1 + 1e-9);
      const double bound = 1 / std::sqrt(d) - std::sqrt(d);
      CHECK(testkit::power_norm(sp.F) <= bound + 1e-8);
      CHECK(testkit::power_norm(sp.E) <= bound + 1e-8);

      const ComplexMatrix rp = herm_sqrt(identity(n) + sp.A);
      const ComplexMatrix rm = herm_sqrt(identity(n) - sp.A);
      const ComplexMatrix c11 = std::sqrt(d) * (sp.A + 0.5 * rp * sp.F * rm);
      CHECK((c11 - germ.C11).norm() < 1e-8);
      CHECK(sp.reconstruction_residual < 1e-8);
    }
  }

  TEST_CASE("germinator_split rejects a non-involution") {
    Gen g(65);
    const double d = 0.3;
    ComplexMatrix c = normal_form_germinator(g, 2, d);
    c(0, 0) += 0.1;
    CHECK_THROWS_AS(germinator_split(Germinator::from_matrix(c, d)), InvolutionError);
  }

  TEST_CASE("ando_compose examples") {
    Gen g(66);
    const double d = 0.3;
    const ComplexMatrix b = g.with_singular_values(3, 0.0, 1.0);
    const ComplexMatrix t1 = ando_compose(identity(3), b, d);
    CHECK((t1 - 2 * std::sqrt(d) * identity(3)).norm() < 1e-14);
    CHECK(contains_support(t1, d).verdict == Inclusion::Inside);

    const ComplexMatrix t2 = ando_compose(ComplexMatrix::Zero(2, 2), identity(2), d);
    CHECK((t2 - (1 - d) * identity(2)).norm() < 1e-15);

    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix a = g.hermitian(3, -1.0, 1.0);
      const ComplexMatrix bb = g.with_singular_values(3, 0.0, 1.0);
      const ComplexMatrix t = ando_compose(a, bb, 0.0);
      const ComplexMatrix expect = herm_sqrt(identity(3) + a) * bb * herm_sqrt(identity(3) - a);
      CHECK((t - expect).norm() < 1e-12);
      CHECK(numerical_radius(t) <= 1 + 1e-8);
    }

    ComplexMatrix nh = identity(2) * 0.5;
    nh(0, 1) = 0.2;
    CHECK_THROWS_AS(ando_compose(nh, identity(2), d), NotHermitianError);
    CHECK_THROWS_AS(ando_compose(1.5 * identity(2), identity(2), d), NotContractionError);
    CHECK_THROWS_AS(ando_compose(identity(2) * 0.5, 2.0 * identity(2), d), NotContractionError);
  }

  TEST_CASE("property: composed operators satisfy the Rayleigh inequality") {
    Gen g(67);
    for (int trial = 0; trial < 200; ++trial) {
      const double d = g.uniform(0.0, 0.95);
      const int n = g.integer(1, 4);
      ComplexMatrix a = g.hermitian(n, -1.0, 1.0);
      ComplexMatrix b = g.with_singular_values(n, 0.0, 1.0);
      if (trial % 4 == 0) {
        // edge: |A| = 1 with an eigenvalue at +-1, unitary B
        const ComplexMatrix u = g.unitary(n);
        Eigen::VectorXd ev(n);
        for (int i = 0; i < n; ++i) ev(i) = g.uniform(-1, 1);
        ev(0) = g.coin() ? 1.0 : -1.0;
        a = u * ev.cast<Complex>().asDiagonal() * u.adjoint();
        a = (a + a.adjoint()) / 2.0;
        b = g.unitary(n);
      }
      const ComplexMatrix t = ando_compose(a, b, d);
      for (int k = 0; k < 100; ++k) {
        const ComplexVector v = g.unit_vector(n);
        const double av = v.dot(a * v).real();
        const Complex tv = v.dot(t * v);
        CHECK(std::norm(tv - 2 * std::sqrt(d) * av) <= (1 - d) * (1 - d) * (1 - av * av) + 1e-9);
      }
      CHECK(contains_support(t, d, 512, 1e-8).verdict != Inclusion::Outside);
    }
  }

  TEST_CASE("ando_factor round trip") {
    Gen g(68);
    for (double d : {0.2, 0.5, 0.8}) {
      for (int n : {2, 3}) {
        for (int trial = 0; trial < 4; ++trial) {
          const auto inst = testkit::strict_inside(g, n, d);
          const auto f = ando_factor(inst.T, d);
          const ComplexMatrix back = ando_compose(f.A, f.B, d);
          CHECK((back - inst.T).norm() <= 1e-7);
          CHECK((f.A - f.A.adjoint()).norm() < 1e-12);
          CHECK(testkit::power_norm(f.A) <= 1 + 1e-9);
          CHECK(testkit::power_norm(f.B) <= 1 + 1e-9);
        }
      }
    }
  }

  TEST_CASE("ando_factor preconditions") {
    const double d = 0.3;
    CHECK_THROWS_AS(ando_factor(2 * std::sqrt(d) * identity(2), d), NonGenericError);
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    out(0, 0) = 1.0;
    out(1, 1) = -0.5;
    out(0, 1) = 2.5;
    CHECK_THROWS_AS(ando_factor(out, d), InfeasibleError);
  }
}
