// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ellrange/calcnorm.hpp"
#include "ellrange/dpops.hpp"
#include "ellrange/geom.hpp"
#include "ellrange/numrange.hpp"
#include "support/instances.hpp"
#include "support/testkit.hpp"

using namespace ellrange;
using testkit::Gen;

namespace {

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace

TEST_SUITE("calcnorm") {
  TEST_CASE("pi_sharp examples") {
    const double d = 0.3;
    const LaurentFn p1 = pi_sharp(PolyFn{{0.0, 1.0}}, d);
    CHECK(std::abs(p1.coeff(1) - 1.0) < 1e-15);
    CHECK(std::abs(p1.coeff(-1) - d) < 1e-15);
    CHECK(std::abs(p1.coeff(0)) < 1e-15);

    const LaurentFn p2 = pi_sharp(PolyFn{{0.0, 0.0, 1.0}}, d);
    CHECK(std::abs(p2.coeff(2) - 1.0) < 1e-15);
    CHECK(std::abs(p2.coeff(0) - 2 * d) < 1e-15);
    CHECK(std::abs(p2.coeff(-2) - d * d) < 1e-15);
    CHECK(std::abs(p2.coeff(1)) < 1e-15);
    CHECK(std::abs(p2.coeff(-1)) < 1e-15);
  }

  TEST_CASE("property: pi_sharp is pointwise the pullback and symmetric") {
    Gen g(80);
    for (int trial = 0; trial < 50; ++trial) {
      const double d = g.uniform(0.05, 0.9);
      const PolyFn phi{g.poly(5)};
      const LaurentFn psi = pi_sharp(phi, d);
      CHECK(is_symmetric(psi, d));
      for (int k = 0; k < 100; ++k) {
        const Complex l0 = std::polar(g.uniform(d, 1.0), g.uniform(0, 2 * std::numbers::pi));
        const Complex a = psi(l0), b = psi(d / l0);
        const Complex direct = horner(phi.coeffs, l0 + d / l0);
        CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
        CHECK(std::abs(a - direct) <= 1e-10 * std::max(1.0, std::abs(a)));
      }
    }
  }

  TEST_CASE("is_symmetric examples") {
    const double d = 0.4;
    LaurentFn sym;
    sym.delta = d;
    sym.coeffs = {{1, 1.0}, {-1, d}};
    CHECK(is_symmetric(sym, d));
    LaurentFn plain;
    plain.delta = d;
    plain.coeffs = {{1, 1.0}};
    CHECK_FALSE(is_symmetric(plain, d));
    CHECK(symmetry_defect(plain, d) > 0.1);
  }

  TEST_CASE("matrix evaluation matches scalar evaluation on the spectrum") {
    Gen g(81);
    for (int trial = 0; trial < 20; ++trial) {
      const double d = g.uniform(0.1, 0.8);
      const PolyFn phi{g.poly(g.integer(0, 7))};
      const LaurentFn psi = pi_sharp(phi, d);
      const ComplexMatrix x = g.with_singular_values(3, d + 0.05, 0.95);
      const ComplexMatrix spectral = apply_function(x, [&](Complex z) { return psi(z); });
      const ComplexMatrix direct = psi(x);
      CHECK((spectral - direct).norm() <= 1e-8 * std::max(1.0, direct.norm()));
      const ComplexMatrix t = g.ginibre(3);
      CHECK((phi(t) - apply_function(t, [&](Complex z) { return phi(z); })).norm() <=
            1e-8 * std::max(1.0, phi(t).norm()));
    }
  }

  TEST_CASE("sample_bfd examples") {
    const auto one = sample_bfd(PolyFn{{1.0}}, 0.3, 2, 50, 42);
    CHECK(one.lower_bound == 1.0);

    const PolyFn s{{0.0, 1.0}};
    const auto big = sample_bfd(s, 0.3, 2, 2000, 42);
    CHECK(big.lower_bound >= 1 + 0.3 - 0.05);
    CHECK(big.lower_bound == doctest::Approx(operator_norm(big.witness)).epsilon(1e-10));
    CHECK(contains_support(big.witness, 0.3, 512, 1e-8).verdict != Inclusion::Outside);
    CHECK(big.samples_used == 2000);
    CHECK(big.seed == 42u);

    const auto few = sample_bfd(s, 0.3, 2, 100, 42);
    CHECK(few.lower_bound <= big.lower_bound);
  }

  TEST_CASE("sample_bfd witnesses: norm identity and family membership") {
    Gen g(82);
    for (int trial = 0; trial < 10; ++trial) {
      const double d = g.uniform(0.0, 0.9);
      const PolyFn phi{g.poly(g.integer(1, 5))};
      const auto est = sample_bfd(phi, d, g.integer(1, 4), 200, static_cast<std::uint64_t>(trial));
      CHECK(std::abs(est.lower_bound - operator_norm(phi(est.witness))) <= 1e-10 * std::max(1.0, est.lower_bound));
      CHECK(contains_support(est.witness, d, 512, 1e-8).verdict != Inclusion::Outside);
    }
  }

  TEST_CASE("samples depend only on (seed, index)") {
    for (int i : {0, 1, 2, 7, 100}) {
      const ComplexMatrix a = bfd_sample(0.3, 3, 9, i);
      const ComplexMatrix b = bfd_sample(0.3, 3, 9, i);
      CHECK((a - b).norm() == 0.0);
      CHECK((dp_sample(0.3, 3, 9, i) - dp_sample(0.3, 3, 9, i)).norm() == 0.0);
    }
    CHECK((bfd_sample(0.3, 3, 9, 5) - bfd_sample(0.3, 3, 10, 5)).norm() > 0.0);
    const PolyFn phi{{0.2, 1.0, Complex(0, 0.5)}};
    const auto e1 = sample_bfd(phi, 0.4, 3, 300, 5);
    const auto e2 = sample_bfd(phi, 0.4, 3, 300, 5);
    CHECK(e1.lower_bound == e2.lower_bound);
    CHECK(e1.witness_index == e2.witness_index);
  }

  TEST_CASE("sample_dp examples") {
    const double d = 0.3;
    LaurentFn one;
    one.delta = d;
    one.coeffs = {{0, 1.0}};
    CHECK(sample_dp(one, d, 2, 50, 42).lower_bound == doctest::Approx(1.0).epsilon(1e-14));

    LaurentFn id;
    id.delta = d;
    id.coeffs = {{1, 1.0}};
    const auto e = sample_dp(id, d, 2, 400, 42);
    CHECK(e.lower_bound <= 1.0);
    CHECK(e.lower_bound >= 1 - 1e-5);
    const auto rep = is_douglas_paulsen(e.witness, d, 1e-9);
    CHECK(rep.is_dp);
  }

  TEST_CASE("injected extension images carry the bfd estimate into the dp family") {
    Gen g(83);
    for (int trial = 0; trial < 5; ++trial) {
      const double d = g.pick(std::vector<double>{0.2, 0.4, 0.6});
      const PolyFn phi{g.poly(3)};
      const auto inst = testkit::strict_inside(g, 2, d);
      const double target = operator_norm(phi(inst.T));
      const auto w = dp_extend(inst.T, d);
      const auto est = sample_dp(pi_sharp(phi, d), d, 2, 50, 42, {w.X});
      CHECK(est.lower_bound >= target - 1e-7 * std::max(1.0, target));
    }
  }

  TEST_CASE("delyon bound") {
    CHECK(delyon_bound(0.0) == doctest::Approx(515.0).epsilon(1e-15));
    double prev = delyon_bound(0.0);
    for (int i = 1; i < 100; ++i) {
      const double k = delyon_bound(0.0099 * i);
      CHECK(k > prev);
      prev = k;
    }
    const double near1 = delyon_bound(1 - 1e-12);
    CHECK_FALSE(std::isnan(near1));
    CHECK(near1 > 1e30);
  }

  TEST_CASE("sup over the ellipse") {
    const double d = 0.3;
    CHECK(sup_on_Gdelta(PolyFn{{0.0, 1.0}}, d) == doctest::Approx(1 + d).epsilon(1e-12));
    CHECK(sup_on_Gdelta(PolyFn{{0.0, 0.0, 1.0}}, d) == doctest::Approx((1 + d) * (1 + d)).epsilon(1e-12));
    Gen g(84);
    for (int trial = 0; trial < 5; ++trial) {
      const double dd = g.uniform(0.0, 0.9);
      const PolyFn phi{g.poly(g.integer(1, 8))};
      const double oracle = testkit::grid_max(
          [&](double t) { return std::abs(horner(phi.coeffs, Complex((1 + dd) * std::cos(t), (1 - dd) * std::sin(t)))); },
          0.0, 2 * std::numbers::pi, 1000000);
      CHECK(std::abs(sup_on_Gdelta(phi, dd) - oracle) <= 1e-6 * std::max(1.0, oracle));
    }
  }

  TEST_CASE("property: Delyon inequality on sampled operators") {
    Gen g(85);
    for (int trial = 0; trial < 100; ++trial) {
      const double d = g.uniform(0.0, 0.9);
      const int n = g.integer(1, 4);
      const ComplexMatrix t = bfd_sample(d, n, 7, trial);
      const PolyFn p{g.poly(g.integer(0, 6))};
      CHECK(operator_norm(p(t)) <= delyon_bound(d) * sup_on_Gdelta(p, d) + 1e-6);
    }
  }

  TEST_CASE("bidisc slice membership") {
    CHECK(bidisc_slice_member(0.0, 0.0));
    CHECK_FALSE(bidisc_slice_member(2.0, 0.0));
    const double d = 0.3;
    CHECK(bidisc_slice_member(0.5, d));
    CHECK_FALSE(bidisc_slice_member(1.5, d));
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
      for (int k = 0; k < 100; ++k) {
        const Complex s(-1.5 + 3.0 * i / 99, -1.0 + 2.0 * k / 99);
        if (std::abs(testkit::ellipse_q(s, d) - 1) < 1e-9) continue;
        CHECK(bidisc_slice_member(s, d) == (membership(s, d) == Region::Interior));
        ++checked;
      }
    }
    CHECK(checked > 9900);
  }
}
