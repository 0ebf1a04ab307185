// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "kernels_internal.hpp"

namespace ellrange::kernels::detail {
namespace {

void quadratic_form_scalar(const double* x, const double* y, std::size_t n, double a, double b,
                           double* out) {
  const double ia2 = 1.0 / (a * a);
  const double ib2 = 1.0 / (b * b);
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * x[i] * ia2 + y[i] * y[i] * ib2;
}

void support_values_scalar(const double* c, const double* s, std::size_t n, double a, double b,
                           double* out) {
  const double a2 = a * a;
  const double b2 = b * b;
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(a2 * c[i] * c[i] + b2 * s[i] * s[i]);
}

void poly_abs_scalar(const double* cr, const double* ci, std::size_t m, const double* x,
                     const double* y, std::size_t n, double* out) {
  if (m == 0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double pr = cr[m - 1];
    double pi = ci[m - 1];
    for (std::size_t k = m - 1; k-- > 0;) {
      const double tr = pr * x[i] - pi * y[i] + cr[k];
      const double ti = pr * y[i] + pi * x[i] + ci[k];
      pr = tr;
      pi = ti;
    }
    out[i] = std::hypot(pr, pi);
  }
}

void pi_map_scalar(const double* re, const double* im, std::size_t n, double delta, double* out_re,
                   double* out_im) {
  for (std::size_t i = 0; i < n; ++i) {
    const double r2 = re[i] * re[i] + im[i] * im[i];
    const double k = delta / r2;
    // delta / z = delta * conj(z) / |z|^2
    out_re[i] = re[i] + k * re[i];
    out_im[i] = im[i] - k * im[i];
  }
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{quadratic_form_scalar, support_values_scalar, poly_abs_scalar,
                                 pi_map_scalar};
  return table;
}

}  // namespace ellrange::kernels::detail
