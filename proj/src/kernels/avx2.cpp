// SPDX-License-Identifier: Apache-2.0
//
// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// is only reached after the dispatcher has confirmed CPU support.
#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace ellrange::kernels::detail {
namespace {

constexpr std::size_t kLanes = 4;

void quadratic_form_avx2(const double* x, const double* y, std::size_t n, double a, double b,
                         double* out) {
  const double ia2 = 1.0 / (a * a);
  const double ib2 = 1.0 / (b * b);
  const __m256d va = _mm256_set1_pd(ia2);
  const __m256d vb = _mm256_set1_pd(ib2);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d q = _mm256_fmadd_pd(_mm256_mul_pd(vx, vx), va, _mm256_mul_pd(_mm256_mul_pd(vy, vy), vb));
    _mm256_storeu_pd(out + i, q);
  }
  for (; i < n; ++i) out[i] = x[i] * x[i] * ia2 + y[i] * y[i] * ib2;
}

void support_values_avx2(const double* c, const double* s, std::size_t n, double a, double b,
                         double* out) {
  const double a2 = a * a;
  const double b2 = b * b;
  const __m256d va = _mm256_set1_pd(a2);
  const __m256d vb = _mm256_set1_pd(b2);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vc = _mm256_loadu_pd(c + i);
    const __m256d vs = _mm256_loadu_pd(s + i);
    const __m256d h2 = _mm256_fmadd_pd(_mm256_mul_pd(vc, vc), va, _mm256_mul_pd(_mm256_mul_pd(vs, vs), vb));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(h2));
  }
  for (; i < n; ++i) out[i] = std::sqrt(a2 * c[i] * c[i] + b2 * s[i] * s[i]);
}

void poly_abs_avx2(const double* cr, const double* ci, std::size_t m, const double* x,
                   const double* y, std::size_t n, double* out) {
  if (m == 0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
    return;
  }
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    __m256d pr = _mm256_set1_pd(cr[m - 1]);
    __m256d pi = _mm256_set1_pd(ci[m - 1]);
    for (std::size_t k = m - 1; k-- > 0;) {
      // (pr + i pi)(x + i y) + c_k
      const __m256d tr = _mm256_fmsub_pd(pr, vx, _mm256_fmsub_pd(pi, vy, _mm256_set1_pd(cr[k])));
      const __m256d ti = _mm256_fmadd_pd(pr, vy, _mm256_fmadd_pd(pi, vx, _mm256_set1_pd(ci[k])));
      pr = tr;
      pi = ti;
    }
    // hypot without overflow guard: coefficients and grids here are O(1).
    const __m256d mag = _mm256_sqrt_pd(_mm256_fmadd_pd(pr, pr, _mm256_mul_pd(pi, pi)));
    _mm256_storeu_pd(out + i, mag);
  }
  if (i < n) scalar_table().poly_abs(cr, ci, m, x + i, y + i, n - i, out + i);
}

void pi_map_avx2(const double* re, const double* im, std::size_t n, double delta, double* out_re,
                 double* out_im) {
  const __m256d vd = _mm256_set1_pd(delta);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d vr = _mm256_loadu_pd(re + i);
    const __m256d vi = _mm256_loadu_pd(im + i);
    const __m256d r2 = _mm256_fmadd_pd(vr, vr, _mm256_mul_pd(vi, vi));
    const __m256d k = _mm256_div_pd(vd, r2);
    _mm256_storeu_pd(out_re + i, _mm256_fmadd_pd(k, vr, vr));
    _mm256_storeu_pd(out_im + i, _mm256_fnmadd_pd(k, vi, vi));
  }
  if (i < n) scalar_table().pi_map(re + i, im + i, n - i, delta, out_re + i, out_im + i);
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{quadratic_form_avx2, support_values_avx2, poly_abs_avx2,
                                 pi_map_avx2};
  return table;
}

}  // namespace ellrange::kernels::detail
