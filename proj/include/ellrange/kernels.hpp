// SPDX-License-Identifier: Apache-2.0
//
// Batched point kernels used by the grid sweeps (ellipse membership, support
// values, polynomial moduli on boundary grids). Every kernel has a scalar
// reference implementation and, on x86-64, an AVX2/FMA variant. The variant is
// chosen once at runtime from CPUID; ELLIPTIC_RANGE_SIMD=scalar|avx2 overrides.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace ellrange::kernels {

enum class Backend { Scalar, Avx2 };

struct KernelTable {
  // out[i] = x[i]^2 / a^2 + y[i]^2 / b^2
  void (*quadratic_form)(const double* x, const double* y, std::size_t n, double a, double b,
                         double* out);
  // out[i] = sqrt(a^2 c[i]^2 + b^2 s[i]^2)
  void (*support_values)(const double* c, const double* s, std::size_t n, double a, double b,
                         double* out);
  // out[i] = |p(x[i] + i y[i])|, p given by ascending coefficients (re, im).
  void (*poly_abs)(const double* coef_re, const double* coef_im, std::size_t degree_plus_one,
                   const double* x, const double* y, std::size_t n, double* out);
  // (out_re + i out_im)[i] = z + delta / z for z = re[i] + i im[i]
  void (*pi_map)(const double* re, const double* im, std::size_t n, double delta, double* out_re,
                 double* out_im);
};

bool backend_available(Backend b) noexcept;
std::string_view backend_name(Backend b) noexcept;

/// Backend selected for the public entry points below.
Backend active_backend() noexcept;
/// Forces a backend; throws DomainError if it is not available on this CPU.
void set_backend(Backend b);

/// Direct access to one backend's table (used by equivalence tests).
const KernelTable& table(Backend b);

void quadratic_form(std::span<const double> x, std::span<const double> y, double a, double b,
                    std::span<double> out);
void support_values(std::span<const double> c, std::span<const double> s, double a, double b,
                    std::span<double> out);
void poly_abs(std::span<const std::complex<double>> coeffs, std::span<const double> x,
              std::span<const double> y, std::span<double> out);
void pi_map(std::span<const double> re, std::span<const double> im, double delta,
            std::span<double> out_re, std::span<double> out_im);

}  // namespace ellrange::kernels
