// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdlib>
#include <string>
#include <vector>

#include "ellrange/errors.hpp"
#include "kernels_internal.hpp"

namespace ellrange::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(ELLRANGE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() noexcept {
  const bool avx2 = cpu_has_avx2();
  if (const char* env = std::getenv("ELLIPTIC_RANGE_SIMD")) {
    const std::string choice(env);
    if (choice == "scalar") return Backend::Scalar;
    if (choice == "avx2" && avx2) return Backend::Avx2;
  }
  return avx2 ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw DomainError("kernel inputs must have matching lengths");
}

}  // namespace

bool backend_available(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
      return cpu_has_avx2();
  }
  return false;
}

std::string_view backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "unknown";
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw DomainError("kernel backend '" + std::string(backend_name(b)) + "' is not available");
  }
  current().store(b, std::memory_order_relaxed);
}

const KernelTable& table(Backend b) {
  if (!backend_available(b)) {
    throw DomainError("kernel backend '" + std::string(backend_name(b)) + "' is not available");
  }
#if defined(ELLRANGE_HAVE_AVX2)
  if (b == Backend::Avx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

void quadratic_form(std::span<const double> x, std::span<const double> y, double a, double b,
                    std::span<double> out) {
  require_same_size(x.size(), y.size());
  require_same_size(x.size(), out.size());
  table(active_backend()).quadratic_form(x.data(), y.data(), x.size(), a, b, out.data());
}

void support_values(std::span<const double> c, std::span<const double> s, double a, double b,
                    std::span<double> out) {
  require_same_size(c.size(), s.size());
  require_same_size(c.size(), out.size());
  table(active_backend()).support_values(c.data(), s.data(), c.size(), a, b, out.data());
}

void poly_abs(std::span<const std::complex<double>> coeffs, std::span<const double> x,
              std::span<const double> y, std::span<double> out) {
  require_same_size(x.size(), y.size());
  require_same_size(x.size(), out.size());
  std::vector<double> re(coeffs.size());
  std::vector<double> im(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    re[k] = coeffs[k].real();
    im[k] = coeffs[k].imag();
  }
  table(active_backend()).poly_abs(re.data(), im.data(), coeffs.size(), x.data(), y.data(),
                                   x.size(), out.data());
}

void pi_map(std::span<const double> re, std::span<const double> im, double delta,
            std::span<double> out_re, std::span<double> out_im) {
  require_same_size(re.size(), im.size());
  require_same_size(re.size(), out_re.size());
  require_same_size(re.size(), out_im.size());
  table(active_backend()).pi_map(re.data(), im.data(), re.size(), delta, out_re.data(),
                                 out_im.data());
}

}  // namespace ellrange::kernels
