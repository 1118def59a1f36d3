#include "edm/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <optional>

#include "edm/kernels_detail.hpp"

namespace edm::kernels {

namespace detail {

double sum_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void combine_scalar(double ca, const double* a, double cb, const double* b,
                    double shift, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = ca * a[i] + cb * b[i] + shift;
}

}  // namespace detail

namespace {

std::optional<Backend> g_forced;

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend resolve() {
  if (g_forced) {
    if (*g_forced == Backend::avx2 && !avx2_available()) return Backend::scalar;
    return *g_forced;
  }
  if (const char* env = std::getenv("EDM_KERNEL_BACKEND")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_available()) return Backend::avx2;
    if (std::strcmp(env, "avx2") == 0) return Backend::scalar;
    // unknown value: ignore and fall through to detection
  }
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

}  // namespace

bool avx2_available() {
  return detail::avx2_compiled_in() && cpu_has_avx2();
}

Backend active_backend() { return resolve(); }

const char* backend_name() {
  return active_backend() == Backend::avx2 ? "avx2" : "scalar";
}

void force_backend(Backend b) { g_forced = b; }
void clear_forced_backend() { g_forced.reset(); }

double sum(const double* x, std::size_t n) {
  return active_backend() == Backend::avx2 ? detail::sum_avx2(x, n)
                                           : detail::sum_scalar(x, n);
}

double dot(const double* x, const double* y, std::size_t n) {
  return active_backend() == Backend::avx2 ? detail::dot_avx2(x, y, n)
                                           : detail::dot_scalar(x, y, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  if (active_backend() == Backend::avx2)
    detail::axpy_avx2(a, x, y, n);
  else
    detail::axpy_scalar(a, x, y, n);
}

void combine(double ca, const double* a, double cb, const double* b,
             double shift, double* out, std::size_t n) {
  if (active_backend() == Backend::avx2)
    detail::combine_avx2(ca, a, cb, b, shift, out, n);
  else
    detail::combine_scalar(ca, a, cb, b, shift, out, n);
}

}  // namespace edm::kernels
