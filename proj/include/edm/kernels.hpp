// Low-level dense vector kernels with a scalar reference path and an AVX2
// path selected at runtime. All higher-level matrix arithmetic funnels
// through these four primitives.
#pragma once

#include <cstddef>

namespace edm::kernels {

enum class Backend { scalar, avx2 };

// Backend resolution order: explicit force_backend() call, then the
// EDM_KERNEL_BACKEND environment variable ("scalar" or "avx2"), then CPU
// feature detection. Requesting avx2 on a CPU without it falls back to scalar.
Backend active_backend();
const char* backend_name();
void force_backend(Backend b);
void clear_forced_backend();
bool avx2_available();

double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
// y <- y + a*x
void axpy(double a, const double* x, double* y, std::size_t n);
// out <- ca*a + cb*b + shift   (elementwise; a, b, out may alias)
void combine(double ca, const double* a, double cb, const double* b,
             double shift, double* out, std::size_t n);

}  // namespace edm::kernels
