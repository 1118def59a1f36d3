// Internal: per-backend kernel entry points. The AVX2 versions live in a
// translation unit compiled with -mavx2 -mfma; when that TU is built without
// AVX2 support they compile to thin wrappers over the scalar versions.
#pragma once

#include <cstddef>

namespace edm::kernels::detail {

double sum_scalar(const double* x, std::size_t n);
double dot_scalar(const double* x, const double* y, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void combine_scalar(double ca, const double* a, double cb, const double* b,
                    double shift, double* out, std::size_t n);

double sum_avx2(const double* x, std::size_t n);
double dot_avx2(const double* x, const double* y, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void combine_avx2(double ca, const double* a, double cb, const double* b,
                  double shift, double* out, std::size_t n);

bool avx2_compiled_in();

}  // namespace edm::kernels::detail
