// AVX2/FMA kernel variants. This is the only translation unit built with
// -mavx2 -mfma; callers reach it through runtime dispatch only, so building
// for a non-AVX2 target just turns these into scalar wrappers.
#include "edm/kernels_detail.hpp"

#if defined(EDM_HAVE_AVX2_TU)
#include <immintrin.h>
#endif

namespace edm::kernels::detail {

#if defined(EDM_HAVE_AVX2_TU)

bool avx2_compiled_in() { return true; }

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) total += x[i];
  return total;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void combine_avx2(double ca, const double* a, double cb, const double* b,
                  double shift, double* out, std::size_t n) {
  const __m256d vca = _mm256_set1_pd(ca);
  const __m256d vcb = _mm256_set1_pd(cb);
  const __m256d vs = _mm256_set1_pd(shift);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_mul_pd(vca, _mm256_loadu_pd(a + i));
    __m256d v = _mm256_fmadd_pd(vcb, _mm256_loadu_pd(b + i), va);
    _mm256_storeu_pd(out + i, _mm256_add_pd(v, vs));
  }
  for (; i < n; ++i) out[i] = ca * a[i] + cb * b[i] + shift;
}

#else  // no AVX2 at build time: forward to scalar so dispatch stays total

bool avx2_compiled_in() { return false; }

double sum_avx2(const double* x, std::size_t n) { return sum_scalar(x, n); }
double dot_avx2(const double* x, const double* y, std::size_t n) {
  return dot_scalar(x, y, n);
}
void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  axpy_scalar(a, x, y, n);
}
void combine_avx2(double ca, const double* a, double cb, const double* b,
                  double shift, double* out, std::size_t n) {
  combine_scalar(ca, a, cb, b, shift, out, n);
}

#endif

}  // namespace edm::kernels::detail
