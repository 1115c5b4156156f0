// AVX2 kernel variants.  Compiled with -mavx2 only; selected at runtime.
//
// No FMA anywhere: elementwise ops keep the scalar mul-then-add rounding so
// results stay bitwise identical to the reference backend.

#include "kernels_table.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace rrm::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline __m256d abs_pd(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

void v_add(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) dst[i] = a[i] + b[i];
}
void v_sub(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) dst[i] = a[i] - b[i];
}
void v_mul(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}
void v_div(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_div_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) dst[i] = a[i] / b[i];
}
void v_scale(double* dst, const double* a, double c, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(vc, _mm256_loadu_pd(a + i)));
  for (; i < n; ++i) dst[i] = c * a[i];
}
void v_axpy(double* y, double c, const double* x, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_mul_pd(vc, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), t));
  }
  for (; i < n; ++i) y[i] = y[i] + c * x[i];
}
void v_mul_acc(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(dst + i, _mm256_add_pd(_mm256_loadu_pd(dst + i), t));
  }
  for (; i < n; ++i) dst[i] = dst[i] + a[i] * b[i];
}
void v_lincomb2(double* dst, double c1, const double* a, double c2, const double* b, std::size_t n) {
  const __m256d v1 = _mm256_set1_pd(c1), v2 = _mm256_set1_pd(c2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_add_pd(_mm256_mul_pd(v1, _mm256_loadu_pd(a + i)),
                              _mm256_mul_pd(v2, _mm256_loadu_pd(b + i)));
    _mm256_storeu_pd(dst + i, t);
  }
  for (; i < n; ++i) dst[i] = c1 * a[i] + c2 * b[i];
}
void v_lincomb3(double* dst, double c1, const double* a, double c2, const double* b,
                double c3, const double* c, std::size_t n) {
  const __m256d v1 = _mm256_set1_pd(c1), v2 = _mm256_set1_pd(c2), v3 = _mm256_set1_pd(c3);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_add_pd(_mm256_mul_pd(v1, _mm256_loadu_pd(a + i)),
                              _mm256_mul_pd(v2, _mm256_loadu_pd(b + i)));
    t = _mm256_add_pd(t, _mm256_mul_pd(v3, _mm256_loadu_pd(c + i)));
    _mm256_storeu_pd(dst + i, t);
  }
  for (; i < n; ++i) dst[i] = (c1 * a[i] + c2 * b[i]) + c3 * c[i];
}
double v_dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  double r = hsum(acc);
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}
double v_sum(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double r = hsum(acc);
  for (; i < n; ++i) r += a[i];
  return r;
}
double v_max_abs(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, abs_pd(_mm256_loadu_pd(a + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}
double v_min_val(const double* a, std::size_t n) {
  const double inf = std::numeric_limits<double>::infinity();
  __m256d acc = _mm256_set1_pd(inf);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_min_pd(acc, _mm256_loadu_pd(a + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
  for (; i < n; ++i) m = std::min(m, a[i]);
  return m;
}
double v_weighted_abs_sum(const double* a, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(abs_pd(_mm256_loadu_pd(a + i)), _mm256_loadu_pd(w + i)));
  double r = hsum(acc);
  for (; i < n; ++i) r += std::fabs(a[i]) * w[i];
  return r;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable t = {
      v_add, v_sub, v_mul, v_div, v_scale, v_axpy, v_mul_acc, v_lincomb2, v_lincomb3,
      v_dot, v_sum, v_max_abs, v_min_val, v_weighted_abs_sum,
  };
  return &t;
}

}  // namespace rrm::kernels::detail
