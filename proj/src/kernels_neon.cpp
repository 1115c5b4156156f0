// NEON kernel variants for aarch64.  Selected at runtime.
//
// No FMA: vmulq/vaddq are kept separate so elementwise results stay bitwise
// identical to the scalar reference backend.

#include "kernels_table.hpp"

#include <arm_neon.h>

#include <cmath>
#include <limits>

namespace rrm::kernels::detail {
namespace {

void v_add(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vaddq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) dst[i] = a[i] + b[i];
}
void v_sub(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) dst[i] = a[i] - b[i];
}
void v_mul(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}
void v_div(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vdivq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) dst[i] = a[i] / b[i];
}
void v_scale(double* dst, const double* a, double c, std::size_t n) {
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, vmulq_f64(vc, vld1q_f64(a + i)));
  for (; i < n; ++i) dst[i] = c * a[i];
}
void v_axpy(double* y, double c, const double* x, std::size_t n) {
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t t = vmulq_f64(vc, vld1q_f64(x + i));
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), t));
  }
  for (; i < n; ++i) y[i] = y[i] + c * x[i];
}
void v_mul_acc(double* dst, const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t t = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    vst1q_f64(dst + i, vaddq_f64(vld1q_f64(dst + i), t));
  }
  for (; i < n; ++i) dst[i] = dst[i] + a[i] * b[i];
}
void v_lincomb2(double* dst, double c1, const double* a, double c2, const double* b, std::size_t n) {
  const float64x2_t v1 = vdupq_n_f64(c1), v2 = vdupq_n_f64(c2);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t t = vaddq_f64(vmulq_f64(v1, vld1q_f64(a + i)), vmulq_f64(v2, vld1q_f64(b + i)));
    vst1q_f64(dst + i, t);
  }
  for (; i < n; ++i) dst[i] = c1 * a[i] + c2 * b[i];
}
void v_lincomb3(double* dst, double c1, const double* a, double c2, const double* b,
                double c3, const double* c, std::size_t n) {
  const float64x2_t v1 = vdupq_n_f64(c1), v2 = vdupq_n_f64(c2), v3 = vdupq_n_f64(c3);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t t = vaddq_f64(vmulq_f64(v1, vld1q_f64(a + i)), vmulq_f64(v2, vld1q_f64(b + i)));
    t = vaddq_f64(t, vmulq_f64(v3, vld1q_f64(c + i)));
    vst1q_f64(dst + i, t);
  }
  for (; i < n; ++i) dst[i] = (c1 * a[i] + c2 * b[i]) + c3 * c[i];
}
double v_dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double r = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}
double v_sum(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(a + i));
  double r = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) r += a[i];
  return r;
}
double v_max_abs(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vabsq_f64(vld1q_f64(a + i)));
  double m = std::max(vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1));
  for (; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}
double v_min_val(const double* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vminq_f64(acc, vld1q_f64(a + i));
  double m = std::min(vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1));
  for (; i < n; ++i) m = std::min(m, a[i]);
  return m;
}
double v_weighted_abs_sum(const double* a, const double* w, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vaddq_f64(acc, vmulq_f64(vabsq_f64(vld1q_f64(a + i)), vld1q_f64(w + i)));
  double r = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) r += std::fabs(a[i]) * w[i];
  return r;
}

}  // namespace

const KernelTable* neon_table() {
  static const KernelTable t = {
      v_add, v_sub, v_mul, v_div, v_scale, v_axpy, v_mul_acc, v_lincomb2, v_lincomb3,
      v_dot, v_sum, v_max_abs, v_min_val, v_weighted_abs_sum,
  };
  return &t;
}

}  // namespace rrm::kernels::detail
