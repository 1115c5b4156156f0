// Scalar reference kernels.  These define the semantics the SIMD variants
// must reproduce: elementwise results bitwise, reductions up to association.

#include "kernels_table.hpp"

#include <cmath>
#include <limits>

namespace rrm::kernels::detail {
namespace {

void s_add(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}
void s_sub(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] - b[i];
}
void s_mul(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}
void s_div(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] / b[i];
}
void s_scale(double* dst, const double* a, double c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = c * a[i];
}
void s_axpy(double* y, double c, const double* x, std::size_t n) {
  // Two rounding steps (mul then add), never fused; AVX2/NEON match this.
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + c * x[i];
}
void s_mul_acc(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = dst[i] + a[i] * b[i];
}
void s_lincomb2(double* dst, double c1, const double* a, double c2, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = c1 * a[i] + c2 * b[i];
}
void s_lincomb3(double* dst, double c1, const double* a, double c2, const double* b,
                double c3, const double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = (c1 * a[i] + c2 * b[i]) + c3 * c[i];
}
double s_dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}
double s_sum(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}
double s_max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
  return m;
}
double s_min_val(const double* a, std::size_t n) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::min(m, a[i]);
  return m;
}
double s_weighted_abs_sum(const double* a, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(a[i]) * w[i];
  return acc;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t = {
      s_add, s_sub, s_mul, s_div, s_scale, s_axpy, s_mul_acc, s_lincomb2, s_lincomb3,
      s_dot, s_sum, s_max_abs, s_min_val, s_weighted_abs_sum,
  };
  return t;
}

}  // namespace rrm::kernels::detail
