// Runtime backend selection and the public kernel entry points.

#include "rrmlab/kernels.hpp"

#include "kernels_table.hpp"

#include <cstdlib>
#include <cstring>

namespace rrm::kernels {
namespace detail {

#if !defined(RRM_BUILD_AVX2)
const KernelTable* avx2_table() { return nullptr; }
#endif
#if !defined(RRM_BUILD_NEON)
const KernelTable* neon_table() { return nullptr; }
#endif

namespace {

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if defined(RRM_BUILD_AVX2) && defined(__GNUC__)
      return avx2_table() != nullptr && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::neon:
      // Advanced SIMD is architecturally guaranteed on aarch64.
      return neon_table() != nullptr;
  }
  return false;
}

Backend pick_default() {
  if (const char* env = std::getenv("RRMLAB_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && backend_supported(Backend::avx2)) return Backend::avx2;
    if (std::strcmp(env, "neon") == 0 && backend_supported(Backend::neon)) return Backend::neon;
  }
  if (backend_supported(Backend::avx2)) return Backend::avx2;
  if (backend_supported(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

const KernelTable* table_for(Backend b) {
  switch (b) {
    case Backend::scalar: return &scalar_table();
    case Backend::avx2: return avx2_table();
    case Backend::neon: return neon_table();
  }
  return &scalar_table();
}

struct State {
  Backend backend;
  const KernelTable* table;
  State() : backend(pick_default()), table(table_for(backend)) {}
};

State& state() {
  static State s;
  return s;
}

}  // namespace
}  // namespace detail

Backend active() { return detail::state().backend; }

Backend best_available() {
  if (detail::backend_supported(Backend::avx2)) return Backend::avx2;
  if (detail::backend_supported(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

bool set_backend(Backend b) {
  if (!detail::backend_supported(b)) return false;
  detail::state().backend = b;
  detail::state().table = detail::table_for(b);
  return true;
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

void add(double* dst, const double* a, const double* b, std::size_t n) {
  detail::state().table->add(dst, a, b, n);
}
void sub(double* dst, const double* a, const double* b, std::size_t n) {
  detail::state().table->sub(dst, a, b, n);
}
void mul(double* dst, const double* a, const double* b, std::size_t n) {
  detail::state().table->mul(dst, a, b, n);
}
void div(double* dst, const double* a, const double* b, std::size_t n) {
  detail::state().table->div(dst, a, b, n);
}
void scale(double* dst, const double* a, double c, std::size_t n) {
  detail::state().table->scale(dst, a, c, n);
}
void axpy(double* y, double c, const double* x, std::size_t n) {
  detail::state().table->axpy(y, c, x, n);
}
void mul_acc(double* dst, const double* a, const double* b, std::size_t n) {
  detail::state().table->mul_acc(dst, a, b, n);
}
void lincomb2(double* dst, double c1, const double* a, double c2, const double* b, std::size_t n) {
  detail::state().table->lincomb2(dst, c1, a, c2, b, n);
}
void lincomb3(double* dst, double c1, const double* a, double c2, const double* b,
              double c3, const double* c, std::size_t n) {
  detail::state().table->lincomb3(dst, c1, a, c2, b, c3, c, n);
}
double dot(const double* a, const double* b, std::size_t n) {
  return detail::state().table->dot(a, b, n);
}
double sum(const double* a, std::size_t n) { return detail::state().table->sum(a, n); }
double max_abs(const double* a, std::size_t n) { return detail::state().table->max_abs(a, n); }
double min_val(const double* a, std::size_t n) { return detail::state().table->min_val(a, n); }
double weighted_abs_sum(const double* a, const double* w, std::size_t n) {
  return detail::state().table->weighted_abs_sum(a, w, n);
}

}  // namespace rrm::kernels
