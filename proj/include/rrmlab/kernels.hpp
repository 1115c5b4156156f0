#pragma once
// Flat double-array kernels behind a runtime backend switch.
//
// Every elementwise kernel rounds identically on all backends: the SIMD
// variants use the same add/sub/mul/div sequence as the scalar reference and
// never contract to FMA, so results are bitwise equal.  Reductions differ
// only in association order and are compared under a tolerance.

#include <cstddef>
#include <string_view>

namespace rrm::kernels {

enum class Backend { scalar, avx2, neon };

// Backend used by all kernel calls.  Defaults to the best supported one;
// the RRMLAB_KERNELS environment variable ("scalar", "avx2", "neon")
// overrides the default at startup.
Backend active();
Backend best_available();
bool set_backend(Backend b);  // false and no change if unsupported here
std::string_view backend_name(Backend b);

// Elementwise; dst may alias a or b exactly (same pointer), not partially.
void add(double* dst, const double* a, const double* b, std::size_t n);
void sub(double* dst, const double* a, const double* b, std::size_t n);
void mul(double* dst, const double* a, const double* b, std::size_t n);
void div(double* dst, const double* a, const double* b, std::size_t n);
void scale(double* dst, const double* a, double c, std::size_t n);   // dst = c*a
void axpy(double* y, double c, const double* x, std::size_t n);      // y += c*x
void mul_acc(double* dst, const double* a, const double* b, std::size_t n);  // dst += a*b
// dst = c1*a + c2*b  /  dst = c1*a + c2*b + c3*c
void lincomb2(double* dst, double c1, const double* a, double c2, const double* b, std::size_t n);
void lincomb3(double* dst, double c1, const double* a, double c2, const double* b,
              double c3, const double* c, std::size_t n);

// Reductions.
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);   // 0 for n == 0
double min_val(const double* a, std::size_t n);   // +inf for n == 0
double weighted_abs_sum(const double* a, const double* w, std::size_t n);  // sum |a_i| w_i

}  // namespace rrm::kernels
