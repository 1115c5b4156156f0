#pragma once
// Internal dispatch table shared by the kernel backends.

#include <cstddef>

namespace rrm::kernels::detail {

struct KernelTable {
  void (*add)(double*, const double*, const double*, std::size_t);
  void (*sub)(double*, const double*, const double*, std::size_t);
  void (*mul)(double*, const double*, const double*, std::size_t);
  void (*div)(double*, const double*, const double*, std::size_t);
  void (*scale)(double*, const double*, double, std::size_t);
  void (*axpy)(double*, double, const double*, std::size_t);
  void (*mul_acc)(double*, const double*, const double*, std::size_t);
  void (*lincomb2)(double*, double, const double*, double, const double*, std::size_t);
  void (*lincomb3)(double*, double, const double*, double, const double*, double, const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  double (*min_val)(const double*, std::size_t);
  double (*weighted_abs_sum)(const double*, const double*, std::size_t);
};

const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled for this target
const KernelTable* neon_table();

}  // namespace rrm::kernels::detail
