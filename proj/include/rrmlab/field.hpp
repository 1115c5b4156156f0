#pragma once
// Scalar, symmetric-tensor, and endomorphism fields sampled on the product
// grid.  Layout: index (i, j) = radial sample i, chart node j, stored
// row-major so each radial slice is one contiguous kernel operand.

#include "rrmlab/kernels.hpp"

#include <cstddef>
#include <vector>

namespace rrm {

struct Field {
  int nr = 0;
  int nodes = 0;
  std::vector<double> v;

  Field() = default;
  Field(int nr_, int nodes_) : nr(nr_), nodes(nodes_), v(std::size_t(nr_) * nodes_, 0.0) {}

  double* row(int i) { return v.data() + std::size_t(i) * nodes; }
  const double* row(int i) const { return v.data() + std::size_t(i) * nodes; }
  double& at(int i, int j) { return v[std::size_t(i) * nodes + j]; }
  double at(int i, int j) const { return v[std::size_t(i) * nodes + j]; }
  std::size_t size() const { return v.size(); }
  bool same_shape(const Field& o) const { return nr == o.nr && nodes == o.nodes; }
};

inline Field f_add(const Field& a, const Field& b) {
  Field out(a.nr, a.nodes);
  kernels::add(out.v.data(), a.v.data(), b.v.data(), a.size());
  return out;
}
inline Field f_sub(const Field& a, const Field& b) {
  Field out(a.nr, a.nodes);
  kernels::sub(out.v.data(), a.v.data(), b.v.data(), a.size());
  return out;
}
inline Field f_mul(const Field& a, const Field& b) {
  Field out(a.nr, a.nodes);
  kernels::mul(out.v.data(), a.v.data(), b.v.data(), a.size());
  return out;
}
inline Field f_div(const Field& a, const Field& b) {
  Field out(a.nr, a.nodes);
  kernels::div(out.v.data(), a.v.data(), b.v.data(), a.size());
  return out;
}
inline Field f_scale(const Field& a, double c) {
  Field out(a.nr, a.nodes);
  kernels::scale(out.v.data(), a.v.data(), c, a.size());
  return out;
}
inline double sup_abs(const Field& a) { return kernels::max_abs(a.v.data(), a.size()); }

// Symmetric d x d tensor field, packed upper triangle row-major:
// d=2 -> (00, 01, 11); d=3 -> (00, 01, 02, 11, 12, 22).
struct SymField {
  int dim = 0;
  std::vector<Field> comp;

  SymField() = default;
  SymField(int d, int nr, int nodes) : dim(d), comp(std::size_t(d) * (d + 1) / 2, Field(nr, nodes)) {}
  int npack() const { return dim * (dim + 1) / 2; }
  int nr() const { return comp.empty() ? 0 : comp[0].nr; }
  int nodes() const { return comp.empty() ? 0 : comp[0].nodes; }
  Field& operator()(int p) { return comp[std::size_t(p)]; }
  const Field& operator()(int p) const { return comp[std::size_t(p)]; }
};

// Endomorphism (1,1-tensor) field, full d x d row-major: entry (A,B) = T^A_B.
struct EndoField {
  int dim = 0;
  std::vector<Field> comp;

  EndoField() = default;
  EndoField(int d, int nr, int nodes) : dim(d), comp(std::size_t(d) * d, Field(nr, nodes)) {}
  Field& at(int A, int B) { return comp[std::size_t(A) * dim + B]; }
  const Field& at(int A, int B) const { return comp[std::size_t(A) * dim + B]; }
};

}  // namespace rrm
