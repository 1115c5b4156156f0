#pragma once
// Radial grid, angular chart (cross-section mesh with its reference metric
// and quadrature weights), finite differences, and cross-section integrals.

#include "rrmlab/errors.hpp"
#include "rrmlab/expr.hpp"
#include "rrmlab/field.hpp"

#include <string>
#include <vector>

namespace rrm {

// Uniform samples r_i = a + inset + i*dr covering [a+inset, b-inset]; a
// positive inset keeps samples strictly inside an open interval (a, b).
struct RadialGrid {
  double a = 0, b = 0;
  int nr = 0;
  double inset = 0;
  double dr = 0;
  std::vector<double> rs;
  double r(int i) const { return rs[std::size_t(i)]; }
};

RadialGrid build_radial_grid(double a, double b, int nr, double inset = 0);

enum class ChartKind { periodic_box, latlong_sphere };

struct ChartSpec {
  ChartKind kind = ChartKind::periodic_box;
  std::vector<int> res;             // per-axis node counts
  std::vector<double> period;       // box only; empty means 2*pi per axis
  std::vector<std::string> ghat;    // box only: packed metric entries in x1..xd; empty = identity
  double scale = 1.0;               // uniform factor on the chart metric
  ParamMap params;                  // parameters for ghat expressions
};

struct AngularChart {
  ChartKind kind = ChartKind::periodic_box;
  int dim = 0;
  std::vector<int> res;
  std::vector<double> period;       // box only
  double scale = 1.0;
  int nodes = 0;
  std::vector<double> coords;       // nodes * dim
  std::vector<double> ghat;         // nodes * npack, packed chart metric
  std::vector<double> ghat_inv;     // nodes * npack
  std::vector<double> sqrt_det;     // nodes
  std::vector<double> w;            // quadrature weights, sum = chart volume
  double mu = 0;                    // sum of w
  std::vector<int> stride;

  int npack() const { return dim * (dim + 1) / 2; }
  const double* x(int j) const { return coords.data() + std::size_t(j) * dim; }
  const double* ghat_at(int j) const { return ghat.data() + std::size_t(j) * npack(); }
  const double* ghat_inv_at(int j) const { return ghat_inv.data() + std::size_t(j) * npack(); }
  double spacing(int axis) const;
  int axis_index(int j, int axis) const { return (j / stride[std::size_t(axis)]) % res[std::size_t(axis)]; }
  int neighbor(int j, int axis, int shift) const;  // periodic wrap, box only
};

AngularChart build_chart(const ChartSpec& spec);

// Radial finite differences: second-order central stencils inside; the first
// and last rows use one-sided stencils whose leading truncation term matches
// the central one, so the error envelope stays smooth in r.  order is 1 or 2.
std::vector<double> ddr(const std::vector<double>& f, const RadialGrid& g, int order = 1);
Field ddr(const Field& f, const RadialGrid& g, int order = 1);
SymField ddr(const SymField& f, const RadialGrid& g, int order = 1);

// Central differences along chart axes; periodic boxes only.
Field dchart(const Field& f, const AngularChart& chart, int axis);
Field dchart2(const Field& f, const AngularChart& chart, int axisA, int axisB);

// Cross-section integral per radial sample: sum_j f(i,j) w_j.
std::vector<double> integrate_N(const Field& f, const AngularChart& chart);

// Sampling helpers.
Field sample_field(const RadialGrid& g, const AngularChart& chart, const BoundExpr& e);
std::vector<double> sample_radial(const RadialGrid& g, const BoundExpr& e);

}  // namespace rrm
