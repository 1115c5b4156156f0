#pragma once
// Warped-product backgrounds (warp factor with finite-difference derivatives
// and the sampled background metric) and metric families G(r, x) with radial
// derivatives, built from presets, builtin families, expression matrices, or
// perturbations of a background.

#include "rrmlab/expr.hpp"
#include "rrmlab/field.hpp"
#include "rrmlab/grid.hpp"

#include <functional>
#include <string>
#include <vector>

namespace rrm {

enum class FamilyProvenance { builtin, expression, perturbation, background };

// Sampled family of cross-section metrics.  G is packed symmetric per grid
// point; Gp = ddr(G) and Gpp = ddr(Gp) share its shape.
struct MetricFamily {
  const RadialGrid* grid = nullptr;
  const AngularChart* chart = nullptr;
  SymField G, Gp, Gpp;
  FamilyProvenance provenance = FamilyProvenance::expression;
  std::string name;

  int dim() const { return G.dim; }
};

enum class BackgroundPreset { hyperbolic, euclidean, cylindrical, spherical, custom };

struct BackgroundSpec {
  BackgroundPreset preset = BackgroundPreset::euclidean;
  double k = 0;        // hyperbolic: h = exp(r) + k*exp(-r)
  std::string h_expr;  // custom: expression in r (and x1 on 1-axis charts)
  ParamMap params;
};

// The pair (h, Ghat) sampled on the grid.  h has one column unless a custom
// warp factor depends on the chart coordinate (allowed only when dim == 1,
// where the 2D theory needs no warped structure).  g0 holds the sampled
// background metric h^2*Ghat with the same derivative treatment as any
// foreground family, so background curvature flows through identical code.
struct BackgroundWarped {
  BackgroundPreset preset = BackgroundPreset::euclidean;
  double k = 0;
  const RadialGrid* grid = nullptr;
  const AngularChart* chart = nullptr;
  bool radial_only = true;
  Field h, hp, hpp;  // nodes == 1 when radial_only
  MetricFamily g0;
  std::function<double(double)> h_of_r;  // closed form; empty when x-dependent

  int n() const { return chart->dim + 1; }
  double h_at(int i, int j) const { return h.at(i, radial_only ? 0 : j); }
  double hp_at(int i, int j) const { return hp.at(i, radial_only ? 0 : j); }
  double hpp_at(int i, int j) const { return hpp.at(i, radial_only ? 0 : j); }
};

BackgroundWarped make_background(const BackgroundSpec& spec, const RadialGrid& grid,
                                 const AngularChart& chart);

// G = h^2*(Ghat + B(r)*P(x)); P is a packed matrix of expressions in the
// chart coordinates, B an expression in r.  B == 0 reproduces g0 exactly.
MetricFamily make_perturbed_family(const BackgroundWarped& bg,
                                   const std::vector<std::string>& P, const std::string& B,
                                   const ParamMap& params = {});

// spec is either a builtin name, "cone(c)" / "schwarzschild(M)" /
// "round-sphere-2d", or a semicolon-separated packed matrix of expressions in
// r and the chart coordinates.  schwarzschild reads rho0 from params.
MetricFamily eval_metric_family(const std::string& spec, const RadialGrid& grid,
                                const AngularChart& chart, const ParamMap& params = {});

// Scalar wrapper for 1-axis charts: the field h = sqrt(G_11) drives the 2D
// operations; provided for families built from any source.
Field family_h_2d(const MetricFamily& fam);

}  // namespace rrm
