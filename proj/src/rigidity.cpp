// Integral inequality reports: lhs/rhs/defect assembly with equality-case
// detection, model preset corollaries, minimal-boundary masses, and mass
// monotonicity checks.

#include "rrmlab/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rrmlab/errors.hpp"
#include "rrmlab/smallmat.hpp"

namespace rrm {

namespace {

// Trapezoid rule over the radial rows of a fiber-integrated quantity.
double trapezoid_r(const std::vector<double>& rows, double dr) {
  double s = 0;
  for (double v : rows) s += v;
  if (rows.size() > 1) s -= 0.5 * (rows.front() + rows.back());
  return s * dr;
}

// || T ||_Ghat at one node: sqrt(Tr((Ghat^-1 T)^2)), T packed symmetric.
// The trace is nonnegative for symmetric T and positive definite Ghat; the
// clamp only absorbs rounding.
double ghat_norm(const double* tpack, const double* gi_pack, int d) {
  double t[9], gi[9], a[9], aa[9];
  sm::sym_unpack(tpack, d, t);
  sm::sym_unpack(gi_pack, d, gi);
  sm::mat_mul(gi, t, d, a);
  sm::mat_mul(a, a, d, aa);
  return std::sqrt(std::max(0.0, sm::mat_trace(aa, d)));
}

// sup over one radial row of || h^-2 G - Ghat ||_Ghat.
double background_gap_row(const MetricFamily& fam, const BackgroundWarped& bg, int i) {
  const AngularChart& chart = *fam.chart;
  const int d = fam.dim(), np = fam.G.npack();
  std::vector<double> tp(static_cast<std::size_t>(np));
  double out = 0;
  for (int j = 0; j < chart.nodes; ++j) {
    const double h = bg.h_at(i, j);
    const double* gh = chart.ghat_at(j);
    for (int p = 0; p < np; ++p) tp[std::size_t(p)] = fam.G(p).at(i, j) / (h * h) - gh[p];
    out = std::max(out, ghat_norm(tp.data(), chart.ghat_inv_at(j), d));
  }
  return out;
}

}  // namespace

WarpedDeviation warped_product_detector(const MetricFamily& fam, const BackgroundWarped& bg,
                                        double tol) {
  const AngularChart& chart = *fam.chart;
  const int d = fam.dim(), np = fam.G.npack();
  const int nr = fam.G.nr(), nodes = fam.G.nodes();

  SymField W(d, nr, nodes);
  for (int p = 0; p < np; ++p)
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nodes; ++j) {
        const double h = bg.h_at(i, j);
        W(p).at(i, j) = fam.G(p).at(i, j) / (h * h);
      }
  const SymField D = ddr(W, *fam.grid, 1);

  WarpedDeviation out;
  std::vector<double> dp(static_cast<std::size_t>(np)), tp(static_cast<std::size_t>(np));
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nodes; ++j) {
      const double* gi = chart.ghat_inv_at(j);
      const double* gh = chart.ghat_at(j);
      for (int p = 0; p < np; ++p) {
        dp[std::size_t(p)] = D(p).at(i, j);
        tp[std::size_t(p)] = W(p).at(i, j) - gh[p];
      }
      out.deviation = std::max(out.deviation, ghat_norm(dp.data(), gi, d));
      out.background_gap = std::max(out.background_gap, ghat_norm(tp.data(), gi, d));
    }
  out.is_warped_product = out.deviation <= tol;
  return out;
}

TheoremReport theorem_report(const MetricFamily& fam, const BackgroundWarped& bg,
                             RrrSource source) {
  const RadialGrid& grid = *fam.grid;
  const AngularChart& chart = *fam.chart;
  const int n = bg.n();

  MassField mf;
  Field rrr, r0rr, s2;
  if (n == 2) {
    mf = mass_2d(fam, bg);
    rrr = source == RrrSource::radial ? gauss_curvature(fam) : ricci_oracle(fam).rrr();
    r0rr = gauss_curvature_bg(bg);
    s2 = Field(rrr.nr, rrr.nodes);  // one-dimensional fibers have no shear
  } else {
    const CurvatureBundle b = shape_bundle(fam);
    const CurvatureBundle b0 = shape_bundle(bg.g0);
    mf = radial_mass(b, b0, bg);
    rrr = source == RrrSource::radial ? radial_ricci(b) : ricci_oracle(fam).rrr();
    r0rr = radial_ricci(b0);
    s2 = b.s2;
  }

  TheoremReport rep;
  rep.lhs = mf.M.back() - mf.M.front();

  // Curvature difference first: matching foreground and background pipelines
  // cancel exactly, so unperturbed families report exact zeros.
  Field rhs_f(rrr.nr, rrr.nodes), def_f(rrr.nr, rrr.nodes);
  for (int i = 0; i < rrr.nr; ++i)
    for (int j = 0; j < rrr.nodes; ++j) {
      const double h = bg.h_at(i, j);
      const double h2 = h * h;
      rhs_f.at(i, j) = h2 * (rrr.at(i, j) - r0rr.at(i, j));
      const double mv = mf.m.at(i, j);
      def_f.at(i, j) = mv * mv / ((n - 1) * h2) + h2 * s2.at(i, j);
    }
  rep.rhs = trapezoid_r(integrate_N(rhs_f, chart), grid.dr);
  rep.defect = trapezoid_r(integrate_N(def_f, chart), grid.dr);
  rep.identity_gap = rep.lhs - rep.rhs - rep.defect;

  const double scale = sup_abs(mf.m) + sup_abs(s2);
  rep.equality_tol = std::max(1e-8, 10.0 * grid.dr * grid.dr * scale);

  const WarpedDeviation wd = warped_product_detector(fam, bg, rep.equality_tol);
  rep.warp_deviation = wd.deviation;
  rep.background_gap = wd.background_gap;

  rep.verdicts.inequality_holds = rep.lhs - rep.rhs >= -rep.equality_tol;
  rep.verdicts.is_warped_product = wd.is_warped_product;
  rep.verdicts.equals_background = wd.background_gap <= rep.equality_tol;
  const bool inner = background_gap_row(fam, bg, 0) <= rep.equality_tol;
  const bool outer = background_gap_row(fam, bg, grid.nr - 1) <= rep.equality_tol;
  rep.verdicts.asymptotic_at = inner && outer ? 2 : outer ? 1 : inner ? 0 : -1;
  return rep;
}

TheoremReport model_preset_suite(BackgroundPreset model, double k, const MetricFamily& fam) {
  if (model == BackgroundPreset::custom)
    throw ConfigError("model preset suite needs a named preset");

  BackgroundSpec spec;
  spec.preset = model;
  spec.k = k;
  const BackgroundWarped bg = make_background(spec, *fam.grid, *fam.chart);

  TheoremReport rep = theorem_report(fam, bg);
  rep.has_model = true;
  const int n = bg.n();
  switch (model) {
    case BackgroundPreset::hyperbolic: rep.model_r0rr = -double(n - 1); break;
    case BackgroundPreset::spherical: rep.model_r0rr = double(n - 1); break;
    default: rep.model_r0rr = 0; break;
  }

  // Deviation of the computed warp-factor curvature from the model constant.
  const Field r0 = background_shape(bg).R0rr;
  double err = 0;
  for (double v : r0.v) err = std::max(err, std::fabs(v - rep.model_r0rr));
  rep.model_r0rr_err = err;
  return rep;
}

MinimalBoundaryReport minimal_boundary_mass(const MassField& mf, const CurvatureBundle& b,
                                            const BackgroundWarped& bg, int endpoint,
                                            double tol) {
  const AngularChart& chart = *bg.chart;
  const int row = endpoint == 0 ? 0 : b.H.nr - 1;
  const int n = bg.n();

  MinimalBoundaryReport rep;
  for (int j = 0; j < b.H.nodes; ++j)
    rep.mean_curv_sup = std::max(rep.mean_curv_sup, std::fabs(b.H.at(row, j)));
  rep.applicable = rep.mean_curv_sup <= tol;

  double v = 0;
  for (int j = 0; j < chart.nodes; ++j)
    v += bg.h_at(row, j) * bg.hp_at(row, j) * chart.w[std::size_t(j)];
  rep.value = (n - 1) * v;
  rep.computed_M = mf.M[std::size_t(row)];
  rep.gap = std::fabs(rep.value - rep.computed_M);
  return rep;
}

MonotonicityReport monotonicity_check(const MassField& mf, const Field& rrr,
                                      const Field& r0rr, const RadialGrid& grid,
                                      double tol) {
  const Field dm = ddr(mf.m, grid, 1);

  MonotonicityReport rep;
  for (int j = 0; j < mf.m.nodes; ++j) {
    bool gated = true;
    for (int i = 0; i < mf.m.nr && gated; ++i)
      gated = rrr.at(i, j) - r0rr.at(i, j) >= -tol;
    if (!gated) {
      ++rep.skipped_fibers;
      continue;
    }
    ++rep.gated_fibers;
    for (int i = 0; i < mf.m.nr; ++i) {
      const double d = dm.at(i, j);
      rep.worst_drop = std::min(rep.worst_drop, d);
      if (d < -tol && rep.violation_i < 0) {
        rep.violation_i = i;
        rep.violation_j = j;
      }
    }
  }
  rep.monotone = rep.violation_i < 0;
  return rep;
}

}  // namespace rrm
