// Mass densities, fiber integrals, exact degeneracy and scaling properties,
// and the Riccati / divergence identity residuals.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rrmlab/curvature.hpp"
#include "rrmlab/errors.hpp"
#include "rrmlab/grid.hpp"
#include "rrmlab/mass.hpp"
#include "rrmlab/metric.hpp"

#include <cmath>
#include <cstring>

using namespace rrm;

namespace {

constexpr double kPi = 3.14159265358979323846;

ChartSpec circle(int res) {
  ChartSpec s;
  s.res = {res};
  return s;
}

ChartSpec torus(int r0, int r1) {
  ChartSpec s;
  s.res = {r0, r1};
  return s;
}

ChartSpec latlong(int nth, int nph) {
  ChartSpec s;
  s.kind = ChartKind::latlong_sphere;
  s.res = {nth, nph};
  return s;
}

BackgroundSpec preset(BackgroundPreset p, double k = 0) {
  BackgroundSpec s;
  s.preset = p;
  s.k = k;
  return s;
}

BackgroundSpec custom(const std::string& expr) {
  BackgroundSpec s;
  s.preset = BackgroundPreset::custom;
  s.h_expr = expr;
  return s;
}

double sup_diff(const Field& a, const Field& b) { return sup_abs(f_sub(a, b)); }

Field zero_like(const Field& f) { return Field(f.nr, f.nodes); }

}  // namespace

TEST_CASE("cone over the round sphere carries mass r/(r+1)") {
  RadialGrid g = build_radial_grid(0.5, 2.0, 61);
  AngularChart chart = build_chart(latlong(16, 32));
  BackgroundWarped bg = make_background(preset(BackgroundPreset::euclidean), g, chart);
  MetricFamily fam = eval_metric_family("cone(1)", g, chart);
  CurvatureBundle b = shape_bundle(fam), b0 = shape_bundle(bg.g0);
  MassField mf = radial_mass(b, b0, bg);

  const int i1 = 20;  // r = 1
  CHECK(g.r(i1) == doctest::Approx(1.0));
  // Quadratic warp: every stencil is exact, only roundoff remains.
  for (int j = 0; j < chart.nodes; j += 97)
    CHECK(mf.m.at(i1, j) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mf.M[i1] == doctest::Approx(2 * kPi).epsilon(1e-10));

  // Determinant form carries ordinary second-order truncation instead.
  Field md = radial_mass_det(fam, bg);
  CHECK(md.at(i1, 0) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(sup_diff(mf.m, md) <= 1e-3);
}

TEST_CASE("2D sphere against the flat background at the equator") {
  AngularChart s1 = build_chart(circle(8));
  RadialGrid g = build_radial_grid(kPi / 2 - 1.2, kPi / 2 + 1.2, 1441);
  BackgroundWarped bg = make_background(preset(BackgroundPreset::euclidean), g, s1);
  MetricFamily fam = eval_metric_family("round-sphere-2d", g, s1);

  const int mid = 720;  // r = pi/2
  CHECK(g.r(mid) == doctest::Approx(kPi / 2));

  // Log-ratio route: truncation ~ 0.21 dr^2 here.
  MassField m2 = mass_2d(fam, bg);
  CHECK(m2.m.at(mid, 0) == doctest::Approx(kPi / 2).epsilon(1e-6 / (kPi / 2)));
  CHECK(m2.M[mid] == doctest::Approx(kPi * kPi).epsilon(5e-6 / (kPi * kPi)));

  // Shape route: the sin^2 third derivative vanishes at the equator, so the
  // value there is exact to far below the generic truncation level.
  CurvatureBundle b = shape_bundle(fam), b0 = shape_bundle(bg.g0);
  MassField ms = radial_mass(b, b0, bg);
  CHECK(std::fabs(ms.m.at(mid, 0) - kPi / 2) <= 1e-9);
  CHECK(sup_diff(m2.m, ms.m) <= 1e-3);
}

TEST_CASE("unperturbed family has exactly zero mass") {
  RadialGrid g = build_radial_grid(0.0, 1.0, 51);
  AngularChart chart = build_chart(torus(8, 16));
  BackgroundWarped bg = make_background(preset(BackgroundPreset::hyperbolic, 1), g, chart);
  MetricFamily fam = make_perturbed_family(bg, {"1", "0", "-1"}, "0");
  CurvatureBundle b = shape_bundle(fam), b0 = shape_bundle(bg.g0);

  MassField mf = radial_mass(b, b0, bg);
  CHECK(sup_abs(mf.m) == 0.0);
  for (double Mi : mf.M) CHECK(Mi == 0.0);

  Field md = radial_mass_det(fam, bg);
  CHECK(sup_abs(md) == 0.0);
}

TEST_CASE("doubling the warp and quartering the fiber metric rescales exactly") {
  RadialGrid g = build_radial_grid(0.0, 1.0, 41);
  const std::vector<std::string> P = {"1", "0", "-1"};

  // n = 3: the fiber integral is invariant, the density scales by 4.
  AngularChart c1 = build_chart(torus(8, 8));
  ChartSpec quarter = torus(8, 8);
  quarter.scale = 0.25;
  AngularChart c2 = build_chart(quarter);

  BackgroundWarped bg1 = make_background(custom("exp(r) + exp(-r)"), g, c1);
  BackgroundWarped bg2 = make_background(custom("2*(exp(r) + exp(-r))"), g, c2);
  MetricFamily f1 = make_perturbed_family(bg1, P, "0.1*exp(-2*r)");
  MetricFamily f2 = make_perturbed_family(bg2, P, "0.1*exp(-2*r)/4");

  MassField m1 = radial_mass(shape_bundle(f1), shape_bundle(bg1.g0), bg1);
  MassField m2 = radial_mass(shape_bundle(f2), shape_bundle(bg2.g0), bg2);
  CHECK(sup_diff(m2.m, f_scale(m1.m, 4.0)) == 0.0);
  for (int i = 0; i < g.nr; ++i) CHECK(m2.M[std::size_t(i)] == m1.M[std::size_t(i)]);

  // n = 2: the fiber integral doubles.
  AngularChart s1 = build_chart(circle(8));
  ChartSpec qcirc = circle(8);
  qcirc.scale = 0.25;
  AngularChart s2 = build_chart(qcirc);
  BackgroundWarped bh1 = make_background(custom("exp(r) + exp(-r)"), g, s1);
  BackgroundWarped bh2 = make_background(custom("2*(exp(r) + exp(-r))"), g, s2);
  MetricFamily e1 = make_perturbed_family(bh1, {"1"}, "0.05*exp(-r)");
  MetricFamily e2 = make_perturbed_family(bh2, {"0.25"}, "0.05*exp(-r)");
  MassField w1 = mass_2d(e1, bh1);
  MassField w2 = mass_2d(e2, bh2);
  CHECK(sup_diff(w2.m, f_scale(w1.m, 4.0)) == 0.0);
  for (int i = 0; i < g.nr; ++i) CHECK(w2.M[std::size_t(i)] == 2 * w1.M[std::size_t(i)]);
}

TEST_CASE("shape and determinant masses agree at second order") {
  AngularChart chart = build_chart(torus(8, 8));
  double sup_prev = 0, ratio = 0;
  for (int level = 0; level < 2; ++level) {
    const int nr = level == 0 ? 101 : 201;
    RadialGrid g = build_radial_grid(0.0, 1.0, nr);
    BackgroundWarped bg = make_background(preset(BackgroundPreset::hyperbolic, 0), g, chart);
    MetricFamily fam =
        make_perturbed_family(bg, {"1 + 0.3*sin(x1)", "0", "-(1 + 0.3*sin(x1))"},
                              "0.1*exp(-2*r)");
    MassField mf = radial_mass(shape_bundle(fam), shape_bundle(bg.g0), bg);
    Field md = radial_mass_det(fam, bg);
    const double s = sup_diff(mf.m, md);
    if (level == 0)
      sup_prev = s;
    else
      ratio = sup_prev / s;
    CHECK(s <= (level == 0 ? 1e-4 : 3e-5));
  }
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
}

TEST_CASE("Riccati residual of a perturbed hyperbolic family converges at second order") {
  AngularChart chart = build_chart(torus(8, 8));
  double sup_prev = 0, ratio = 0;
  for (int level = 0; level < 2; ++level) {
    const int nr = level == 0 ? 101 : 201;
    RadialGrid g = build_radial_grid(0.0, 1.0, nr);
    BackgroundWarped bg = make_background(preset(BackgroundPreset::hyperbolic, 0), g, chart);
    MetricFamily fam = make_perturbed_family(bg, {"1", "0", "-1"}, "0.1*exp(-2*r)");
    CurvatureBundle b = shape_bundle(fam), b0 = shape_bundle(bg.g0);
    MassField mf = radial_mass(b, b0, bg);
    ResidualReport rep =
        riccati_residual(mf.m, radial_ricci(b), radial_ricci(b0), b.s2, bg);
    if (level == 0)
      sup_prev = rep.sup;
    else
      ratio = sup_prev / rep.sup;
    CHECK(rep.sup <= (level == 0 ? 5e-3 : 2e-3));
    CHECK(rep.l1 <= rep.sup * (2 * kPi) * (2 * kPi));  // L1 bounded by sup * volume
    CHECK(int(rep.row_sup.size()) == nr);
  }
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
}

TEST_CASE("oracle-sourced residual converges when both spacings refine") {
  double sup_prev = 0, ratio = 0;
  for (int level = 0; level < 2; ++level) {
    const int nr = level == 0 ? 101 : 201;
    const int res = level == 0 ? 16 : 32;
    RadialGrid g = build_radial_grid(0.0, 1.0, nr);
    AngularChart chart = build_chart(torus(res, res));
    BackgroundWarped bg = make_background(preset(BackgroundPreset::hyperbolic, 0), g, chart);
    MetricFamily fam = make_perturbed_family(
        bg, {"1 + 0.3*sin(x1)", "0", "-(1 + 0.3*cos(x2))"}, "0.1*exp(-2*r)");
    CurvatureBundle b = shape_bundle(fam), b0 = shape_bundle(bg.g0);
    MassField mf = radial_mass(b, b0, bg);
    OracleCurvature oc = ricci_oracle(fam);
    ResidualReport rep = riccati_residual(mf.m, oc.rrr(), radial_ricci(b0), b.s2, bg);
    if (level == 0)
      sup_prev = rep.sup;
    else
      ratio = sup_prev / rep.sup;
    CHECK(rep.sup <= (level == 0 ? 2e-2 : 6e-3));
  }
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
}

TEST_CASE("divergence residual matches the Riccati residual on a cylinder") {
  RadialGrid g = build_radial_grid(0.0, 1.0, 101);
  AngularChart chart = build_chart(torus(8, 8));
  BackgroundWarped bg = make_background(preset(BackgroundPreset::cylindrical), g, chart);
  MetricFamily fam = make_perturbed_family(bg, {"1", "0", "-1"}, "0.1*exp(-r)");
  CurvatureBundle b = shape_bundle(fam), b0 = shape_bundle(bg.g0);
  MassField mf = radial_mass(b, b0, bg);
  Field u = divergence_field(b, b0, bg);

  // With h == 1 the two residuals are algebraically identical.
  Field rrr = radial_ricci(b), r0rr = radial_ricci(b0);
  ResidualReport ric = riccati_residual(mf.m, rrr, r0rr, b.s2, bg);
  ResidualReport div = divergence_residual(u, rrr, r0rr, b.s2, b0, bg);
  CHECK(sup_diff(ric.residual, div.residual) <= 1e-12);
  CHECK(sup_diff(u, f_scale(mf.m, -1.0)) == 0.0);
}

TEST_CASE("2D Riccati and divergence residuals vanish at second order") {
  AngularChart s1 = build_chart(circle(16));
  double sup_prev_r = 0, sup_prev_d = 0, ratio_r = 0, ratio_d = 0;
  for (int level = 0; level < 2; ++level) {
    const int nr = level == 0 ? 101 : 201;
    RadialGrid g = build_radial_grid(0.0, 1.0, nr);
    BackgroundWarped bg = make_background(custom("exp(r)*(1 + 0.2*sin(x1)^2)"), g, s1);
    MetricFamily fam = eval_metric_family(
        "(exp(r)*(1 + 0.2*sin(x1)^2))^2 * (1 + 0.05*exp(-r))^2", g, s1);
    MassField mf = mass_2d(fam, bg);
    Field K = gauss_curvature(fam), K0 = gauss_curvature_bg(bg);
    ResidualReport ric = riccati_residual(mf.m, K, K0, zero_like(mf.m), bg);

    CurvatureBundle b = shape_bundle(fam), b0 = shape_bundle(bg.g0);
    Field u = divergence_field(b, b0, bg);
    ResidualReport div = divergence_residual(u, K, K0, zero_like(mf.m), b0, bg);

    if (level == 0) {
      sup_prev_r = ric.sup;
      sup_prev_d = div.sup;
    } else {
      ratio_r = sup_prev_r / ric.sup;
      ratio_d = sup_prev_d / div.sup;
    }
    CHECK(ric.sup <= (level == 0 ? 5e-3 : 2e-3));
    CHECK(div.sup <= (level == 0 ? 5e-3 : 2e-3));
  }
  CHECK(ratio_r >= 3.0);
  CHECK(ratio_r <= 5.0);
  CHECK(ratio_d >= 3.0);
  CHECK(ratio_d <= 5.0);
}

TEST_CASE("divergence residual for n = 3 equals the Riccati residual over h^2") {
  RadialGrid g = build_radial_grid(0.0, 1.0, 101);
  AngularChart chart = build_chart(torus(8, 8));
  BackgroundWarped bg = make_background(preset(BackgroundPreset::hyperbolic, 1), g, chart);
  MetricFamily fam = make_perturbed_family(bg, {"1", "0", "-1"}, "0.1*exp(-2*r)");
  CurvatureBundle b = shape_bundle(fam), b0 = shape_bundle(bg.g0);
  MassField mf = radial_mass(b, b0, bg);
  Field u = divergence_field(b, b0, bg);
  Field rrr = radial_ricci(b), r0rr = radial_ricci(b0);
  ResidualReport ric = riccati_residual(mf.m, rrr, r0rr, b.s2, bg);
  ResidualReport div = divergence_residual(u, rrr, r0rr, b.s2, b0, bg);

  // u = -m / h^2 for n = 3, so the difference is the finite-difference
  // Leibniz defect of d/dr(h^2 u); both residuals measure the same identity.
  Field scaled(ric.residual.nr, ric.residual.nodes);
  for (int i = 0; i < scaled.nr; ++i)
    for (int j = 0; j < scaled.nodes; ++j) {
      const double h = bg.h_at(i, j);
      scaled.at(i, j) = ric.residual.at(i, j) / (h * h);
    }
  CHECK(sup_diff(scaled, div.residual) <= 5e-4);
}
