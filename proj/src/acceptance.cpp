// Acceptance suite: twelve end-to-end checks, one per shipped guarantee.
// Each criterion builds its own scene, measures against closed forms or
// convergence laws, and reports one PASS/FAIL line with the numbers.

#include "rrmlab/acceptance.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rrmlab/asymptotics.hpp"
#include "rrmlab/compare.hpp"
#include "rrmlab/errors.hpp"
#include "rrmlab/mass.hpp"
#include "rrmlab/rigidity.hpp"

namespace rrm {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

ChartSpec box_spec(std::vector<int> res) {
  ChartSpec c;
  c.kind = ChartKind::periodic_box;
  c.res = std::move(res);
  return c;
}

ChartSpec sphere_spec(int nth, int nph) {
  ChartSpec c;
  c.kind = ChartKind::latlong_sphere;
  c.res = {nth, nph};
  return c;
}

BackgroundSpec preset_spec(BackgroundPreset p, double k = 0) {
  BackgroundSpec b;
  b.preset = p;
  b.k = k;
  return b;
}

// One self-owning scene; everything the family points into lives here.
struct Lab {
  RadialGrid grid;
  AngularChart chart;
  BackgroundWarped bg;
  MetricFamily fam;
  bool has_bg = false;
};

// Corpus entry: a family description replayable at any radial resolution.
struct CorpusEntry {
  std::string name;
  double a, b;
  int nr;
  ChartSpec chart;
  BackgroundSpec bg;
  std::string family;         // expression or builtin; empty = perturbation
  std::vector<std::string> P;
  std::string B;
  ParamMap params;
  bool is_background = false;  // reproduces its own background exactly
};

void build_entry(const CorpusEntry& e, Lab& L, int refine) {
  L.grid = build_radial_grid(e.a, e.b, (e.nr - 1) * refine + 1);
  L.chart = build_chart(e.chart);
  L.bg = make_background(e.bg, L.grid, L.chart);
  L.has_bg = true;
  if (!e.family.empty())
    L.fam = eval_metric_family(e.family, L.grid, L.chart, e.params);
  else
    L.fam = make_perturbed_family(L.bg, e.P, e.B, e.params);
}

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;

  CorpusEntry id_hyp{"identity-hyperbolic", 0.0, 1.0, 401, box_spec({12, 12}),
                     preset_spec(BackgroundPreset::hyperbolic, 1.0),
                     "", {"0", "0", "0"}, "0", {}, true};
  out.push_back(id_hyp);

  CorpusEntry id_sph{"identity-spherical", 0.5, 1.1, 401, box_spec({12, 12}),
                     preset_spec(BackgroundPreset::spherical),
                     "", {"0", "0", "0"}, "0", {}, true};
  out.push_back(id_sph);

  CorpusEntry cone{"cone", 0.5, 2.5, 1601, sphere_spec(16, 32),
                   preset_spec(BackgroundPreset::euclidean),
                   "cone(1)", {}, "", {}, false};
  out.push_back(cone);

  CorpusEntry pert_a{"perturbed-hyperbolic", 0.0, 1.0, 401, box_spec({12, 12}),
                     preset_spec(BackgroundPreset::hyperbolic),
                     "", {"0.2", "0", "0.05"}, "0.5*exp(-2*r)", {}, false};
  out.push_back(pert_a);

  CorpusEntry pert_b{"perturbed-anisotropic", 0.0, 1.0, 401, box_spec({16, 16}),
                     preset_spec(BackgroundPreset::hyperbolic),
                     "", {"0.1", "0", "-0.1"}, "exp(-2*r)", {}, false};
  out.push_back(pert_b);

  CorpusEntry sph2d{"sphere-2d", kPi / 2 - 0.8, kPi / 2 + 0.8, 801, box_spec({16}),
                    preset_spec(BackgroundPreset::euclidean),
                    "sin(r)^2", {}, "", {}, false};
  out.push_back(sph2d);

  CorpusEntry exp2d{"exponential-2d", 0.0, 1.0, 401, box_spec({16}),
                    preset_spec(BackgroundPreset::hyperbolic),
                    "(exp(r) + 0.5*exp(-r))^2", {}, "", {}, false};
  out.push_back(exp2d);

  return out;
}

bool order_two(double base, double fine, double lo = 3.0, double hi = 5.0) {
  // Rounding-level residuals carry no measurable order.
  if (base <= 1e-10) return true;
  const double ratio = base / fine;
  return ratio >= lo && ratio <= hi;
}

// ---- criterion 1: difference Riccati residual, 3D, oracle curvature ----

CriterionResult criterion_riccati_3d() {
  auto residual_sup = [](int nr, int res) {
    Lab L;
    L.grid = build_radial_grid(0.0, 1.0, nr);
    L.chart = build_chart(box_spec({res, res}));
    L.bg = make_background(preset_spec(BackgroundPreset::hyperbolic), L.grid, L.chart);
    L.fam = make_perturbed_family(L.bg, {"0.1", "0", "-0.1"}, "exp(-2*r)");
    const CurvatureBundle b = shape_bundle(L.fam);
    const CurvatureBundle b0 = shape_bundle(L.bg.g0);
    const Field m = radial_mass(b, b0, L.bg).m;
    const Field rrr = ricci_oracle(L.fam).rrr();
    const Field r0rr = radial_ricci(b0);
    return riccati_residual(m, rrr, r0rr, b.s2, L.bg).sup;
  };
  const double base = residual_sup(401, 16);
  const double fine = residual_sup(801, 32);
  const double ratio = base / fine;
  const bool pass = base <= 1e-3 && ratio >= 3.5 && ratio <= 4.5;
  return {"riccati-convergence-3d",
          pass,
          "sup " + fmt(base) + " at nr=401 (<=1e-3), halving ratio " + fmt(ratio) +
              " in [3.5,4.5]"};
}

// ---- criterion 2: difference Riccati residual, 2D, angular background ----

CriterionResult criterion_riccati_2d() {
  auto residual_sup = [](int nr, int res) {
    Lab L;
    L.grid = build_radial_grid(0.0, 1.0, nr);
    L.chart = build_chart(box_spec({res}));
    BackgroundSpec bs;
    bs.preset = BackgroundPreset::custom;
    bs.h_expr = "exp(r)*(1 + 0.2*sin(x1)^2)";
    L.bg = make_background(bs, L.grid, L.chart);
    L.fam = eval_metric_family("(exp(r)*(1 + 0.2*sin(x1)^2)*(1 + 0.05*exp(-r)))^2",
                               L.grid, L.chart);
    const Field m = mass_2d(L.fam, L.bg).m;
    const Field rrr = gauss_curvature(L.fam);
    const Field r0rr = gauss_curvature_bg(L.bg);
    const Field s2(L.grid.nr, L.chart.nodes);
    return riccati_residual(m, rrr, r0rr, s2, L.bg).sup;
  };
  const double base = residual_sup(401, 16);
  const double fine = residual_sup(801, 32);
  const double ratio = base / fine;
  const bool pass = base <= 1e-3 && ratio >= 3.5 && ratio <= 4.5;
  return {"riccati-convergence-2d",
          pass,
          "sup " + fmt(base) + " at nr=401 (<=1e-3), halving ratio " + fmt(ratio) +
              " in [3.5,4.5]"};
}

// ---- criterion 3: difference form vs determinant form of the mass ----

CriterionResult criterion_mass_forms() {
  bool pass = true;
  std::string detail;
  for (const CorpusEntry& e : corpus()) {
    double sup[2];
    for (int lvl = 0; lvl < 2; ++lvl) {
      Lab L;
      build_entry(e, L, lvl + 1);
      const CurvatureBundle b = shape_bundle(L.fam);
      const CurvatureBundle b0 = shape_bundle(L.bg.g0);
      const Field m = radial_mass(b, b0, L.bg).m;
      const Field md = radial_mass_det(L.fam, L.bg);
      sup[lvl] = sup_abs(f_sub(m, md));
    }
    const bool ok = sup[0] <= 1e-4 && order_two(sup[0], sup[1]);
    pass = pass && ok;
    if (!detail.empty()) detail += ", ";
    detail += e.name + " " + fmt(sup[0]);
    if (!ok) detail += " FAIL";
  }
  return {"mass-form-equivalence", pass, "sup|m - m_det|: " + detail};
}

// ---- criterion 4: full-curvature oracle vs radial formulas ----

CriterionResult criterion_oracle() {
  const char* fams[] = {"1 ; 0 ; 1", "exp(2*r) ; 0 ; exp(2*r)",
                        "exp(2*r) ; 0 ; exp(4*r)"};
  const char* names[] = {"flat", "warped", "anisotropic"};
  bool pass = true;
  std::string detail;
  for (int f = 0; f < 3; ++f) {
    double trace[2], mixed[2];
    for (int lvl = 0; lvl < 2; ++lvl) {
      Lab L;
      L.grid = build_radial_grid(0.0, 1.0, lvl == 0 ? 401 : 801);
      L.chart = build_chart(box_spec({lvl == 0 ? 16 : 32, lvl == 0 ? 16 : 32}));
      L.fam = eval_metric_family(fams[f], L.grid, L.chart);
      const CurvatureBundle b = shape_bundle(L.fam);
      const OracleCurvature oc = ricci_oracle(L.fam);
      trace[lvl] = sup_abs(f_sub(oc.rrr(), radial_ricci(b)));
      const EndoField mr = mixed_radial_curvature(b);
      double worst = 0;
      for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B)
          worst = std::max(worst, sup_abs(f_sub(oc.mixed.at(B, A), mr.at(B, A))));
      mixed[lvl] = worst;
    }
    const bool ok = trace[0] <= 1e-3 && mixed[0] <= 1e-3 &&
                    order_two(trace[0], trace[1]) && order_two(mixed[0], mixed[1]);
    pass = pass && ok;
    if (!detail.empty()) detail += ", ";
    detail += std::string(names[f]) + " trace " + fmt(trace[0]) + " mixed " + fmt(mixed[0]);
    if (!ok) detail += " FAIL";
  }
  return {"curvature-oracle-agreement", pass, detail};
}

// ---- criterion 5: integrated boundary-mass identity ----

CriterionResult criterion_identity() {
  bool pass = true;
  std::string detail;
  for (const CorpusEntry& e : corpus()) {
    Lab L;
    build_entry(e, L, 1);
    const TheoremReport rep = theorem_report(L.fam, L.bg);
    bool ok = std::fabs(rep.identity_gap) <= 1e-4;
    if (e.is_background)
      ok = ok && rep.defect <= 1e-8;
    else
      ok = ok && rep.defect > 1e-3;
    pass = pass && ok;
    if (!detail.empty()) detail += ", ";
    detail += e.name + " gap " + fmt(rep.identity_gap) + " defect " + fmt(rep.defect);
    if (!ok) detail += " FAIL";
  }
  return {"boundary-mass-identity", pass, detail};
}

// ---- criterion 6: closed-form spot values ----

CriterionResult criterion_spot_values() {
  bool pass = true;
  std::string detail;

  {
    // Unit sphere against the flat plane; the midpoint lands on a node.
    Lab L;
    L.grid = build_radial_grid(kPi / 2 - 0.8, kPi / 2 + 0.8, 2401);
    L.chart = build_chart(box_spec({16}));
    L.bg = make_background(preset_spec(BackgroundPreset::euclidean), L.grid, L.chart);
    L.fam = eval_metric_family("sin(r)^2", L.grid, L.chart);
    const CurvatureBundle b = shape_bundle(L.fam);
    const CurvatureBundle b0 = shape_bundle(L.bg.g0);
    const MassField mf = radial_mass(b, b0, L.bg);
    const int mid = (L.grid.nr - 1) / 2;
    double m_err = 0;
    for (int j = 0; j < L.chart.nodes; ++j)
      m_err = std::max(m_err, std::fabs(mf.m.at(mid, j) - kPi / 2));
    const double M_err = std::fabs(mf.M[std::size_t(mid)] - kPi * kPi);
    const bool ok = m_err <= 1e-6 && M_err <= 1e-6;
    pass = pass && ok;
    detail += "sphere m(pi/2) err " + fmt(m_err) + " M err " + fmt(M_err);
    if (!ok) detail += " FAIL";
  }

  {
    Lab L;
    L.grid = build_radial_grid(0.5, 2.5, 201);
    L.chart = build_chart(sphere_spec(16, 32));
    L.bg = make_background(preset_spec(BackgroundPreset::euclidean), L.grid, L.chart);
    L.fam = eval_metric_family("cone(1)", L.grid, L.chart);
    const CurvatureBundle b = shape_bundle(L.fam);
    const CurvatureBundle b0 = shape_bundle(L.bg.g0);
    const MassField mf = radial_mass(b, b0, L.bg);
    const int at1 = 50;  // r = 0.5 + 50 * 0.01 = 1
    double m_err = 0;
    for (int j = 0; j < L.chart.nodes; ++j)
      m_err = std::max(m_err, std::fabs(mf.m.at(at1, j) - 0.5));
    const double M_err = std::fabs(mf.M[std::size_t(at1)] - 2 * kPi);
    const bool ok = m_err <= 1e-6 && M_err <= 1e-4;
    pass = pass && ok;
    detail += ", cone m(1) err " + fmt(m_err) + " M err " + fmt(M_err);
    if (!ok) detail += " FAIL";
  }

  return {"closed-form-spot-values", pass, detail};
}

// ---- criterion 7: model background curvature constants ----

CriterionResult criterion_model_constants() {
  const struct {
    BackgroundPreset preset;
    const char* name;
    double k;
    double expected;
  } models[] = {{BackgroundPreset::hyperbolic, "hyperbolic", 1.0, -2.0},
                {BackgroundPreset::euclidean, "euclidean", 0.0, 0.0},
                {BackgroundPreset::cylindrical, "cylindrical", 0.0, 0.0},
                {BackgroundPreset::spherical, "spherical", 0.0, 2.0}};
  bool pass = true;
  std::string detail;
  for (const auto& m : models) {
    Lab L;
    L.grid = build_radial_grid(0.5, 1.1, 401);
    L.chart = build_chart(box_spec({8, 8}));
    L.bg = make_background(preset_spec(m.preset, m.k), L.grid, L.chart);
    L.fam = make_perturbed_family(L.bg, {"0", "0", "0"}, "0");
    const TheoremReport rep = model_preset_suite(m.preset, m.k, L.fam);
    const bool ok = std::fabs(rep.model_r0rr - m.expected) <= 1e-6 &&
                    rep.model_r0rr_err <= 1e-6;
    pass = pass && ok;
    if (!detail.empty()) detail += ", ";
    detail += std::string(m.name) + " err " + fmt(rep.model_r0rr_err);
    if (!ok) detail += " FAIL";
  }
  return {"model-curvature-constants", pass, "sampled vs constant at nr=401: " + detail};
}

// ---- criterion 8: mass-at-infinity estimator vs extrapolated limit ----

CriterionResult criterion_estimator() {
  Lab L;
  L.grid = build_radial_grid(0.5, 200.0, 799);
  L.chart = build_chart(sphere_spec(16, 32));
  L.bg = make_background(preset_spec(BackgroundPreset::euclidean), L.grid, L.chart);
  L.fam = eval_metric_family("cone(1)", L.grid, L.chart);
  const double est = estimator_infinity(L.fam, L.bg);
  const CurvatureBundle b = shape_bundle(L.fam);
  const CurvatureBundle b0 = shape_bundle(L.bg.g0);
  const MassField mf = radial_mass(b, b0, L.bg);
  const LimitExtrapolation ext = extrapolate_limit(mf.M, L.grid, Endpoint::outer);
  const double est_err = std::fabs(est - 4 * kPi);
  const double agree = std::fabs(est - ext.value);
  const bool pass = est_err <= 1e-3 && ext.converged && agree <= 1e-3;
  return {"mass-limit-estimator",
          pass,
          "cone estimator vs 4pi err " + fmt(est_err) + ", vs extrapolated (" +
              (ext.converged ? ext.rate : std::string("none")) + ") " + fmt(agree)};
}

// ---- criterion 9: Hawking mass anchors ----

CriterionResult criterion_hawking() {
  bool pass = true;
  std::string detail;

  {
    // Coordinate spheres of the mass-1 slice carry Hawking mass exactly 1.
    Lab L;
    L.grid = build_radial_grid(0.0, 2.0, 401);
    L.chart = build_chart(sphere_spec(16, 32));
    L.fam = eval_metric_family("schwarzschild(1)", L.grid, L.chart, {{"rho0", 3.0}});
    const CurvatureBundle b = shape_bundle(L.fam);
    double worst = 0;
    for (const HawkingSample& s : hawking_mass(L.fam, b))
      worst = std::max(worst, std::fabs(s.m_h - 1.0));
    const bool ok = worst <= 1e-4;
    pass = pass && ok;
    detail += "schwarzschild worst |m_H-1| " + fmt(worst);
    if (!ok) detail += " FAIL";
  }

  {
    Lab L;
    L.grid = build_radial_grid(0.5, 10.0, 101);
    L.chart = build_chart(sphere_spec(16, 16));
    L.bg = make_background(preset_spec(BackgroundPreset::euclidean), L.grid, L.chart);
    L.fam = make_perturbed_family(L.bg, {"0", "0", "0"}, "0");
    const CurvatureBundle b = shape_bundle(L.fam);
    double worst = 0;
    for (const HawkingSample& s : hawking_mass(L.fam, b))
      worst = std::max(worst, std::fabs(s.m_h));
    const bool ok = worst <= 1e-6;
    pass = pass && ok;
    detail += ", flat worst |m_H| " + fmt(worst);
    if (!ok) detail += " FAIL";
  }

  {
    Lab L;
    L.grid = build_radial_grid(0.5, 2.5, 5);  // quadratic profile, stencil-exact
    L.chart = build_chart(sphere_spec(16, 32));
    L.fam = eval_metric_family("cone(1)", L.grid, L.chart);
    const CurvatureBundle b = shape_bundle(L.fam);
    const std::vector<HawkingSample> hs = hawking_mass(L.fam, b);
    const double err = std::fabs(hs[1].m_h + std::sqrt(2.0) / 16.0);  // r = 1
    const bool ok = err <= 1e-4;
    pass = pass && ok;
    detail += ", cone m_H(1) err " + fmt(err);
    if (!ok) detail += " FAIL";
  }

  return {"hawking-mass-anchors", pass, detail};
}

// ---- criterion 10: factor-three law and its decay ----

CriterionResult criterion_factor_three() {
  Lab L;
  L.grid = build_radial_grid(0.0, 8.2, 4101);
  L.chart = build_chart(box_spec({16}));
  L.bg = make_background(preset_spec(BackgroundPreset::hyperbolic), L.grid, L.chart);
  L.fam = eval_metric_family("(exp(r) + 0.5*exp(-r))^2", L.grid, L.chart);
  const std::vector<FluxSample> fs = ch_flux(family_h_2d(L.fam), L.bg);
  const MassField mf = mass_2d(L.fam, L.bg);

  const int at6 = 3000;  // r = 6
  const double ratio6 = std::fabs(fs[at6].p / mf.M[at6] - 3.0);

  // The flux excess decays like A*exp(-2r); the discretization bias of the
  // two pipelines is flat in r, so fit both and require the flat part to sit
  // orders below the window-start signal.
  double n = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (int i = 0; i < L.grid.nr; ++i) {
    const double r = L.grid.r(i);
    if (r < 3.0 || r > 8.0) continue;
    const double x = std::exp(-2.0 * r);
    const double y = fs[std::size_t(i)].p - 3.0 * mf.M[std::size_t(i)];
    n += 1;
    sx += x;
    sxx += x * x;
    sy += y;
    sxy += x * y;
  }
  const double det = n * sxx - sx * sx;
  const double A = (n * sxy - sx * sy) / det;
  const double B = (sy * sxx - sx * sxy) / det;
  double rss = 0;
  for (int i = 0; i < L.grid.nr; ++i) {
    const double r = L.grid.r(i);
    if (r < 3.0 || r > 8.0) continue;
    const double d = fs[std::size_t(i)].p - 3.0 * mf.M[std::size_t(i)] -
                     A * std::exp(-2.0 * r) - B;
    rss += d * d;
  }
  const double rms = std::sqrt(rss / n);

  const double exact_A = 2 * kPi * 5 * 0.25;  // 2*pi*5*alpha^2, alpha = 1/2
  const double start = exact_A * std::exp(-6.0);
  const bool pass = ratio6 <= 1e-3 && std::fabs(A / exact_A - 1.0) <= 0.05 &&
                    std::fabs(B) <= 0.01 * start && rms <= 0.01 * start;
  return {"factor-three-law",
          pass,
          "|p/M-3|(6) = " + fmt(ratio6) + ", decay amplitude rel err " +
              fmt(std::fabs(A / exact_A - 1.0)) + ", flat bias/signal " +
              fmt(std::fabs(B) / start) + ", rms/signal " + fmt(rms / start)};
}

// ---- criterion 11: warp rescaling law ----

CriterionResult criterion_scaling() {
  // (h, Ghat) -> (2h, Ghat/4) leaves the background metric unchanged and
  // multiplies M by 2^(3-n); every factor is a power of two, so the two
  // pipelines agree to rounding.
  bool pass = true;
  std::string detail;

  auto masses_3d = [](bool scaled) {
    Lab L;
    L.grid = build_radial_grid(0.0, 1.0, 201);
    ChartSpec cs = box_spec({12, 12});
    if (scaled) cs.scale = 0.25;
    L.chart = build_chart(cs);
    BackgroundSpec bs;
    if (scaled) {
      bs.preset = BackgroundPreset::custom;
      bs.h_expr = "2*exp(r)";
    } else {
      bs.preset = BackgroundPreset::hyperbolic;
    }
    L.bg = make_background(bs, L.grid, L.chart);
    const std::vector<std::string> P =
        scaled ? std::vector<std::string>{"0.05", "0", "0.0125"}
               : std::vector<std::string>{"0.2", "0", "0.05"};
    L.fam = make_perturbed_family(L.bg, P, "0.5*exp(-2*r)");
    const CurvatureBundle b = shape_bundle(L.fam);
    const CurvatureBundle b0 = shape_bundle(L.bg.g0);
    return radial_mass(b, b0, L.bg).M;
  };
  const std::vector<double> Ma = masses_3d(false), Mb = masses_3d(true);
  double d3 = 0;
  for (std::size_t i = 0; i < Ma.size(); ++i)
    d3 = std::max(d3, std::fabs(Mb[i] - Ma[i]));  // lambda^(3-n) = 1
  pass = pass && d3 <= 1e-10;
  detail += "n=3 sup|M_scaled - M| = " + fmt(d3);

  auto masses_2d = [](bool scaled) {
    Lab L;
    L.grid = build_radial_grid(0.0, 1.0, 201);
    ChartSpec cs = box_spec({16});
    if (scaled) cs.scale = 0.25;
    L.chart = build_chart(cs);
    BackgroundSpec bs;
    if (scaled) {
      bs.preset = BackgroundPreset::custom;
      bs.h_expr = "2*exp(r)";
    } else {
      bs.preset = BackgroundPreset::hyperbolic;
    }
    L.bg = make_background(bs, L.grid, L.chart);
    L.fam = make_perturbed_family(L.bg, {scaled ? "0.05" : "0.2"}, "0.5*exp(-2*r)");
    return mass_2d(L.fam, L.bg).M;
  };
  const std::vector<double> Na = masses_2d(false), Nb = masses_2d(true);
  double d2 = 0;
  for (std::size_t i = 0; i < Na.size(); ++i)
    d2 = std::max(d2, std::fabs(Nb[i] - 2.0 * Na[i]));  // lambda^(3-n) = 2
  pass = pass && d2 <= 1e-10;
  detail += ", n=2 sup|M_scaled - 2M| = " + fmt(d2);

  return {"scaling-invariance", pass, detail};
}

// ---- criterion 12: monotonicity of the 2D mass ----

CriterionResult criterion_monotonicity() {
  Lab L;
  L.grid = build_radial_grid(0.1, 3.0, 581);
  L.chart = build_chart(box_spec({8}));
  L.bg = make_background(preset_spec(BackgroundPreset::euclidean), L.grid, L.chart);
  L.fam = eval_metric_family("sin(r)^2", L.grid, L.chart);
  const MassField mf = mass_2d(L.fam, L.bg);
  const Field rrr = gauss_curvature(L.fam);
  const Field r0rr = gauss_curvature_bg(L.bg);
  const MonotonicityReport rep = monotonicity_check(mf, rrr, r0rr, L.grid, 1e-8);
  const bool pass = rep.monotone && rep.gated_fibers == L.chart.nodes &&
                    rep.worst_drop >= -1e-8;
  return {"mass-monotonicity-2d",
          pass,
          "gated fibers " + std::to_string(rep.gated_fibers) + "/" +
              std::to_string(L.chart.nodes) + ", worst drop " + fmt(rep.worst_drop)};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(bool echo) {
  const std::function<CriterionResult()> checks[] = {
      criterion_riccati_3d,    criterion_riccati_2d,  criterion_mass_forms,
      criterion_oracle,        criterion_identity,    criterion_spot_values,
      criterion_model_constants, criterion_estimator, criterion_hawking,
      criterion_factor_three,  criterion_scaling,     criterion_monotonicity};
  std::vector<CriterionResult> out;
  for (const auto& check : checks) {
    CriterionResult r = check();
    if (echo) {
      std::printf("%s %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                  r.detail.c_str());
      std::fflush(stdout);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace rrm
