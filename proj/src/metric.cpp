// Background and metric-family construction: sampling, positivity checks,
// radial derivatives, and the builtin families.

#include "rrmlab/metric.hpp"

#include "rrmlab/errors.hpp"
#include "rrmlab/quadrature.hpp"
#include "rrmlab/smallmat.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace rrm {

namespace {

std::string at_point(const RadialGrid& g, int i, int j) {
  return " at r = " + std::to_string(g.r(i)) + ", node " + std::to_string(j);
}

// Positivity check with first-offender reporting.
void check_posdef(const SymField& G, const RadialGrid& grid, const std::string& what) {
  const int d = G.dim, np = G.npack();
  double p[6];
  for (int i = 0; i < G.nr(); ++i)
    for (int j = 0; j < G.nodes(); ++j) {
      for (int q = 0; q < np; ++q) p[q] = G(q).at(i, j);
      for (int q = 0; q < np; ++q)
        if (!std::isfinite(p[q]))
          throw RunError(what + " has a non-finite entry" + at_point(grid, i, j));
      if (!sm::sym_posdef(p, d))
        throw ConfigError(what + " is not positive definite" + at_point(grid, i, j));
    }
}

void fill_derivatives(MetricFamily& fam) {
  fam.Gp = ddr(fam.G, *fam.grid, 1);
  fam.Gpp = ddr(fam.Gp, *fam.grid, 1);
}

double preset_h(BackgroundPreset preset, double k, double r) {
  switch (preset) {
    case BackgroundPreset::hyperbolic: return std::exp(r) + k * std::exp(-r);
    case BackgroundPreset::euclidean: return r;
    case BackgroundPreset::cylindrical: return 1.0;
    case BackgroundPreset::spherical: return std::sin(r);
    default: return 0.0;
  }
}

// Arc length from rho0 along the Schwarzschild radial direction.
double schw_arc(double M, double lo, double hi) {
  if (hi == lo) return 0;
  auto f = [M](double s) { return 1.0 / std::sqrt(1.0 - 2.0 * M / s); };
  return quad_adaptive(f, lo, hi, 1e-13).value;
}

// Solve schw_arc(M, lo, .) == target on [lo, hi]; the arc map is strictly
// increasing, so plain bisection is safe.
double schw_step(double M, double lo, double hi, double target) {
  double flo = -target, fhi = schw_arc(M, lo, hi) - target;
  if (fhi < 0) throw RunError("schwarzschild bracketing failed");
  double a = lo, b = hi;
  for (int it = 0; it < 200 && b - a > 1e-15 * (1 + b); ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = schw_arc(M, lo, mid) - target;
    if (fm >= 0) {
      b = mid;
      fhi = fm;
    } else {
      a = mid;
      flo = fm;
    }
  }
  // Final secant touch-up inside the bracket for an accurate root.
  if (fhi > flo) {
    const double t = flo / (flo - fhi);
    return a + t * (b - a);
  }
  return 0.5 * (a + b);
}

std::vector<double> schwarzschild_rho(double M, double rho0, const RadialGrid& grid) {
  if (!(rho0 > 2 * M))
    throw ConfigError("schwarzschild needs rho0 > 2M (rho0 = " + std::to_string(rho0) +
                      ", M = " + std::to_string(M) + ")");
  std::vector<double> rho(std::size_t(grid.nr));
  // Anchor rho(0) = rho0, march outward sample by sample; each step solves a
  // short-interval root so quadrature error cannot accumulate geometrically.
  int i0 = 0;
  while (i0 < grid.nr && grid.r(i0) < 0) ++i0;
  if (i0 == grid.nr) throw ConfigError("schwarzschild grid lies entirely at r < 0");
  double prev_r = 0, prev_rho = rho0;
  for (int i = i0; i < grid.nr; ++i) {
    const double step = grid.r(i) - prev_r;
    const double rho_i =
        step == 0 ? prev_rho : schw_step(M, prev_rho, prev_rho + step + 1, step);
    rho[std::size_t(i)] = rho_i;
    prev_r = grid.r(i);
    prev_rho = rho_i;
  }
  // Downward march for any samples below the anchor.
  prev_r = 0;
  prev_rho = rho0;
  for (int i = i0 - 1; i >= 0; --i) {
    const double step = prev_r - grid.r(i);
    const double floor_rho = 2 * M * (1 + 1e-12);
    if (schw_arc(M, floor_rho, prev_rho) <= step)
      throw ConfigError("schwarzschild grid extends past the horizon at r = " +
                        std::to_string(grid.r(i)));
    // Find rho with arc(rho, prev_rho) == step, i.e. arc measured upward.
    double a = floor_rho, b = prev_rho;
    for (int it = 0; it < 200 && b - a > 1e-15 * (1 + b); ++it) {
      const double mid = 0.5 * (a + b);
      if (schw_arc(M, mid, prev_rho) - step >= 0)
        a = mid;
      else
        b = mid;
    }
    rho[std::size_t(i)] = 0.5 * (a + b);
    prev_r = grid.r(i);
    prev_rho = rho[std::size_t(i)];
  }
  return rho;
}

// "name(arg)" splitter; returns false when text is not of that shape.
bool parse_call(const std::string& text, std::string& name, double& arg) {
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')') return false;
  name = text.substr(0, open);
  const std::string inner = text.substr(open + 1, text.size() - open - 2);
  try {
    std::size_t used = 0;
    arg = std::stod(inner, &used);
    if (used != inner.size()) return false;
  } catch (...) {
    return false;
  }
  return true;
}

}  // namespace

BackgroundWarped make_background(const BackgroundSpec& spec, const RadialGrid& grid,
                                 const AngularChart& chart) {
  BackgroundWarped bg;
  bg.preset = spec.preset;
  bg.k = spec.k;
  bg.grid = &grid;
  bg.chart = &chart;

  if (spec.preset == BackgroundPreset::custom) {
    Expr e = Expr::parse(spec.h_expr);
    bool radial = true;
    try {
      e.bind(0, true, spec.params);
    } catch (const ExprError&) {
      radial = false;
    }
    if (!radial && chart.dim != 1)
      throw ConfigError("custom warp factor may depend on x1 only on 1-axis charts");
    bg.radial_only = radial;
    if (radial) {
      BoundExpr be = e.bind(0, true, spec.params);
      bg.h_of_r = [be](double r) { return be.eval(r, nullptr); };
      bg.h = Field(grid.nr, 1);
      for (int i = 0; i < grid.nr; ++i) bg.h.at(i, 0) = be.eval(grid.r(i), nullptr);
    } else {
      BoundExpr be = e.bind(1, true, spec.params);
      bg.h = Field(grid.nr, chart.nodes);
      for (int i = 0; i < grid.nr; ++i)
        for (int j = 0; j < chart.nodes; ++j) bg.h.at(i, j) = be.eval(grid.r(i), chart.x(j));
    }
  } else {
    const BackgroundPreset p = spec.preset;
    const double k = spec.k;
    bg.h_of_r = [p, k](double r) { return preset_h(p, k, r); };
    bg.h = Field(grid.nr, 1);
    for (int i = 0; i < grid.nr; ++i) bg.h.at(i, 0) = preset_h(p, k, grid.r(i));
  }

  for (int i = 0; i < grid.nr; ++i)
    for (int j = 0; j < bg.h.nodes; ++j) {
      const double v = bg.h.at(i, j);
      if (!std::isfinite(v)) throw ConfigError("warp factor is non-finite" + at_point(grid, i, j));
      if (!(v > 0))
        throw ConfigError("warp factor must be positive on the grid; first failure" +
                          at_point(grid, i, j));
    }

  bg.hp = ddr(bg.h, grid, 1);
  bg.hpp = ddr(bg.h, grid, 2);

  // Sampled background metric, differentiated like any foreground family.
  MetricFamily& g0 = bg.g0;
  g0.grid = &grid;
  g0.chart = &chart;
  g0.provenance = FamilyProvenance::background;
  g0.name = "background";
  const int np = chart.npack();
  g0.G = SymField(chart.dim, grid.nr, chart.nodes);
  for (int i = 0; i < grid.nr; ++i)
    for (int j = 0; j < chart.nodes; ++j) {
      const double hij = bg.h_at(i, j);
      const double h2 = hij * hij;
      const double* ghat = chart.ghat_at(j);
      for (int q = 0; q < np; ++q) g0.G(q).at(i, j) = h2 * ghat[q];
    }
  fill_derivatives(g0);
  return bg;
}

MetricFamily make_perturbed_family(const BackgroundWarped& bg, const std::vector<std::string>& P,
                                   const std::string& B, const ParamMap& params) {
  const RadialGrid& grid = *bg.grid;
  const AngularChart& chart = *bg.chart;
  const int d = chart.dim, np = chart.npack();
  if (int(P.size()) != np)
    throw ConfigError("perturbation matrix needs " + std::to_string(np) +
                      " packed entries, got " + std::to_string(P.size()));

  std::vector<BoundExpr> pb;
  pb.reserve(P.size());
  for (const std::string& s : P) pb.push_back(Expr::parse(s).bind(d, false, params));
  BoundExpr bb = Expr::parse(B).bind(0, true, params);

  // Per-node perturbation samples and per-sample amplitude.
  std::vector<double> pvals(std::size_t(np) * chart.nodes);
  for (int j = 0; j < chart.nodes; ++j)
    for (int q = 0; q < np; ++q)
      pvals[std::size_t(j) * np + q] = pb[std::size_t(q)].eval(0, chart.x(j));

  MetricFamily fam;
  fam.grid = &grid;
  fam.chart = &chart;
  fam.provenance = FamilyProvenance::perturbation;
  fam.name = "perturbation";
  fam.G = SymField(d, grid.nr, chart.nodes);
  for (int i = 0; i < grid.nr; ++i) {
    const double Bi = bb.eval(grid.r(i), nullptr);
    for (int j = 0; j < chart.nodes; ++j) {
      const double hij = bg.h_at(i, j);
      const double h2 = hij * hij;
      const double* ghat = chart.ghat_at(j);
      const double* pv = pvals.data() + std::size_t(j) * np;
      for (int q = 0; q < np; ++q) fam.G(q).at(i, j) = h2 * (ghat[q] + Bi * pv[q]);
    }
  }
  check_posdef(fam.G, grid, "perturbed family");
  fill_derivatives(fam);
  return fam;
}

MetricFamily eval_metric_family(const std::string& spec, const RadialGrid& grid,
                                const AngularChart& chart, const ParamMap& params) {
  MetricFamily fam;
  fam.grid = &grid;
  fam.chart = &chart;
  fam.name = spec;
  const int d = chart.dim, np = chart.npack();

  std::string call;
  double arg = 0;
  if (spec == "round-sphere-2d") {
    if (d != 1) throw ConfigError("round-sphere-2d needs a 1-axis chart");
    fam.provenance = FamilyProvenance::builtin;
    fam.G = SymField(1, grid.nr, chart.nodes);
    for (int i = 0; i < grid.nr; ++i) {
      const double s = std::sin(grid.r(i));
      for (int j = 0; j < chart.nodes; ++j) fam.G(0).at(i, j) = s * s;
    }
  } else if (parse_call(spec, call, arg) && call == "cone") {
    fam.provenance = FamilyProvenance::builtin;
    fam.G = SymField(d, grid.nr, chart.nodes);
    for (int i = 0; i < grid.nr; ++i) {
      const double r = grid.r(i);
      const double f = r * r + arg * r;
      for (int j = 0; j < chart.nodes; ++j) {
        const double* ghat = chart.ghat_at(j);
        for (int q = 0; q < np; ++q) fam.G(q).at(i, j) = f * ghat[q];
      }
    }
  } else if (parse_call(spec, call, arg) && call == "schwarzschild") {
    if (chart.kind != ChartKind::latlong_sphere)
      throw ConfigError("schwarzschild needs the round-sphere chart");
    const auto it = params.find("rho0");
    if (it == params.end()) throw ConfigError("schwarzschild needs parameter rho0");
    fam.provenance = FamilyProvenance::builtin;
    const std::vector<double> rho = schwarzschild_rho(arg, it->second, grid);
    fam.G = SymField(d, grid.nr, chart.nodes);
    for (int i = 0; i < grid.nr; ++i) {
      const double f = rho[std::size_t(i)] * rho[std::size_t(i)];
      for (int j = 0; j < chart.nodes; ++j) {
        const double* ghat = chart.ghat_at(j);
        for (int q = 0; q < np; ++q) fam.G(q).at(i, j) = f * ghat[q];
      }
    }
  } else {
    // Packed expression matrix in r, x1..xd; entries separated by ';'.
    std::vector<std::string> entries;
    std::string cur;
    for (char c : spec) {
      if (c == ';') {
        entries.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    entries.push_back(cur);
    if (int(entries.size()) != np)
      throw ConfigError("metric expression matrix needs " + std::to_string(np) +
                        " packed entries, got " + std::to_string(entries.size()));
    fam.provenance = FamilyProvenance::expression;
    std::vector<BoundExpr> eb;
    eb.reserve(entries.size());
    for (const std::string& s : entries) eb.push_back(Expr::parse(s).bind(d, true, params));
    fam.G = SymField(d, grid.nr, chart.nodes);
    for (int i = 0; i < grid.nr; ++i) {
      const double r = grid.r(i);
      for (int j = 0; j < chart.nodes; ++j)
        for (int q = 0; q < np; ++q) fam.G(q).at(i, j) = eb[std::size_t(q)].eval(r, chart.x(j));
    }
  }

  check_posdef(fam.G, grid, "metric family '" + spec + "'");
  fill_derivatives(fam);
  return fam;
}

Field family_h_2d(const MetricFamily& fam) {
  if (fam.dim() != 1) throw RunError("family_h_2d needs a 1-axis chart");
  Field h(fam.G(0).nr, fam.G(0).nodes);
  for (std::size_t t = 0; t < h.v.size(); ++t) h.v[t] = std::sqrt(fam.G(0).v[t]);
  return h;
}

}  // namespace rrm
