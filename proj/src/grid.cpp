// Grid construction, chart metrics and weights, finite differences.

#include "rrmlab/grid.hpp"

#include "rrmlab/smallmat.hpp"

#include <cmath>
#include <string>

namespace rrm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

RadialGrid build_radial_grid(double a, double b, int nr, double inset) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(inset))
    throw ConfigError("radial interval bounds must be finite");
  if (!(b > a)) throw ConfigError("radial interval is empty: need a < b");
  if (inset < 0) throw ConfigError("radial inset must be non-negative");
  if (!(a + inset < b - inset))
    throw ConfigError("radial inset leaves an empty interval: need a + inset < b - inset");
  if (nr < 5) throw ConfigError("radial grid needs at least 5 samples, got " + std::to_string(nr));
  RadialGrid g;
  g.a = a;
  g.b = b;
  g.nr = nr;
  g.inset = inset;
  g.dr = (b - 2 * inset - a) / (nr - 1);
  g.rs.resize(std::size_t(nr));
  const double lo = a + inset;
  for (int i = 0; i < nr; ++i) g.rs[std::size_t(i)] = lo + i * g.dr;
  g.rs.back() = b - inset;
  return g;
}

double AngularChart::spacing(int axis) const {
  if (kind == ChartKind::latlong_sphere)
    return axis == 0 ? kPi / res[0] : 2 * kPi / res[1];
  return period[std::size_t(axis)] / res[std::size_t(axis)];
}

int AngularChart::neighbor(int j, int axis, int shift) const {
  const int n = res[std::size_t(axis)];
  const int idx = axis_index(j, axis);
  int wrapped = (idx + shift) % n;
  if (wrapped < 0) wrapped += n;
  return j + (wrapped - idx) * stride[std::size_t(axis)];
}

AngularChart build_chart(const ChartSpec& spec) {
  AngularChart c;
  c.kind = spec.kind;
  c.scale = spec.scale;
  if (!(spec.scale > 0) || !std::isfinite(spec.scale))
    throw ConfigError("chart scale must be positive and finite");

  if (spec.kind == ChartKind::latlong_sphere) {
    if (spec.res.size() != 2)
      throw ConfigError("latlong sphere chart needs exactly 2 resolutions (theta, phi)");
    if (!spec.ghat.empty())
      throw ConfigError("latlong sphere chart carries the round metric; ghat entries not allowed");
    const int nth = spec.res[0], nph = spec.res[1];
    if (nth < 8 || nph < 8) throw ConfigError("latlong resolutions must be at least 8");
    c.dim = 2;
    c.res = {nth, nph};
    c.stride = {nph, 1};
    c.nodes = nth * nph;
    const double dth = kPi / nth, dph = 2 * kPi / nph;
    const double s = spec.scale;
    c.coords.resize(std::size_t(c.nodes) * 2);
    c.ghat.resize(std::size_t(c.nodes) * 3);
    c.ghat_inv.resize(std::size_t(c.nodes) * 3);
    c.sqrt_det.resize(std::size_t(c.nodes));
    c.w.resize(std::size_t(c.nodes));
    for (int p = 0; p < nth; ++p) {
      const double th = (p + 0.5) * dth;
      const double sth = std::sin(th);
      for (int q = 0; q < nph; ++q) {
        const int j = p * nph + q;
        c.coords[std::size_t(j) * 2] = th;
        c.coords[std::size_t(j) * 2 + 1] = q * dph;
        double* g = c.ghat.data() + std::size_t(j) * 3;
        g[0] = s;
        g[1] = 0;
        g[2] = s * sth * sth;
        double* gi = c.ghat_inv.data() + std::size_t(j) * 3;
        gi[0] = 1 / s;
        gi[1] = 0;
        gi[2] = 1 / (s * sth * sth);
        c.sqrt_det[std::size_t(j)] = s * sth;
        // Cell-exact weight: integral of sin over the theta cell times dphi.
        c.w[std::size_t(j)] = s * 2.0 * sth * std::sin(dth / 2) * dph;
      }
    }
  } else {
    const int d = static_cast<int>(spec.res.size());
    if (d < 1 || d > 3) throw ConfigError("periodic box chart needs 1 to 3 axes");
    c.dim = d;
    c.res = spec.res;
    c.period = spec.period;
    if (c.period.empty()) c.period.assign(std::size_t(d), 2 * kPi);
    if (static_cast<int>(c.period.size()) != d)
      throw ConfigError("chart periods must match the number of axes");
    c.nodes = 1;
    for (int k = 0; k < d; ++k) {
      if (spec.res[std::size_t(k)] < 8) throw ConfigError("box resolutions must be at least 8");
      if (!(c.period[std::size_t(k)] > 0) || !std::isfinite(c.period[std::size_t(k)]))
        throw ConfigError("box periods must be positive and finite");
      c.nodes *= spec.res[std::size_t(k)];
    }
    c.stride.assign(std::size_t(d), 1);
    for (int k = d - 2; k >= 0; --k)
      c.stride[std::size_t(k)] = c.stride[std::size_t(k) + 1] * c.res[std::size_t(k) + 1];

    const int np = c.npack();
    if (!spec.ghat.empty() && static_cast<int>(spec.ghat.size()) != np)
      throw ConfigError("chart metric needs " + std::to_string(np) + " packed entries, got " +
                        std::to_string(spec.ghat.size()));

    std::vector<BoundExpr> entries;
    if (!spec.ghat.empty()) {
      for (const auto& src : spec.ghat)
        entries.push_back(Expr::parse(src).bind(d, /*allow_r=*/false, spec.params));
    }

    c.coords.resize(std::size_t(c.nodes) * d);
    c.ghat.resize(std::size_t(c.nodes) * np);
    c.ghat_inv.resize(std::size_t(c.nodes) * np);
    c.sqrt_det.resize(std::size_t(c.nodes));
    c.w.resize(std::size_t(c.nodes));

    double cell = 1.0;
    for (int k = 0; k < d; ++k) cell *= c.period[std::size_t(k)] / c.res[std::size_t(k)];

    for (int j = 0; j < c.nodes; ++j) {
      double* x = c.coords.data() + std::size_t(j) * d;
      for (int k = 0; k < d; ++k) x[k] = c.axis_index(j, k) * c.spacing(k);

      double* g = c.ghat.data() + std::size_t(j) * np;
      if (entries.empty()) {
        for (int p = 0; p < np; ++p) g[p] = 0;
        for (int A = 0; A < d; ++A) g[sm::pack_index(d, A, A)] = spec.scale;
      } else {
        for (int p = 0; p < np; ++p) g[p] = spec.scale * entries[std::size_t(p)].eval(0, x);
      }
      if (!sm::sym_posdef(g, d))
        throw ConfigError("chart metric is not positive definite at node " + std::to_string(j));
      sm::sym_inv(g, d, c.ghat_inv.data() + std::size_t(j) * np);
      c.sqrt_det[std::size_t(j)] = std::sqrt(sm::sym_det(g, d));
      c.w[std::size_t(j)] = c.sqrt_det[std::size_t(j)] * cell;
    }
  }
  c.mu = kernels::sum(c.w.data(), c.w.size());
  return c;
}

namespace {

void check_order(int order) {
  if (order != 1 && order != 2)
    throw RunError("finite difference order must be 1 or 2, got " + std::to_string(order));
}

}  // namespace

std::vector<double> ddr(const std::vector<double>& f, const RadialGrid& g, int order) {
  check_order(order);
  const int n = g.nr;
  if (static_cast<int>(f.size()) != n) throw RunError("ddr: sample count does not match grid");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double h = g.dr;
  const std::size_t N = std::size_t(n) - 1;
  // Groupings mirror the kernel lincomb/axpy sequences so the Field overload
  // produces bitwise identical values column by column.
  // Boundary stencils are one-sided with the SAME leading error term as the
  // interior central stencils (-dr^2 f'''/6 and +dr^2 f''''/12), so the
  // truncation-error envelope of a differentiated sample set is smooth in r.
  // Differentiating an already finite-differenced quantity then stays second
  // order up to the boundary rows instead of degrading to first order there.
  if (order == 1) {
    const double c1 = 1.0 / (2 * h);
    out[0] = ((-4 * c1) * f[0] + (7 * c1) * f[1]) + (-4 * c1) * f[2];
    out[0] = out[0] + (1 * c1) * f[3];
    const double cc = 1.0 / (2 * h);
    for (int i = 1; i + 1 < n; ++i)
      out[std::size_t(i)] = cc * f[std::size_t(i) + 1] + (-cc) * f[std::size_t(i) - 1];
    out[N] = ((4 * c1) * f[N] + (-7 * c1) * f[N - 1]) + (4 * c1) * f[N - 2];
    out[N] = out[N] + (-1 * c1) * f[N - 3];
  } else {
    const double h2 = 1.0 / (h * h);
    out[0] = ((3 * h2) * f[0] + (-9 * h2) * f[1]) + (10 * h2) * f[2];
    out[0] = out[0] + (-5 * h2) * f[3];
    out[0] = out[0] + (1 * h2) * f[4];
    for (int i = 1; i + 1 < n; ++i)
      out[std::size_t(i)] = (h2 * f[std::size_t(i) + 1] + (-2 * h2) * f[std::size_t(i)]) +
                            h2 * f[std::size_t(i) - 1];
    out[N] = ((3 * h2) * f[N] + (-9 * h2) * f[N - 1]) + (10 * h2) * f[N - 2];
    out[N] = out[N] + (-5 * h2) * f[N - 3];
    out[N] = out[N] + (1 * h2) * f[N - 4];
  }
  return out;
}

Field ddr(const Field& f, const RadialGrid& g, int order) {
  check_order(order);
  if (f.nr != g.nr) throw RunError("ddr: field rows do not match grid");
  const int n = f.nr;
  const std::size_t m = std::size_t(f.nodes);
  Field out(f.nr, f.nodes);
  const double h = g.dr;
  // Same matched-error boundary stencils as the scalar overload; groupings
  // mirror it exactly so both paths agree bitwise.
  if (order == 1) {
    const double c1 = 1.0 / (2 * h);
    kernels::lincomb3(out.row(0), -4 * c1, f.row(0), 7 * c1, f.row(1), -4 * c1, f.row(2), m);
    kernels::axpy(out.row(0), 1 * c1, f.row(3), m);
    const double cc = 1.0 / (2 * h);
    for (int i = 1; i + 1 < n; ++i)
      kernels::lincomb2(out.row(i), cc, f.row(i + 1), -cc, f.row(i - 1), m);
    const int N = n - 1;
    kernels::lincomb3(out.row(N), 4 * c1, f.row(N), -7 * c1, f.row(N - 1), 4 * c1, f.row(N - 2), m);
    kernels::axpy(out.row(N), -1 * c1, f.row(N - 3), m);
  } else {
    const double h2 = 1.0 / (h * h);
    kernels::lincomb3(out.row(0), 3 * h2, f.row(0), -9 * h2, f.row(1), 10 * h2, f.row(2), m);
    kernels::axpy(out.row(0), -5 * h2, f.row(3), m);
    kernels::axpy(out.row(0), 1 * h2, f.row(4), m);
    for (int i = 1; i + 1 < n; ++i)
      kernels::lincomb3(out.row(i), h2, f.row(i + 1), -2 * h2, f.row(i), h2, f.row(i - 1), m);
    const int N = n - 1;
    kernels::lincomb3(out.row(N), 3 * h2, f.row(N), -9 * h2, f.row(N - 1), 10 * h2,
                      f.row(N - 2), m);
    kernels::axpy(out.row(N), -5 * h2, f.row(N - 3), m);
    kernels::axpy(out.row(N), 1 * h2, f.row(N - 4), m);
  }
  return out;
}

SymField ddr(const SymField& f, const RadialGrid& g, int order) {
  SymField out(f.dim, f.nr(), f.nodes());
  for (int p = 0; p < f.npack(); ++p) out(p) = ddr(f(p), g, order);
  return out;
}

namespace {

void require_box(const AngularChart& chart, const char* what) {
  if (chart.kind != ChartKind::periodic_box)
    throw RunError(std::string(what) + " requires a periodic box chart");
}

}  // namespace

Field dchart(const Field& f, const AngularChart& chart, int axis) {
  require_box(chart, "dchart");
  if (axis < 0 || axis >= chart.dim) throw RunError("dchart: axis out of range");
  if (f.nodes != chart.nodes) throw RunError("dchart: field does not match chart");
  Field out(f.nr, f.nodes);
  const double c = 1.0 / (2 * chart.spacing(axis));
  for (int i = 0; i < f.nr; ++i) {
    const double* src = f.row(i);
    double* dst = out.row(i);
    for (int j = 0; j < f.nodes; ++j) {
      const int jp = chart.neighbor(j, axis, +1);
      const int jm = chart.neighbor(j, axis, -1);
      dst[j] = (src[jp] - src[jm]) * c;
    }
  }
  return out;
}

Field dchart2(const Field& f, const AngularChart& chart, int axisA, int axisB) {
  require_box(chart, "dchart2");
  if (axisA != axisB) return dchart(dchart(f, chart, axisA), chart, axisB);
  if (axisA < 0 || axisA >= chart.dim) throw RunError("dchart2: axis out of range");
  if (f.nodes != chart.nodes) throw RunError("dchart2: field does not match chart");
  Field out(f.nr, f.nodes);
  const double h = chart.spacing(axisA);
  const double c = 1.0 / (h * h);
  for (int i = 0; i < f.nr; ++i) {
    const double* src = f.row(i);
    double* dst = out.row(i);
    for (int j = 0; j < f.nodes; ++j) {
      const int jp = chart.neighbor(j, axisA, +1);
      const int jm = chart.neighbor(j, axisA, -1);
      dst[j] = (src[jp] - 2 * src[j] + src[jm]) * c;
    }
  }
  return out;
}

std::vector<double> integrate_N(const Field& f, const AngularChart& chart) {
  if (f.nodes != chart.nodes) throw RunError("integrate_N: field does not match chart");
  std::vector<double> out(std::size_t(f.nr));
  for (int i = 0; i < f.nr; ++i) {
    const double val = kernels::dot(f.row(i), chart.w.data(), std::size_t(f.nodes));
    if (!std::isfinite(val)) {
      for (int j = 0; j < f.nodes; ++j)
        if (!std::isfinite(f.at(i, j)))
          throw RunError("integrate_N: non-finite field value at radial sample " +
                         std::to_string(i) + ", node " + std::to_string(j));
      throw RunError("integrate_N: non-finite integral at radial sample " + std::to_string(i));
    }
    out[std::size_t(i)] = val;
  }
  return out;
}

Field sample_field(const RadialGrid& g, const AngularChart& chart, const BoundExpr& e) {
  Field out(g.nr, chart.nodes);
  for (int i = 0; i < g.nr; ++i) {
    double* dst = out.row(i);
    const double r = g.r(i);
    for (int j = 0; j < chart.nodes; ++j) dst[j] = e.eval(r, chart.x(j));
  }
  return out;
}

std::vector<double> sample_radial(const RadialGrid& g, const BoundExpr& e) {
  std::vector<double> out(std::size_t(g.nr));
  for (int i = 0; i < g.nr; ++i) out[std::size_t(i)] = e.eval(g.r(i), nullptr);
  return out;
}

}  // namespace rrm
