// Hawking mass per cross-section, the mass-integral comparison table, and the
// 2D static-potential boundary flux.

#include "rrmlab/compare.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rrmlab/errors.hpp"
#include "rrmlab/smallmat.hpp"

namespace rrm {
namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

std::vector<HawkingSample> hawking_mass(const MetricFamily& fam, const CurvatureBundle& b) {
  if (fam.dim() != 2) throw ConfigError("hawking mass needs two-dimensional sections (n = 3)");
  const AngularChart& chart = *fam.chart;
  const RadialGrid& grid = *fam.grid;
  if (b.H.nr != grid.nr || b.H.nodes != chart.nodes)
    throw ConfigError("curvature bundle does not match the family");

  std::vector<HawkingSample> out(static_cast<std::size_t>(grid.nr));
  for (int i = 0; i < grid.nr; ++i) {
    double area = 0, h2 = 0;
    for (int j = 0; j < chart.nodes; ++j) {
      const double p[3] = {fam.G(0).at(i, j), fam.G(1).at(i, j), fam.G(2).at(i, j)};
      const double det = sm::sym_det(p, 2);
      if (!(det > 0))
        throw RunError("non-positive section metric at r = " + std::to_string(grid.r(i)));
      // Induced measure: chart weight rescaled by the metric density ratio.
      const double w = chart.w[std::size_t(j)] * std::sqrt(det) / chart.sqrt_det[std::size_t(j)];
      const double H = b.H.at(i, j);
      area += w;
      h2 += H * H * w;
    }
    out[std::size_t(i)] = {grid.r(i), area, h2, hawking_from(area, h2)};
  }
  return out;
}

std::vector<HawkingRow> hawking_vs_radial(const MetricFamily& fam, const BackgroundWarped& bg) {
  if (fam.dim() != 2) throw ConfigError("hawking comparison needs n = 3");
  if (bg.preset != BackgroundPreset::euclidean)
    throw ConfigError("hawking comparison is defined against the flat background h = r");

  const CurvatureBundle b = shape_bundle(fam);
  const CurvatureBundle b0 = shape_bundle(bg.g0);
  const MassField mf = radial_mass(b, b0, bg);
  const std::vector<HawkingSample> hk = hawking_mass(fam, b);

  std::vector<HawkingRow> rows(hk.size());
  for (std::size_t i = 0; i < hk.size(); ++i) {
    const double eight = 8.0 * kPi * hk[i].m_h;
    const double M = mf.M[i];
    const double ratio = eight != 0 ? M / eight : std::numeric_limits<double>::quiet_NaN();
    rows[i] = {hk[i].r, M, eight, ratio};
  }
  return rows;
}

std::vector<FluxSample> ch_flux(const Field& h, const BackgroundWarped& bg,
                                const std::vector<double>& V) {
  const RadialGrid& grid = *bg.grid;
  const AngularChart& chart = *bg.chart;
  if (chart.dim != 1) throw ConfigError("boundary flux needs a circle section (n = 2)");
  if (bg.preset != BackgroundPreset::hyperbolic)
    throw ConfigError("boundary flux needs the exponential background h0 = e^r + k e^-r");
  if (h.nr != grid.nr || h.nodes != chart.nodes)
    throw ConfigError("fiber radius field does not match the grid");
  if (!V.empty() && V.size() != static_cast<std::size_t>(grid.nr))
    throw ConfigError("potential samples do not match the grid");

  for (int i = 0; i < grid.nr; ++i)
    for (int j = 0; j < chart.nodes; ++j)
      if (!(h.at(i, j) > 0))
        throw RunError("non-positive fiber radius at r = " + std::to_string(grid.r(i)));

  // h0 is broadcast to a field so both radius derivatives go through the same
  // stencil arithmetic; h == h0 then cancels bitwise in both bracket terms.
  Field h0f(grid.nr, chart.nodes);
  std::vector<double> pot(static_cast<std::size_t>(grid.nr));
  for (int i = 0; i < grid.nr; ++i) {
    const double h0 = bg.h_at(i, 0);
    pot[std::size_t(i)] = V.empty() ? h0 : V[std::size_t(i)];
    for (int j = 0; j < chart.nodes; ++j) h0f.at(i, j) = h0;
  }
  const Field hp = ddr(h, grid, 1);
  const Field h0p = ddr(h0f, grid, 1);
  const std::vector<double> potp = ddr(pot, grid, 1);

  std::vector<FluxSample> out(static_cast<std::size_t>(grid.nr));
  for (int i = 0; i < grid.nr; ++i) {
    FluxSample s;
    s.r = grid.r(i);
    s.v = pot[std::size_t(i)];
    s.flux.resize(static_cast<std::size_t>(chart.nodes));
    double p = 0;
    for (int j = 0; j < chart.nodes; ++j) {
      const double hv = h.at(i, j);
      const double h0v = h0f.at(i, j);
      const double drop = (hv * hv - h0v * h0v) * potp[std::size_t(i)];
      const double twist = 2.0 * s.v * hv * (hp.at(i, j) - (hv / h0v) * h0p.at(i, j));
      const double u = (drop - twist) / hv;
      s.flux[std::size_t(j)] = u;
      p += u * chart.w[std::size_t(j)];
    }
    s.p = p;
    out[std::size_t(i)] = s;
  }
  return out;
}

}  // namespace rrm
