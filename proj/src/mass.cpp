// Mass densities and identity residuals assembled from shape bundles.
#include "rrmlab/mass.hpp"

#include <algorithm>
#include <cmath>

#include "rrmlab/smallmat.hpp"

namespace rrm {

namespace {

// h^(3-n) without pow() in the common exactly-representable cases.
double warp_power(double h, int n) {
  if (n == 3) return 1.0;
  if (n == 2) return h;
  return 1.0 / h;  // n == 4
}

std::vector<double> fiber_integrals(const Field& m, const AngularChart& chart) {
  return integrate_N(m, chart);
}

void finish_report(ResidualReport& rep, const RadialGrid& grid, const AngularChart& chart) {
  const int nr = rep.residual.nr, nodes = rep.residual.nodes;
  Field absres(nr, nodes);
  rep.row_sup.assign(std::size_t(nr), 0.0);
  for (int i = 0; i < nr; ++i) {
    double s = 0;
    for (int j = 0; j < nodes; ++j) {
      const double a = std::fabs(rep.residual.at(i, j));
      absres.at(i, j) = a;
      s = std::max(s, a);
    }
    rep.row_sup[std::size_t(i)] = s;
    rep.sup = std::max(rep.sup, s);
  }
  rep.row_l1 = integrate_N(absres, chart);
  rep.l1 = 0;
  for (int i = 0; i < nr; ++i) {
    const double w = (i == 0 || i == nr - 1) ? grid.dr / 2 : grid.dr;
    rep.l1 += w * rep.row_l1[std::size_t(i)];
  }
}

}  // namespace

MassField radial_mass(const CurvatureBundle& b, const CurvatureBundle& b0,
                      const BackgroundWarped& bg) {
  if (!b.H.same_shape(b0.H)) throw RunError("radial_mass: bundle shapes differ");
  MassField out;
  out.m = Field(b.H.nr, b.H.nodes);
  for (int i = 0; i < b.H.nr; ++i)
    for (int j = 0; j < b.H.nodes; ++j) {
      const double h = bg.h_at(i, j);
      // Difference first: an unperturbed family gives an exact zero.
      out.m.at(i, j) = (h * h) * (b0.H.at(i, j) - b.H.at(i, j));
    }
  out.M = fiber_integrals(out.m, *b.chart);
  return out;
}

Field radial_mass_det(const MetricFamily& fam, const BackgroundWarped& bg) {
  const int nr = fam.G.nr(), nodes = fam.G.nodes(), d = fam.dim();
  Field lg(nr, nodes);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nodes; ++j) {
      double p0[6], p1[6];
      for (int q = 0; q < fam.G.npack(); ++q) {
        p0[q] = bg.g0.G(q).at(i, j);
        p1[q] = fam.G(q).at(i, j);
      }
      const double det0 = sm::sym_det(p0, d), det1 = sm::sym_det(p1, d);
      if (!(det0 > 0) || !(det1 > 0))
        throw RunError("radial_mass_det: non-positive determinant at r = " +
                       std::to_string(fam.grid->r(i)));
      lg.at(i, j) = std::log(det0) - std::log(det1);
    }
  Field dlg = ddr(lg, *fam.grid, 1);
  Field m(nr, nodes);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nodes; ++j) {
      const double h = bg.h_at(i, j);
      m.at(i, j) = (h * h / 2) * dlg.at(i, j);
    }
  return m;
}

MassField mass_2d(const MetricFamily& fam, const BackgroundWarped& bg) {
  if (fam.dim() != 1) throw ConfigError("mass_2d needs a one-dimensional fiber");
  const int nr = fam.G.nr(), nodes = fam.G.nodes();
  Field lg(nr, nodes);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nodes; ++j) {
      const double g11 = fam.G(0).at(i, j), g011 = bg.g0.G(0).at(i, j);
      if (!(g11 > 0) || !(g011 > 0))
        throw RunError("mass_2d: non-positive fiber metric at r = " +
                       std::to_string(fam.grid->r(i)));
      lg.at(i, j) = std::log(g11) - std::log(g011);
    }
  Field dlg = ddr(lg, *fam.grid, 1);
  MassField out;
  out.m = Field(nr, nodes);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nodes; ++j) {
      const double h = bg.h_at(i, j);
      out.m.at(i, j) = -(h * h / 2) * dlg.at(i, j);
    }
  out.M = fiber_integrals(out.m, *fam.chart);
  return out;
}

Field divergence_field(const CurvatureBundle& b, const CurvatureBundle& b0,
                       const BackgroundWarped& bg) {
  const int n = bg.n();
  Field u(b.H.nr, b.H.nodes);
  for (int i = 0; i < b.H.nr; ++i)
    for (int j = 0; j < b.H.nodes; ++j)
      u.at(i, j) = warp_power(bg.h_at(i, j), n) * (b.H.at(i, j) - b0.H.at(i, j));
  return u;
}

ResidualReport riccati_residual(const Field& m, const Field& rrr, const Field& r0rr,
                                const Field& s2, const BackgroundWarped& bg) {
  const int n = bg.n();
  ResidualReport rep;
  Field dm = ddr(m, *bg.grid, 1);
  rep.residual = Field(m.nr, m.nodes);
  for (int i = 0; i < m.nr; ++i)
    for (int j = 0; j < m.nodes; ++j) {
      const double h = bg.h_at(i, j), h2 = h * h, mv = m.at(i, j);
      rep.residual.at(i, j) = dm.at(i, j) - h2 * (rrr.at(i, j) - r0rr.at(i, j)) -
                              mv * mv / ((n - 1) * h2) - h2 * s2.at(i, j);
    }
  finish_report(rep, *bg.grid, *bg.chart);
  return rep;
}

ResidualReport divergence_residual(const Field& u, const Field& rrr, const Field& r0rr,
                                   const Field& s2, const CurvatureBundle& b0,
                                   const BackgroundWarped& bg) {
  const int n = bg.n();
  ResidualReport rep;
  Field du = ddr(u, *bg.grid, 1);
  rep.residual = Field(u.nr, u.nodes);
  for (int i = 0; i < u.nr; ++i)
    for (int j = 0; j < u.nodes; ++j) {
      const double w = warp_power(bg.h_at(i, j), n), uv = u.at(i, j);
      rep.residual.at(i, j) = (-du.at(i, j) - b0.H.at(i, j) * uv) -
                              w * (rrr.at(i, j) - r0rr.at(i, j)) -
                              uv * uv / (w * (n - 1)) - w * s2.at(i, j);
    }
  finish_report(rep, *bg.grid, *bg.chart);
  return rep;
}

Field gauss_curvature(const MetricFamily& fam) {
  Field h = family_h_2d(fam);
  Field hpp = ddr(h, *fam.grid, 2);
  Field K(h.nr, h.nodes);
  for (int i = 0; i < h.nr; ++i)
    for (int j = 0; j < h.nodes; ++j) K.at(i, j) = -hpp.at(i, j) / h.at(i, j);
  return K;
}

Field gauss_curvature_bg(const BackgroundWarped& bg) {
  const int nr = bg.grid->nr, nodes = bg.chart->nodes;
  Field K(nr, nodes);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nodes; ++j) K.at(i, j) = -bg.hpp_at(i, j) / bg.h_at(i, j);
  return K;
}

}  // namespace rrm
