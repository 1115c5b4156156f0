// Shape operators, radial curvature formulas, and the finite-difference
// curvature oracle.

#include "rrmlab/curvature.hpp"

#include "rrmlab/errors.hpp"
#include "rrmlab/smallmat.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace rrm {

CurvatureBundle shape_bundle(const MetricFamily& fam) {
  const RadialGrid& grid = *fam.grid;
  const AngularChart& chart = *fam.chart;
  const int d = fam.dim(), np = fam.G.npack();
  const int nr = grid.nr, nodes = chart.nodes;

  CurvatureBundle b;
  b.grid = &grid;
  b.chart = &chart;
  b.dim = d;
  b.S = EndoField(d, nr, nodes);
  b.II = SymField(d, nr, nodes);
  b.H = Field(nr, nodes);
  b.s = EndoField(d, nr, nodes);
  b.s2 = Field(nr, nodes);
  b.S2 = Field(nr, nodes);

  for (int q = 0; q < np; ++q) b.II(q) = f_scale(fam.Gp(q), 0.5);

  double Gp_[6], Gi[6], Gif[9], Gpf[9], Sf[9], sf[9];
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nodes; ++j) {
      double Gpk[6];
      for (int q = 0; q < np; ++q) {
        Gp_[q] = fam.G(q).at(i, j);
        Gpk[q] = fam.Gp(q).at(i, j);
      }
      if (!sm::sym_inv(Gp_, d, Gi))
        throw RunError("singular metric sample at r = " + std::to_string(grid.r(i)) + ", node " +
                       std::to_string(j));
      sm::sym_unpack(Gi, d, Gif);
      sm::sym_unpack(Gpk, d, Gpf);
      sm::mat_mul(Gif, Gpf, d, Sf);
      for (int t = 0; t < d * d; ++t) Sf[t] *= 0.5;

      const double H = sm::mat_trace(Sf, d);
      for (int t = 0; t < d * d; ++t) sf[t] = Sf[t];
      for (int A = 0; A < d; ++A) sf[A * d + A] -= H / d;

      double s2 = 0, S2 = 0;
      for (int A = 0; A < d; ++A)
        for (int B = 0; B < d; ++B) {
          s2 += sf[A * d + B] * sf[B * d + A];
          S2 += Sf[A * d + B] * Sf[B * d + A];
        }
      for (int A = 0; A < d; ++A)
        for (int B = 0; B < d; ++B) {
          b.S.at(A, B).at(i, j) = Sf[A * d + B];
          b.s.at(A, B).at(i, j) = sf[A * d + B];
        }
      b.H.at(i, j) = H;
      b.s2.at(i, j) = s2;
      b.S2.at(i, j) = S2;
    }
  return b;
}

BackgroundShape background_shape(const BackgroundWarped& bg) {
  const int d = bg.chart->dim;
  BackgroundShape out;
  out.S0_ratio = f_div(bg.hp, bg.h);
  out.H0 = f_scale(out.S0_ratio, double(d));
  out.R0rr = f_scale(f_div(bg.hpp, bg.h), -double(d));
  return out;
}

Field radial_ricci(const CurvatureBundle& b) {
  Field Hp = ddr(b.H, *b.grid, 1);
  Field out(Hp.nr, Hp.nodes);
  // out = -(Hp + S2), grouped identically for foreground and background.
  Field sum = f_add(Hp, b.S2);
  kernels::scale(out.v.data(), sum.v.data(), -1.0, sum.size());
  return out;
}

EndoField mixed_radial_curvature(const CurvatureBundle& b) {
  const int d = b.dim;
  EndoField out(d, b.H.nr, b.H.nodes);
  std::vector<Field> Sp(std::size_t(d) * d);
  for (int t = 0; t < d * d; ++t) Sp[std::size_t(t)] = ddr(b.S.comp[std::size_t(t)], *b.grid, 1);
  for (int B = 0; B < d; ++B)
    for (int A = 0; A < d; ++A) {
      Field& dst = out.at(B, A);
      for (int i = 0; i < b.H.nr; ++i)
        for (int j = 0; j < b.H.nodes; ++j) {
          double ss = 0;  // (S.S)^B_A = S^B_C S^C_A
          for (int C = 0; C < d; ++C) ss += b.S.at(B, C).at(i, j) * b.S.at(C, A).at(i, j);
          dst.at(i, j) = -(Sp[std::size_t(B) * d + A].at(i, j) + ss);
        }
    }
  return out;
}

namespace {

// One radial stencil tap: value row offset and weight.
struct Tap {
  int off;
  double w;
};

using Taps = std::array<Tap, 5>;

// Stencils matching ddr: central interior, and at the boundary rows the
// one-sided stencils whose leading error equals the central one, keeping the
// truncation-error envelope smooth in r across the whole grid.
int radial_taps1(int i, int nr, double dr, Taps& t) {
  if (i == 0) {
    const double c = 1.0 / (2 * dr);
    t = {{{0, -4 * c}, {1, 7 * c}, {2, -4 * c}, {3, 1 * c}, {0, 0}}};
    return 4;
  }
  if (i == nr - 1) {
    const double c = 1.0 / (2 * dr);
    t = {{{0, 4 * c}, {-1, -7 * c}, {-2, 4 * c}, {-3, -1 * c}, {0, 0}}};
    return 4;
  }
  const double c = 1.0 / (2 * dr);
  t = {{{1, c}, {-1, -c}, {0, 0}, {0, 0}, {0, 0}}};
  return 2;
}

int radial_taps2(int i, int nr, double dr, Taps& t) {
  const double h2 = 1.0 / (dr * dr);
  if (i == 0) {
    t = {{{0, 3 * h2}, {1, -9 * h2}, {2, 10 * h2}, {3, -5 * h2}, {4, 1 * h2}}};
    return 5;
  }
  if (i == nr - 1) {
    t = {{{0, 3 * h2}, {-1, -9 * h2}, {-2, 10 * h2}, {-3, -5 * h2}, {-4, 1 * h2}}};
    return 5;
  }
  t = {{{1, h2}, {0, -2 * h2}, {-1, h2}, {0, 0}, {0, 0}}};
  return 3;
}

}  // namespace

OracleCurvature ricci_oracle(const MetricFamily& fam) {
  const RadialGrid& grid = *fam.grid;
  const AngularChart& chart = *fam.chart;
  if (chart.kind != ChartKind::periodic_box)
    throw ConfigError("curvature oracle supports periodic-box charts only");
  const int d = chart.dim, np = chart.npack();
  const int n = d + 1;
  const int nr = grid.nr, nodes = chart.nodes;

  OracleCurvature out;
  out.n = n;
  out.ricci = SymField(n, nr, nodes);
  out.mixed = EndoField(d, nr, nodes);

  std::vector<double> dx(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) dx[std::size_t(a)] = chart.spacing(a);

  const auto gq = [&](int q, int i, int j) { return fam.G(q).at(i, j); };

  // Per-point scratch: inverse metric, first and second derivatives, all as
  // full n x n row-major blocks over coordinates (r, x1..xd).
  double ginv[16];
  double dgf[4][16];       // dgf[c]
  double ddgf[4][4][16];   // ddgf[c][e], symmetric in (c, e)
  double gam[4][16];       // gam[l][i*n+j]
  double dgam[4][4][16];   // dgam[c][l][i*n+j]
  double dginv[4][16];

  Taps t1, t2;
  for (int i = 0; i < nr; ++i) {
    const int m1 = radial_taps1(i, nr, grid.dr, t1);
    const int m2 = radial_taps2(i, nr, grid.dr, t2);
    for (int j = 0; j < nodes; ++j) {
      // Packed derivative gathering for the G block.
      double dG[4][6];
      double ddG[4][4][6];
      for (int q = 0; q < np; ++q) {
        double acc = 0;
        for (int t = 0; t < m1; ++t) acc += t1[std::size_t(t)].w * gq(q, i + t1[std::size_t(t)].off, j);
        dG[0][q] = acc;
        acc = 0;
        for (int t = 0; t < m2; ++t) acc += t2[std::size_t(t)].w * gq(q, i + t2[std::size_t(t)].off, j);
        ddG[0][0][q] = acc;
        for (int a = 0; a < d; ++a) {
          const int jp = chart.neighbor(j, a, 1), jm = chart.neighbor(j, a, -1);
          dG[a + 1][q] = (gq(q, i, jp) - gq(q, i, jm)) / (2 * dx[std::size_t(a)]);
          ddG[a + 1][a + 1][q] =
              (gq(q, i, jp) - 2 * gq(q, i, j) + gq(q, i, jm)) /
              (dx[std::size_t(a)] * dx[std::size_t(a)]);
          // Mixed radial-angular: radial stencil applied to the angular diff.
          double mixed = 0;
          for (int t = 0; t < m1; ++t) {
            const int ii = i + t1[std::size_t(t)].off;
            mixed += t1[std::size_t(t)].w * (gq(q, ii, jp) - gq(q, ii, jm)) /
                     (2 * dx[std::size_t(a)]);
          }
          ddG[0][a + 1][q] = mixed;
          ddG[a + 1][0][q] = mixed;
          for (int bx = a + 1; bx < d; ++bx) {
            const int jpp = chart.neighbor(jp, bx, 1), jpm = chart.neighbor(jp, bx, -1);
            const int jmp = chart.neighbor(jm, bx, 1), jmm = chart.neighbor(jm, bx, -1);
            const double v = (gq(q, i, jpp) - gq(q, i, jpm) - gq(q, i, jmp) + gq(q, i, jmm)) /
                             (4 * dx[std::size_t(a)] * dx[std::size_t(bx)]);
            ddG[a + 1][bx + 1][q] = v;
            ddG[bx + 1][a + 1][q] = v;
          }
        }
      }

      // Assemble full-metric inverse blocks: g_00 = 1, g_0A = 0, g_AB = G_AB.
      double Gp_[6], Gi[6];
      for (int q = 0; q < np; ++q) Gp_[q] = gq(q, i, j);
      if (!sm::sym_inv(Gp_, d, Gi))
        throw RunError("oracle: singular metric sample at r = " + std::to_string(grid.r(i)));
      for (int t = 0; t < n * n; ++t) ginv[t] = 0;
      ginv[0] = 1;
      for (int A = 0; A < d; ++A)
        for (int B = 0; B < d; ++B) {
          const int q = A <= B ? sm::pack_index(d, A, B) : sm::pack_index(d, B, A);
          ginv[(A + 1) * n + (B + 1)] = Gi[q];
        }
      for (int c = 0; c < n; ++c) {
        for (int t = 0; t < n * n; ++t) dgf[c][t] = 0;
        for (int A = 0; A < d; ++A)
          for (int B = 0; B < d; ++B) {
            const int q = A <= B ? sm::pack_index(d, A, B) : sm::pack_index(d, B, A);
            dgf[c][(A + 1) * n + (B + 1)] = dG[c][q];
          }
        for (int e = 0; e < n; ++e) {
          for (int t = 0; t < n * n; ++t) ddgf[c][e][t] = 0;
          for (int A = 0; A < d; ++A)
            for (int B = 0; B < d; ++B) {
              const int q = A <= B ? sm::pack_index(d, A, B) : sm::pack_index(d, B, A);
              ddgf[c][e][(A + 1) * n + (B + 1)] = ddG[c][e][q];
            }
        }
      }

      // Christoffel symbols.
      for (int l = 0; l < n; ++l)
        for (int a = 0; a < n; ++a)
          for (int bb = a; bb < n; ++bb) {
            double acc = 0;
            for (int mm = 0; mm < n; ++mm)
              acc += ginv[l * n + mm] *
                     (dgf[a][bb * n + mm] + dgf[bb][a * n + mm] - dgf[mm][a * n + bb]);
            gam[l][a * n + bb] = 0.5 * acc;
            gam[l][bb * n + a] = 0.5 * acc;
          }

      // d(ginv)_c = -ginv dg_c ginv.
      for (int c = 0; c < n; ++c) {
        double tmp[16];
        sm::mat_mul(dgf[c], ginv, n, tmp);
        double tmp2[16];
        sm::mat_mul(ginv, tmp, n, tmp2);
        for (int t = 0; t < n * n; ++t) dginv[c][t] = -tmp2[t];
      }

      // Christoffel derivatives via the expanded product rule.
      for (int c = 0; c < n; ++c)
        for (int l = 0; l < n; ++l)
          for (int a = 0; a < n; ++a)
            for (int bb = a; bb < n; ++bb) {
              double acc = 0;
              for (int mm = 0; mm < n; ++mm) {
                acc += dginv[c][l * n + mm] *
                       (dgf[a][bb * n + mm] + dgf[bb][a * n + mm] - dgf[mm][a * n + bb]);
                acc += ginv[l * n + mm] * (ddgf[c][a][bb * n + mm] + ddgf[c][bb][a * n + mm] -
                                           ddgf[c][mm][a * n + bb]);
              }
              dgam[c][l][a * n + bb] = 0.5 * acc;
              dgam[c][l][bb * n + a] = 0.5 * acc;
            }

      // Ricci R_jk = dGam_i Gam^i_{kj} - dGam_k Gam^i_{ij} + Gam Gam terms.
      for (int jj = 0; jj < n; ++jj)
        for (int kk = jj; kk < n; ++kk) {
          double acc = 0;
          for (int ii = 0; ii < n; ++ii) {
            acc += dgam[ii][ii][kk * n + jj] - dgam[kk][ii][ii * n + jj];
            for (int mm = 0; mm < n; ++mm)
              acc += gam[ii][ii * n + mm] * gam[mm][kk * n + jj] -
                     gam[ii][kk * n + mm] * gam[mm][ii * n + jj];
          }
          out.ricci(sm::pack_index(n, jj, kk)).at(i, j) = acc;
        }

      // Mixed components R^B_{rAr}.
      for (int B = 0; B < d; ++B)
        for (int A = 0; A < d; ++A) {
          const int lb = B + 1, la = A + 1;
          double acc = dgam[la][lb][0] - dgam[0][lb][la * n + 0];
          for (int mm = 0; mm < n; ++mm)
            acc += gam[lb][la * n + mm] * gam[mm][0] - gam[lb][0 * n + mm] * gam[mm][la * n + 0];
          out.mixed.at(B, A).at(i, j) = acc;
        }
    }
  }
  return out;
}

}  // namespace rrm
