// Relative radial mass fields, their fiber integrals, and the first-order
// identity residuals (Riccati and divergence form) that validate them.
#pragma once

#include <vector>

#include "curvature.hpp"
#include "metric.hpp"

namespace rrm {

// Pointwise mass density m on (r, N) plus its fiber integral per radial row.
struct MassField {
  Field m;
  std::vector<double> M;
};

// m = h^2 (H0 - H), fiber-integrated against the reference measure.
// Both bundles must come from the same pipeline so that an unperturbed
// family yields an exactly zero field.
MassField radial_mass(const CurvatureBundle& b, const CurvatureBundle& b0,
                      const BackgroundWarped& bg);

// Determinant form of the same quantity: (h^2/2) d/dr log(det G0 / det G).
Field radial_mass_det(const MetricFamily& fam, const BackgroundWarped& bg);

// 2D log-ratio form -(h0^2/2) d/dr (log G_11 - log G0_11); equals the
// determinant form when the fiber is one dimensional.
MassField mass_2d(const MetricFamily& fam, const BackgroundWarped& bg);

// u = h^{3-n} (H - H0), the flux potential whose reference divergence
// reproduces the mass identity without an explicit m' term.
Field divergence_field(const CurvatureBundle& b, const CurvatureBundle& b0,
                       const BackgroundWarped& bg);

// Residual field with per-row sup / fiber-L1 norms and global aggregates.
struct ResidualReport {
  Field residual;
  std::vector<double> row_sup, row_l1;
  double sup = 0;
  double l1 = 0;
};

// residual = dm/dr - h^2 (rrr - r0rr) - m^2 / ((n-1) h^2) - h^2 s2.
// In two dimensions pass the Gauss curvatures as rrr / r0rr and a zero s2.
ResidualReport riccati_residual(const Field& m, const Field& rrr, const Field& r0rr,
                                const Field& s2, const BackgroundWarped& bg);

// residual = (-du/dr - H0 u) - h^{3-n} (rrr - r0rr) - u^2 h^{n-3} / (n-1)
//            - h^{3-n} s2, the divergence form of the same identity.
ResidualReport divergence_residual(const Field& u, const Field& rrr, const Field& r0rr,
                                   const Field& s2, const CurvatureBundle& b0,
                                   const BackgroundWarped& bg);

// Gauss curvature K = -h'' / h of a 2D family from its fiber radius, and of
// the background from its warp samples.
Field gauss_curvature(const MetricFamily& fam);
Field gauss_curvature_bg(const BackgroundWarped& bg);

}  // namespace rrm
