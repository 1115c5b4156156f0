#pragma once
// Level-set shape data (shape operator, second fundamental form, mean
// curvature, trace-free part), background shape identities, the radial Ricci
// trace, and an independent full-curvature finite-difference oracle.

#include "rrmlab/field.hpp"
#include "rrmlab/grid.hpp"
#include "rrmlab/metric.hpp"

namespace rrm {

struct CurvatureBundle {
  const RadialGrid* grid = nullptr;
  const AngularChart* chart = nullptr;
  int dim = 0;
  EndoField S;   // S^B_A = half G^{BC} G'_{AC}; entry at(B, A)
  SymField II;   // half G'
  Field H;       // Tr S
  EndoField s;   // S - H/(n-1) I
  Field s2;      // Tr(s s)
  Field S2;      // Tr(S S)
};

CurvatureBundle shape_bundle(const MetricFamily& fam);

// Background shape data from the warp-factor samples.  The background shape
// operator is (h'/h) I, so its ratio field stands in for the endomorphism.
struct BackgroundShape {
  Field H0;        // (n-1) h'/h
  Field R0rr;      // -(n-1) h''/h
  Field S0_ratio;  // h'/h
};

BackgroundShape background_shape(const BackgroundWarped& bg);

// Radial Ricci trace -ddr(H) - |S|^2 per grid point.
Field radial_ricci(const CurvatureBundle& b);

// Mixed radial curvature -ddr(S) - S.S per grid point; entry at(B, A).
EndoField mixed_radial_curvature(const CurvatureBundle& b);

// Independent curvature oracle: assembles the full metric dr^2 + G, computes
// Christoffel symbols by finite differences in every coordinate, and builds
// Ricci and the mixed radial components from the curvature tensor.  Periodic
// boxes only (tangential differences need wrap-around).
struct OracleCurvature {
  int n = 0;        // total dimension 1 + dim
  SymField ricci;   // packed n x n over coordinates (r, x1..xd)
  EndoField mixed;  // R^B_{rAr}; entry at(B, A)

  const Field& rrr() const { return ricci(0); }
};

OracleCurvature ricci_oracle(const MetricFamily& fam);

}  // namespace rrm
