// Integral inequality reports with equality-case detection, model preset
// corollaries, minimal-boundary masses, and mass monotonicity checks.
#pragma once

#include "mass.hpp"

namespace rrm {

// Where the foreground radial Ricci curvature comes from: the radial-gauge
// formula -H' - |S|^2, or the finite-difference coordinate oracle.
enum class RrrSource { radial, oracle };

struct TheoremVerdicts {
  bool inequality_holds = false;
  bool is_warped_product = false;
  bool equals_background = false;
  // -1 none, 0 inner endpoint, 1 outer endpoint, 2 both: where the family
  // is asymptotic to the background within the equality tolerance.
  int asymptotic_at = -1;
};

struct TheoremReport {
  double lhs = 0;           // M at the outer row minus M at the inner row
  double rhs = 0;           // integral of h^2 (Rrr - R0rr)
  double defect = 0;        // integral of m^2/((n-1)h^2) + h^2 |s|^2
  double identity_gap = 0;  // lhs - rhs - defect, O(dr^2)
  double equality_tol = 0;  // max(1e-8, 10 dr^2 (sup|m| + sup|s|^2))
  double warp_deviation = 0;
  double background_gap = 0;
  double model_r0rr = 0;  // preset suite only: the model curvature constant
  double model_r0rr_err = 0;
  bool has_model = false;
  TheoremVerdicts verdicts;
};

TheoremReport theorem_report(const MetricFamily& fam, const BackgroundWarped& bg,
                             RrrSource source = RrrSource::radial);

struct WarpedDeviation {
  bool is_warped_product = false;
  double deviation = 0;       // sup over the grid of || d/dr (h^-2 G) ||_Ghat
  double background_gap = 0;  // sup of || h^-2 G - Ghat ||_Ghat
};

WarpedDeviation warped_product_detector(const MetricFamily& fam,
                                        const BackgroundWarped& bg, double tol);

// theorem_report against the named model background built on the family's
// grid; the report carries the model's constant radial curvature -(n-1), 0,
// 0, +(n-1) and the sup deviation of the computed background curvature.
TheoremReport model_preset_suite(BackgroundPreset model, double k, const MetricFamily& fam);

struct MinimalBoundaryReport {
  bool applicable = false;   // mean curvature vanishes at the endpoint
  double mean_curv_sup = 0;  // sup |H| over the endpoint fiber
  double value = 0;          // (n-1) h h' mu at the endpoint
  double computed_M = 0;     // fiber integral of m there
  double gap = 0;            // |value - computed_M|
};

// endpoint: 0 for the inner grid row, 1 for the outer.
MinimalBoundaryReport minimal_boundary_mass(const MassField& mf, const CurvatureBundle& b,
                                            const BackgroundWarped& bg, int endpoint,
                                            double tol);

struct MonotonicityReport {
  bool monotone = true;   // no gated fiber drops below -tol
  int gated_fibers = 0;   // fibers with Rrr >= R0rr - tol everywhere
  int skipped_fibers = 0;
  int violation_i = -1;   // first violation, -1 if none
  int violation_j = -1;
  double worst_drop = 0;  // most negative dm/dr over gated fibers
};

MonotonicityReport monotonicity_check(const MassField& mf, const Field& rrr,
                                      const Field& r0rr, const RadialGrid& grid,
                                      double tol);

}  // namespace rrm
