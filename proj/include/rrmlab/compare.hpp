#pragma once
// Hawking mass of the radial cross-sections, its comparison against the fiber
// mass integral, and the 2D static-potential boundary flux whose circle
// integral tracks three times the fiber mass.

#include <cmath>
#include <vector>

#include "curvature.hpp"
#include "mass.hpp"
#include "metric.hpp"

namespace rrm {

// One cross-section: induced area, the squared-mean-curvature integral
// against the induced measure, and the mass those two values determine.
struct HawkingSample {
  double r = 0;
  double area = 0;
  double h2_integral = 0;
  double m_h = 0;
};

// Shared so callers can reproduce m_h from the stored fields bit for bit.
inline double hawking_from(double area, double h2_integral) {
  constexpr double k16pi = 16.0 * 3.14159265358979323846;
  return std::sqrt(area) / (k16pi * std::sqrt(k16pi)) * (k16pi - h2_integral);
}

// m_h per radial sample from the induced section measure (chart weight times
// sqrt(det G / det Ghat)) and the mean curvature of the bundle, which must
// come from the same family.  Sections must be two dimensional (n = 3).
std::vector<HawkingSample> hawking_mass(const MetricFamily& fam, const CurvatureBundle& b);

// One comparison row; ratio = M / (8*pi*m_h), NaN when the denominator
// vanishes.
struct HawkingRow {
  double r = 0;
  double mass_integral = 0;
  double eight_pi_mh = 0;
  double ratio = 0;
};

// Table only, no verdict: the asymptotic relation M = 8*pi*m_H + o(1) needs
// decay hypotheses on the area expansion that the caller must judge.
// Requires n = 3 over the flat-cone background h = r.
std::vector<HawkingRow> hawking_vs_radial(const MetricFamily& fam, const BackgroundWarped& bg);

// Boundary flux of the static-potential field at one radius.
struct FluxSample {
  double r = 0;
  std::vector<double> flux;
  double p = 0;
  double v = 0;
};

// flux = h^-1 [(h^2 - h0^2) V' - 2V (h h' - h^2 h0'/h0)] per node and
// p = its integral over the circle, with the potential V defaulting to h0.
// Needs a 1-axis chart over the exponential background h0 = e^r + k e^-r;
// h must stay positive.  h = h0 gives an exactly zero flux: every term is
// a difference of identically computed quantities.
std::vector<FluxSample> ch_flux(const Field& h, const BackgroundWarped& bg,
                                const std::vector<double>& V = {});

}  // namespace rrm
