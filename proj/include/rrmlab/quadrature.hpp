#pragma once
// Adaptive quadrature on finite intervals and on [a, +inf), with divergence
// detection for the improper case.

#include <functional>

namespace rrm {

struct QuadResult {
  double value = 0;
  double err_est = 0;
  bool converged = false;
  long evals = 0;
};

// Adaptive Simpson refinement until the local error estimate meets tol.
QuadResult quad_adaptive(const std::function<double(double)>& f, double a, double b,
                         double tol = 1e-12);

// Integral over [a, +inf): doubling segments [a+2^k-1, a+2^(k+1)-1] summed
// until they decay, plus a geometric tail estimate.  converged=false flags a
// divergent or too-slowly-decaying integral.
QuadResult quad_to_infinity(const std::function<double(double)>& f, double a, double tol = 1e-12);

}  // namespace rrm
