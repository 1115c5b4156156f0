// Adaptive Simpson quadrature and the doubling-segment improper integral.

#include "rrmlab/quadrature.hpp"

#include "rrmlab/errors.hpp"

#include <cmath>
#include <string>

namespace rrm {
namespace {

struct Ctx {
  const std::function<double(double)>& f;
  long evals = 0;
  bool depth_ok = true;

  double eval(double x) {
    ++evals;
    const double v = f(x);
    if (std::isnan(v)) throw RunError("quadrature: integrand is NaN at x = " + std::to_string(x));
    return v;
  }
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(Ctx& c, double a, double b, double fa, double fm, double fb, double S, double tol,
             int depth, double& err_acc) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = c.eval(lm), frm = c.eval(rm);
  const double Sl = simpson(a, m, fa, flm, fm);
  const double Sr = simpson(m, b, fm, frm, fb);
  const double delta = Sl + Sr - S;
  if (depth <= 0) {
    c.depth_ok = false;
    err_acc += std::fabs(delta);
    return Sl + Sr;
  }
  if (std::fabs(delta) <= 15.0 * tol) {
    err_acc += std::fabs(delta) / 15.0;
    return Sl + Sr + delta / 15.0;
  }
  return adapt(c, a, m, fa, flm, fm, Sl, tol * 0.5, depth - 1, err_acc) +
         adapt(c, m, b, fm, frm, fb, Sr, tol * 0.5, depth - 1, err_acc);
}

}  // namespace

QuadResult quad_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw RunError("quad_adaptive: interval bounds must be finite");
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  Ctx c{f};
  const double fa = c.eval(a), fb = c.eval(b), fm = c.eval(0.5 * (a + b));
  const double S = simpson(a, b, fa, fm, fb);
  double err = 0;
  out.value = adapt(c, a, b, fa, fm, fb, S, std::fabs(tol), 48, err);
  out.err_est = err;
  out.evals = c.evals;
  out.converged = c.depth_ok && std::isfinite(out.value);
  return out;
}

QuadResult quad_to_infinity(const std::function<double(double)>& f, double a, double tol) {
  QuadResult out;
  double lo = a, len = 1.0;
  double prev = 0;
  int small_in_a_row = 0;
  const int kMaxSegments = 220;
  for (int k = 0; k < kMaxSegments; ++k) {
    const double seg_tol = std::fabs(tol) / std::min(60.0, 4.0 + k);
    QuadResult seg = quad_adaptive(f, lo, lo + len, seg_tol);
    out.evals += seg.evals;
    out.err_est += seg.err_est;
    if (!seg.converged) return out;  // converged stays false
    out.value += seg.value;
    if (!std::isfinite(out.value) || std::fabs(out.value) > 1e30) return out;

    const double mag = std::fabs(seg.value);
    if (k > 0 && mag <= std::fabs(tol) / 8.0 && mag <= std::fabs(prev) * 0.9) {
      if (++small_in_a_row >= 2) {
        // Geometric tail estimate from the decay ratio of the last segments.
        const double ratio = std::fabs(prev) > 0 ? mag / std::fabs(prev) : 0.0;
        if (ratio < 0.95) {
          const double tail = mag * ratio / (1.0 - ratio);
          out.value += tail;
          out.err_est += tail;
          out.converged = true;
          return out;
        }
        small_in_a_row = 0;
      }
    } else {
      small_in_a_row = 0;
    }
    prev = seg.value;
    lo += len;
    len *= 2.0;
  }
  return out;  // ran out of segments: treated as divergent
}

}  // namespace rrm
