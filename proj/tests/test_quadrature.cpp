// Adaptive quadrature: finite intervals, improper integrals, divergence.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rrmlab/quadrature.hpp"
#include "rrmlab/errors.hpp"

#include <cmath>

using namespace rrm;

TEST_CASE("finite intervals") {
  auto r = quad_adaptive([](double x) { return x * x; }, 0, 1);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0 / 3).epsilon(1e-13));

  r = quad_adaptive([](double x) { return std::sin(x); }, 0, 3.14159265358979323846);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));

  r = quad_adaptive([](double x) { return std::exp(-x * x); }, -8, 8);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::sqrt(3.14159265358979323846)).epsilon(1e-12));

  r = quad_adaptive([](double) { return 7.0; }, 2, 2);
  CHECK(r.converged);
  CHECK(r.value == 0.0);

  CHECK(quad_adaptive([](double) { return 1.0; }, 0, 1).evals > 0);
  CHECK_THROWS_AS(quad_adaptive([](double) { return std::nan(""); }, 0, 1), RunError);
}

TEST_CASE("improper integrals converge") {
  auto r = quad_to_infinity([](double s) { return std::exp(-2 * s); }, 0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-11));

  r = quad_to_infinity([](double s) { return 1.0 / (s * s); }, 1);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));

  r = quad_to_infinity([](double s) { return 1.0 / (1 + s * s); }, 0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(3.14159265358979323846 / 2).epsilon(1e-9));

  // Tail of the reciprocal square of a hyperbolic-type profile.
  auto h = [](double s) { double v = std::exp(s) + 0.5 * std::exp(-s); return 1.0 / (v * v); };
  r = quad_to_infinity(h, 2.0);
  CHECK(r.converged);
  // Analytic: integral of 1/h^2 from 2 with h = e^r + k e^-r, k = 0.5:
  // F(r) = e^-2r / (2 (1 + k e^-2r)).
  const double k = 0.5;
  const double want = std::exp(-4.0) / (2 * (1 + k * std::exp(-4.0)));
  CHECK(r.value == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("divergent improper integrals are flagged") {
  CHECK_FALSE(quad_to_infinity([](double) { return 1.0; }, 0).converged);
  CHECK_FALSE(quad_to_infinity([](double s) { return 1.0 / (1 + s); }, 0).converged);
  CHECK_FALSE(quad_to_infinity([](double s) { return 1.0 / std::sqrt(1 + s); }, 0).converged);
}
