// Radial grids, angular charts, quadrature weights, finite differences,
// and cross-section integration.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rrmlab/grid.hpp"
#include "rrmlab/smallmat.hpp"

#include <cmath>

using namespace rrm;

namespace {
constexpr double kPi = 3.14159265358979323846;

ChartSpec circle(int res) {
  ChartSpec s;
  s.res = {res};
  return s;
}

ChartSpec torus(int r0, int r1) {
  ChartSpec s;
  s.res = {r0, r1};
  return s;
}

double max_err(const std::vector<double>& got, const std::vector<double>& want) {
  double m = 0;
  for (std::size_t i = 0; i < got.size(); ++i) m = std::max(m, std::fabs(got[i] - want[i]));
  return m;
}

}  // namespace

TEST_CASE("radial grid samples both endpoints") {
  RadialGrid g = build_radial_grid(0.5, 2.5, 401);
  CHECK(g.nr == 401);
  CHECK(g.r(0) == 0.5);
  CHECK(g.r(400) == 2.5);
  CHECK(g.dr == doctest::Approx(2.0 / 400));
  CHECK(g.r(200) == doctest::Approx(1.5));
}

TEST_CASE("radial inset keeps samples strictly inside an open interval") {
  const double pi = 3.14159265358979323846;
  RadialGrid g = build_radial_grid(0.0, pi, 101, 0.01);
  CHECK(g.r(0) == 0.01);
  CHECK(g.r(100) == doctest::Approx(pi - 0.01).epsilon(1e-15));
  CHECK(g.dr == doctest::Approx((pi - 0.02) / 100));
  CHECK(g.inset == 0.01);
}

TEST_CASE("radial grid rejects bad parameters") {
  CHECK_THROWS_AS(build_radial_grid(1.0, 1.0, 401), ConfigError);
  CHECK_THROWS_AS(build_radial_grid(2.0, 1.0, 401), ConfigError);
  CHECK_THROWS_AS(build_radial_grid(0.0, 1.0, 4), ConfigError);
  CHECK_THROWS_AS(build_radial_grid(0.0, std::nan(""), 401), ConfigError);
  CHECK_THROWS_AS(build_radial_grid(0.0, 1.0, 11, -0.1), ConfigError);
  CHECK_THROWS_AS(build_radial_grid(0.0, 1.0, 11, 0.5), ConfigError);
}

TEST_CASE("first derivative is exact on quadratics including boundary rows") {
  RadialGrid g = build_radial_grid(-1.0, 2.0, 31);
  std::vector<double> f(31), want(31);
  for (int i = 0; i < 31; ++i) {
    const double r = g.r(i);
    f[i] = 2 * r * r - r + 3;
    want[i] = 4 * r - 1;
  }
  CHECK(max_err(ddr(f, g, 1), want) <= 1e-13);
}

TEST_CASE("second derivative is exact on cubics including boundary rows") {
  RadialGrid g = build_radial_grid(0.0, 3.0, 25);
  std::vector<double> f(25), want(25);
  for (int i = 0; i < 25; ++i) {
    const double r = g.r(i);
    f[i] = r * r * r - 4 * r * r + r;
    want[i] = 6 * r - 8;
  }
  CHECK(max_err(ddr(f, g, 2), want) <= 1e-11);
}

TEST_CASE("finite differences converge at second order on smooth data") {
  auto err_at = [](int nr, int order) {
    RadialGrid g = build_radial_grid(0.0, 2.0, nr);
    std::vector<double> f(static_cast<std::size_t>(nr));
    std::vector<double> want(static_cast<std::size_t>(nr));
    for (int i = 0; i < nr; ++i) {
      const double r = g.r(i);
      f[std::size_t(i)] = std::sin(r);
      want[std::size_t(i)] = order == 1 ? std::cos(r) : -std::sin(r);
    }
    return max_err(ddr(f, g, order), want);
  };
  for (int order : {1, 2}) {
    const double e1 = err_at(201, order);
    const double e2 = err_at(401, order);
    const double ratio = e1 / e2;
    CAPTURE(order);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.6);
  }
}

TEST_CASE("field ddr matches the per-column stencil") {
  RadialGrid g = build_radial_grid(0.0, 1.0, 11);
  AngularChart chart = build_chart(circle(8));
  Field f(g.nr, chart.nodes);
  for (int i = 0; i < g.nr; ++i)
    for (int j = 0; j < chart.nodes; ++j)
      f.at(i, j) = std::exp(0.3 * g.r(i)) * (1 + 0.1 * j);
  for (int order : {1, 2}) {
    Field d = ddr(f, g, order);
    for (int j = 0; j < chart.nodes; ++j) {
      std::vector<double> col(std::size_t(g.nr));
      for (int i = 0; i < g.nr; ++i) col[std::size_t(i)] = f.at(i, j);
      auto dc = ddr(col, g, order);
      for (int i = 0; i < g.nr; ++i) CHECK(d.at(i, j) == dc[std::size_t(i)]);  // bitwise
    }
  }
  CHECK_THROWS_AS(ddr(f, g, 3), RunError);
}

TEST_CASE("circle and torus weights reproduce coordinate volume") {
  AngularChart s1 = build_chart(circle(128));
  CHECK(std::fabs(s1.mu - 2 * kPi) <= 1e-12);
  AngularChart t2 = build_chart(torus(32, 48));
  CHECK(std::fabs(t2.mu - 4 * kPi * kPi) <= 1e-11);

  ChartSpec boxed = torus(16, 16);
  boxed.period = {1.0, 3.0};
  AngularChart t2p = build_chart(boxed);
  CHECK(std::fabs(t2p.mu - 3.0) <= 1e-13);
}

TEST_CASE("latlong sphere weights are cell-exact") {
  ChartSpec s;
  s.kind = ChartKind::latlong_sphere;
  s.res = {64, 128};
  AngularChart c = build_chart(s);
  CHECK(c.nodes == 64 * 128);
  CHECK(std::fabs(c.mu - 4 * kPi) <= 1e-6);
  CHECK(std::fabs(c.mu - 4 * kPi) <= 1e-12);  // exact rule, not just within spec tolerance

  ChartSpec coarse;
  coarse.kind = ChartKind::latlong_sphere;
  coarse.res = {8, 8};
  CHECK(std::fabs(build_chart(coarse).mu - 4 * kPi) <= 1e-12);
}

TEST_CASE("chart metric scale multiplies weights exactly") {
  ChartSpec unit = torus(16, 16);
  ChartSpec quarter = torus(16, 16);
  quarter.scale = 0.25;
  AngularChart a = build_chart(unit);
  AngularChart b = build_chart(quarter);
  // d=2: sqrt(det(0.25 I)) = 0.25, a power of two, so scaling is bitwise.
  CHECK(b.mu == 0.25 * a.mu);

  ChartSpec sph;
  sph.kind = ChartKind::latlong_sphere;
  sph.res = {16, 16};
  sph.scale = 4.0;
  CHECK(build_chart(sph).mu == doctest::Approx(16 * kPi).epsilon(1e-14));
}

TEST_CASE("constant and expression chart metrics") {
  ChartSpec s = torus(8, 8);
  s.ghat = {"2", "0.5", "3"};
  AngularChart c = build_chart(s);
  const double det = 2 * 3 - 0.5 * 0.5;
  for (int j = 0; j < c.nodes; ++j) {
    CHECK(c.sqrt_det[std::size_t(j)] == doctest::Approx(std::sqrt(det)));
    // ghat * ghat_inv = identity
    double full[4], inv[4], prod[4];
    sm::sym_unpack(c.ghat_at(j), 2, full);
    sm::sym_unpack(c.ghat_inv_at(j), 2, inv);
    sm::mat_mul(full, inv, 2, prod);
    CHECK(prod[0] == doctest::Approx(1.0));
    CHECK(prod[1] == doctest::Approx(0.0));
    CHECK(prod[3] == doctest::Approx(1.0));
  }

  ChartSpec v = torus(16, 16);
  v.ghat = {"2+0.1*sin(x1)", "0", "1+0.05*cos(x2)"};
  AngularChart cv = build_chart(v);
  CHECK(cv.mu > 0);

  ChartSpec bad = torus(8, 8);
  bad.ghat = {"-1", "0", "1"};
  CHECK_THROWS_AS(build_chart(bad), ConfigError);

  ChartSpec rdep = torus(8, 8);
  rdep.ghat = {"1+r", "0", "1"};
  CHECK_THROWS_AS(build_chart(rdep), ExprError);
}

TEST_CASE("chart validation errors") {
  ChartSpec s;
  s.kind = ChartKind::latlong_sphere;
  s.res = {64};
  CHECK_THROWS_AS(build_chart(s), ConfigError);
  s.res = {64, 128};
  s.ghat = {"1", "0", "1"};
  CHECK_THROWS_AS(build_chart(s), ConfigError);

  ChartSpec tiny = circle(7);
  CHECK_THROWS_AS(build_chart(tiny), ConfigError);
  ChartSpec many;
  many.res = {8, 8, 8, 8};
  CHECK_THROWS_AS(build_chart(many), ConfigError);
  ChartSpec mismatched = torus(8, 8);
  mismatched.period = {1.0};
  CHECK_THROWS_AS(build_chart(mismatched), ConfigError);
}

TEST_CASE("periodic neighbors wrap") {
  AngularChart s1 = build_chart(circle(8));
  CHECK(s1.neighbor(0, 0, -1) == 7);
  CHECK(s1.neighbor(7, 0, 1) == 0);
  AngularChart t2 = build_chart(torus(8, 16));
  // node (p, q) = p*16 + q
  CHECK(t2.neighbor(0, 0, -1) == 7 * 16);
  CHECK(t2.neighbor(0, 1, -1) == 15);
  CHECK(t2.neighbor(3 * 16 + 15, 1, 1) == 3 * 16);
}

TEST_CASE("chart derivatives converge and reject latlong") {
  auto err_at = [](int res) {
    AngularChart c = build_chart(circle(res));
    RadialGrid g = build_radial_grid(0.0, 1.0, 5);
    Field f(g.nr, c.nodes);
    for (int i = 0; i < g.nr; ++i)
      for (int j = 0; j < c.nodes; ++j) f.at(i, j) = std::sin(c.x(j)[0]);
    Field d = dchart(f, c, 0);
    double m = 0;
    for (int j = 0; j < c.nodes; ++j) m = std::max(m, std::fabs(d.at(2, j) - std::cos(c.x(j)[0])));
    return m;
  };
  const double ratio = err_at(64) / err_at(128);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);

  AngularChart t2 = build_chart(torus(64, 64));
  RadialGrid g = build_radial_grid(0.0, 1.0, 5);
  Field f(g.nr, t2.nodes);
  for (int i = 0; i < g.nr; ++i)
    for (int j = 0; j < t2.nodes; ++j)
      f.at(i, j) = std::sin(t2.x(j)[0]) * std::cos(t2.x(j)[1]);
  Field dxy = dchart2(f, t2, 0, 1);
  double m = 0;
  for (int j = 0; j < t2.nodes; ++j)
    m = std::max(m, std::fabs(dxy.at(2, j) + std::cos(t2.x(j)[0]) * std::sin(t2.x(j)[1])));
  CHECK(m <= 5e-3);
  Field dxx = dchart2(f, t2, 0, 0);
  double m2 = 0;
  for (int j = 0; j < t2.nodes; ++j)
    m2 = std::max(m2, std::fabs(dxx.at(2, j) + f.at(2, j)));
  CHECK(m2 <= 5e-3);

  ChartSpec sph;
  sph.kind = ChartKind::latlong_sphere;
  sph.res = {16, 16};
  AngularChart c = build_chart(sph);
  Field fl(g.nr, c.nodes);
  CHECK_THROWS_AS(dchart(fl, c, 0), RunError);
}

TEST_CASE("cross-section integration") {
  AngularChart s1 = build_chart(circle(64));
  RadialGrid g = build_radial_grid(0.0, 1.0, 5);
  Field one(g.nr, s1.nodes);
  for (auto& v : one.v) v = 1.0;
  auto M = integrate_N(one, s1);
  for (double m : M) CHECK(m == doctest::Approx(2 * kPi).epsilon(1e-14));

  // Uniform periodic quadrature integrates low harmonics exactly.
  Field f(g.nr, s1.nodes);
  for (int i = 0; i < g.nr; ++i)
    for (int j = 0; j < s1.nodes; ++j) {
      const double t = s1.x(j)[0];
      f.at(i, j) = std::sin(t) * std::sin(t);
    }
  auto Msin = integrate_N(f, s1);
  for (double m : Msin) CHECK(m == doctest::Approx(kPi).epsilon(1e-13));

  f.at(2, 3) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(integrate_N(f, s1), RunError);
}

TEST_CASE("expression sampling over the grid") {
  RadialGrid g = build_radial_grid(0.0, 2.0, 9);
  AngularChart s1 = build_chart(circle(8));
  BoundExpr e = Expr::parse("exp(-r)*(1+0.5*sin(x1))").bind(1, true, {});
  Field f = sample_field(g, s1, e);
  CHECK(f.at(0, 0) == doctest::Approx(1.0));
  CHECK(f.at(8, 0) == doctest::Approx(std::exp(-2.0)));
  const double t = s1.x(3)[0];
  CHECK(f.at(4, 3) == doctest::Approx(std::exp(-1.0) * (1 + 0.5 * std::sin(t))));

  BoundExpr er = Expr::parse("r*r+1").bind(0, true, {});
  auto v = sample_radial(g, er);
  CHECK(v[4] == doctest::Approx(2.0));
}
