// Expression language: parsing, precedence, canonical printing, evaluation,
// compilation, and error reporting.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rrmlab/expr.hpp"

#include <cmath>

using namespace rrm;

namespace {

double ev(const char* src, double r = 0, ParamMap params = {}) {
  return Expr::parse(src).eval(r, nullptr, 0, params);
}

double evx(const char* src, double r, const double* x, int dim) {
  return Expr::parse(src).eval(r, x, dim, {});
}

}  // namespace

TEST_CASE("arithmetic and precedence") {
  CHECK(ev("1+2*3") == doctest::Approx(7.0));
  CHECK(ev("(1+2)*3") == doctest::Approx(9.0));
  CHECK(ev("6/4") == doctest::Approx(1.5));
  CHECK(ev("2-3-4") == doctest::Approx(-5.0));
  CHECK(ev("16/4/2") == doctest::Approx(2.0));
  CHECK(ev("2^3^2") == doctest::Approx(512.0));   // right associative
  CHECK(ev("-2^2") == doctest::Approx(-4.0));     // ^ binds tighter than unary -
  CHECK(ev("(-2)^2") == doctest::Approx(4.0));
  CHECK(ev("2*-3") == doctest::Approx(-6.0));
  CHECK(ev("2^-1") == doctest::Approx(0.5));
  CHECK(ev("-2*3") == doctest::Approx(-6.0));
}

TEST_CASE("functions and constants") {
  CHECK(ev("sin(pi/2)") == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ev("cos(0)") == doctest::Approx(1.0));
  CHECK(ev("sqrt(4)") == doctest::Approx(2.0));
  CHECK(ev("log(exp(2))") == doctest::Approx(2.0));
  CHECK(ev("tanh(0)") == doctest::Approx(0.0));
  CHECK(ev("sinh(1)-cosh(1)+exp(-1)") == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(ev("tan(pi/4)") == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("variables and parameters") {
  CHECK(ev("a*r+b", 3.0, {{"a", 2.0}, {"b", 1.0}}) == doctest::Approx(7.0));
  const double x[2] = {0.5, -2.0};
  CHECK(evx("x1+x2*x2", 0, x, 2) == doctest::Approx(4.5));
  CHECK(evx("r-x1", 1.25, x, 2) == doctest::Approx(0.75));
  // Core variables shadow parameters of the same name.
  CHECK(ev("r", 2.0, {{"r", 99.0}}) == doctest::Approx(2.0));
}

TEST_CASE("syntax errors carry offsets") {
  CHECK_THROWS_AS(Expr::parse("sin("), ExprError);
  try {
    Expr::parse("sin(");
  } catch (const ExprError& e) {
    CHECK(e.offset == 4);
    CHECK(std::string(e.what()).find("offset 4") != std::string::npos);
  }
  try {
    Expr::parse("2 @ 3");
  } catch (const ExprError& e) {
    CHECK(e.offset == 2);
  }
  CHECK_THROWS_AS(Expr::parse(""), ExprError);
  CHECK_THROWS_AS(Expr::parse("(1+2"), ExprError);
  CHECK_THROWS_AS(Expr::parse("1 2"), ExprError);
  CHECK_THROWS_AS(Expr::parse("1+"), ExprError);
  CHECK_THROWS_AS(Expr::parse("foo(2)"), ExprError);
  CHECK_THROWS_AS(Expr::parse("*2"), ExprError);
}

TEST_CASE("evaluation domain errors") {
  CHECK_THROWS_AS(ev("1/0"), EvalError);
  CHECK_THROWS_AS(ev("log(0)"), EvalError);
  CHECK_THROWS_AS(ev("log(-1)"), EvalError);
  CHECK_THROWS_AS(ev("sqrt(-1)"), EvalError);
  CHECK_THROWS_AS(ev("exp(1000)"), EvalError);
  CHECK_THROWS_AS(ev("(-2)^0.5"), EvalError);
  CHECK_THROWS_AS(ev("nosuchname"), EvalError);
  const double x[1] = {1.0};
  CHECK_THROWS_AS(evx("x2", 0, x, 1), EvalError);
}

TEST_CASE("parse-print-parse is the identity on the printed form") {
  const char* corpus[] = {
      "1+2*3",        "-x1^2",          "2^3^2",        "(a+b)*c",
      "a-(b-c)",      "a/(b*c)",        "x1^-2",        "-(a+b)",
      "sin(x1)*cos(x2)+0.5", "exp(-2*r)*(1+0.25*sin(x1))", "r^2+3.5*r",
      "sqrt(x1*x1+1)", "1/(1+r)",       "--x1",          "2^(a+b)",
      "(a^b)^c",      "a*b/c*d",        "0.1*exp(-r)+1e-05",
  };
  for (const char* s : corpus) {
    CAPTURE(s);
    Expr e1 = Expr::parse(s);
    std::string p1 = e1.str();
    Expr e2 = Expr::parse(p1);
    std::string p2 = e2.str();
    CHECK(p1 == p2);
    // Values agree at a sample point.
    ParamMap params = {{"a", 1.3}, {"b", 0.7}, {"c", 2.1}, {"d", -0.4}};
    const double x[2] = {0.6, 1.9};
    CHECK(e1.eval(0.8, x, 2, params) == doctest::Approx(e2.eval(0.8, x, 2, params)));
  }
}

TEST_CASE("compiled expressions match tree evaluation") {
  ParamMap params = {{"alpha", 0.25}, {"beta", -1.5}};
  Expr e = Expr::parse("alpha*exp(-2*r)*(1+beta*sin(x1))+r^2");
  BoundExpr be = e.bind(1, /*allow_r=*/true, params);
  for (double r : {0.0, 0.5, 2.0}) {
    for (double t : {0.0, 1.1, 3.0}) {
      const double x[1] = {t};
      CHECK(be.eval(r, x) == doctest::Approx(e.eval(r, x, 1, params)).epsilon(1e-15));
    }
  }
}

TEST_CASE("binding validates variable use") {
  ParamMap none;
  CHECK_THROWS_AS(Expr::parse("r+1").bind(2, /*allow_r=*/false, none), ExprError);
  CHECK_THROWS_AS(Expr::parse("x3").bind(2, /*allow_r=*/true, none), ExprError);
  CHECK_THROWS_AS(Expr::parse("mystery").bind(2, /*allow_r=*/true, none), ExprError);
  CHECK_NOTHROW(Expr::parse("x2+r").bind(2, /*allow_r=*/true, none));
}
