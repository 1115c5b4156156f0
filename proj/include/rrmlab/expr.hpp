#pragma once
// Scalar expression language over the run variables.
//
// Grammar (precedence low to high: +- < */ < unary- < ^, with ^ right
// associative):
//   expr    := term (('+'|'-') term)*
//   term    := factor (('*'|'/') factor)*
//   factor  := '-' factor | power
//   power   := primary ('^' factor)?
//   primary := number | name | name '(' expr ')' | '(' expr ')'
// Names resolve to the radial variable r, chart coordinates x1..x3, run
// parameters, or the builtin constant pi.  Functions: sin cos tan exp log
// sinh cosh tanh sqrt.

#include "rrmlab/errors.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace rrm {

using ParamMap = std::map<std::string, double>;

class Expr;

// An expression compiled against a fixed parameter set; only r and the chart
// coordinates remain variable.  Cheap to evaluate per grid point.
class BoundExpr {
 public:
  BoundExpr() = default;
  bool valid() const { return !prog_.empty(); }
  double eval(double r, const double* x) const;  // x has dim() entries, may be null if dim()==0
  int dim() const { return dim_; }

 private:
  friend class Expr;
  struct Op {
    std::int8_t code;
    double k;
  };
  std::vector<Op> prog_;
  int dim_ = 0;
};

class Expr {
 public:
  Expr() = default;
  static Expr parse(std::string_view src);  // throws ExprError
  bool empty() const { return root_ < 0; }

  // Canonical form; parsing the printed form reproduces the same tree.
  std::string str() const;

  // Reference tree-walking evaluation.
  double eval(double r, const double* x, int dim, const ParamMap& params) const;

  // Compile with params baked in as constants.  allow_r=false rejects use of
  // r (chart metrics must not depend on the radial variable).
  BoundExpr bind(int dim, bool allow_r, const ParamMap& params) const;

 private:
  struct Node {
    enum class K { num, var, call, add, sub, mul, div, pow, neg } k;
    double num = 0;
    std::string name;
    int a = -1, b = -1;
  };
  std::vector<Node> nodes_;
  int root_ = -1;

  std::string print(int id) const;
  double eval_node(int id, double r, const double* x, int dim, const ParamMap& params) const;
};

}  // namespace rrm
