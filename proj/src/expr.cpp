// Expression parser, printer, evaluator, and compiler.

#include "rrmlab/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>

namespace rrm {
namespace {

enum class Tok { num, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok type;
  double num = 0;
  std::string text;
  std::size_t pos = 0;
};

struct Lexer {
  std::string_view s;
  std::size_t i = 0;

  Token next() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) return {Tok::end, 0, "", s.size()};
    const std::size_t start = i;
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      double v = 0;
      auto res = std::from_chars(s.data() + i, s.data() + s.size(), v);
      if (res.ec != std::errc()) throw ExprError("malformed number", start);
      i = static_cast<std::size_t>(res.ptr - s.data());
      return {Tok::num, v, std::string(s.substr(start, i - start)), start};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      Token t{Tok::ident, 0, std::string(s.substr(i, j - i)), start};
      i = j;
      return t;
    }
    ++i;
    switch (c) {
      case '+': return {Tok::plus, 0, "+", start};
      case '-': return {Tok::minus, 0, "-", start};
      case '*': return {Tok::star, 0, "*", start};
      case '/': return {Tok::slash, 0, "/", start};
      case '^': return {Tok::caret, 0, "^", start};
      case '(': return {Tok::lparen, 0, "(", start};
      case ')': return {Tok::rparen, 0, ")", start};
      default:
        throw ExprError(std::string("unexpected character '") + c + "'", start);
    }
  }
};

const char* const kFnNames[] = {"sin", "cos", "tan", "exp", "log", "sinh", "cosh", "tanh", "sqrt"};
constexpr int kFnCount = 9;

int fn_id(const std::string& name) {
  for (int f = 0; f < kFnCount; ++f)
    if (name == kFnNames[f]) return f;
  return -1;
}

double apply_fn(int fid, double v) {
  double out = 0;
  switch (fid) {
    case 0: out = std::sin(v); break;
    case 1: out = std::cos(v); break;
    case 2: out = std::tan(v); break;
    case 3: out = std::exp(v); break;
    case 4:
      if (v <= 0) throw EvalError("log of non-positive value");
      out = std::log(v);
      break;
    case 5: out = std::sinh(v); break;
    case 6: out = std::cosh(v); break;
    case 7: out = std::tanh(v); break;
    case 8:
      if (v < 0) throw EvalError("sqrt of negative value");
      out = std::sqrt(v);
      break;
    default: throw EvalError("unknown function id");
  }
  if (!std::isfinite(out))
    throw EvalError(std::string("non-finite result in ") + kFnNames[fid]);
  return out;
}

double apply_bin(int kind, double a, double b) {
  // kind: 0 add, 1 sub, 2 mul, 3 div, 4 pow
  double out = 0;
  switch (kind) {
    case 0: out = a + b; break;
    case 1: out = a - b; break;
    case 2: out = a * b; break;
    case 3:
      if (b == 0) throw EvalError("division by zero");
      out = a / b;
      break;
    case 4:
      out = std::pow(a, b);
      break;
    default: throw EvalError("unknown operator");
  }
  if (!std::isfinite(out) && std::isfinite(a) && std::isfinite(b)) {
    static const char* const names[] = {"+", "-", "*", "/", "^"};
    throw EvalError(std::string("non-finite result in operator ") + names[kind]);
  }
  return out;
}

}  // namespace

// Recursive-descent parser.  Implemented as member helpers through a local
// struct so it can append to nodes_.
Expr Expr::parse(std::string_view src) {
  Expr e;

  struct P {
    Lexer lex;
    Token tok;
    std::vector<Node>& nodes;

    explicit P(std::string_view s, std::vector<Node>& n) : lex{s, 0}, nodes(n) { tok = lex.next(); }

    void advance() { tok = lex.next(); }

    int make(Node::K k, int a = -1, int b = -1) {
      Node nd;
      nd.k = k;
      nd.a = a;
      nd.b = b;
      nodes.push_back(std::move(nd));
      return static_cast<int>(nodes.size()) - 1;
    }

    int expr() {
      int lhs = term();
      while (tok.type == Tok::plus || tok.type == Tok::minus) {
        const bool add = tok.type == Tok::plus;
        advance();
        int rhs = term();
        lhs = make(add ? Node::K::add : Node::K::sub, lhs, rhs);
      }
      return lhs;
    }

    int term() {
      int lhs = factor();
      while (tok.type == Tok::star || tok.type == Tok::slash) {
        const bool mul = tok.type == Tok::star;
        advance();
        int rhs = factor();
        lhs = make(mul ? Node::K::mul : Node::K::div, lhs, rhs);
      }
      return lhs;
    }

    int factor() {
      if (tok.type == Tok::minus) {
        advance();
        int child = factor();
        return make(Node::K::neg, child);
      }
      return power();
    }

    int power() {
      int base = primary();
      if (tok.type == Tok::caret) {
        advance();
        int exp = factor();  // right associative; exponent may carry unary -
        return make(Node::K::pow, base, exp);
      }
      return base;
    }

    int primary() {
      if (tok.type == Tok::num) {
        int id = make(Node::K::num);
        nodes[id].num = tok.num;
        advance();
        return id;
      }
      if (tok.type == Tok::ident) {
        std::string name = tok.text;
        std::size_t npos = tok.pos;
        advance();
        if (tok.type == Tok::lparen) {
          if (fn_id(name) < 0) throw ExprError("unknown function '" + name + "'", npos);
          advance();
          int arg = expr();
          if (tok.type != Tok::rparen) throw expected(")");
          advance();
          int id = make(Node::K::call, arg);
          nodes[id].name = std::move(name);
          return id;
        }
        int id = make(Node::K::var);
        nodes[id].name = std::move(name);
        return id;
      }
      if (tok.type == Tok::lparen) {
        advance();
        int inner = expr();
        if (tok.type != Tok::rparen) throw expected(")");
        advance();
        return inner;
      }
      if (tok.type == Tok::end) throw ExprError("unexpected end of expression", tok.pos);
      throw ExprError("unexpected token '" + tok.text + "'", tok.pos);
    }

    ExprError expected(const char* what) {
      if (tok.type == Tok::end)
        return ExprError(std::string("unexpected end of expression, expected '") + what + "'",
                         tok.pos);
      return ExprError(std::string("expected '") + what + "' but found '" + tok.text + "'",
                       tok.pos);
    }
  };

  P p(src, e.nodes_);
  int root = p.expr();
  if (p.tok.type != Tok::end)
    throw ExprError("unexpected token '" + p.tok.text + "' after expression", p.tok.pos);
  e.root_ = root;
  return e;
}

namespace {

std::string num_str(double v) {
  std::array<char, 40> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

std::string Expr::print(int id) const {
  const Node& nd = nodes_[static_cast<std::size_t>(id)];
  auto prec = [&](int nid) {
    switch (nodes_[static_cast<std::size_t>(nid)].k) {
      case Node::K::add:
      case Node::K::sub: return 1;
      case Node::K::mul:
      case Node::K::div: return 2;
      case Node::K::neg: return 3;
      case Node::K::pow: return 4;
      default: return 5;
    }
  };
  auto wrap = [&](int nid, bool need) {
    std::string s = print(nid);
    return need ? "(" + s + ")" : s;
  };
  switch (nd.k) {
    case Node::K::num: return num_str(nd.num);
    case Node::K::var: return nd.name;
    case Node::K::call: return nd.name + "(" + print(nd.a) + ")";
    case Node::K::neg: return "-" + wrap(nd.a, prec(nd.a) < 3);
    case Node::K::add: return wrap(nd.a, prec(nd.a) < 1) + "+" + wrap(nd.b, prec(nd.b) <= 1);
    case Node::K::sub: return wrap(nd.a, prec(nd.a) < 1) + "-" + wrap(nd.b, prec(nd.b) <= 1);
    case Node::K::mul: return wrap(nd.a, prec(nd.a) < 2) + "*" + wrap(nd.b, prec(nd.b) <= 2);
    case Node::K::div: return wrap(nd.a, prec(nd.a) < 2) + "/" + wrap(nd.b, prec(nd.b) <= 2);
    case Node::K::pow: return wrap(nd.a, prec(nd.a) <= 4) + "^" + wrap(nd.b, prec(nd.b) < 4);
  }
  return "";
}

std::string Expr::str() const {
  if (root_ < 0) return "";
  return print(root_);
}

double Expr::eval_node(int id, double r, const double* x, int dim, const ParamMap& params) const {
  const Node& nd = nodes_[static_cast<std::size_t>(id)];
  switch (nd.k) {
    case Node::K::num: return nd.num;
    case Node::K::var: {
      if (nd.name == "r") return r;
      if (nd.name.size() == 2 && nd.name[0] == 'x' && nd.name[1] >= '1' && nd.name[1] <= '3') {
        int k = nd.name[1] - '1';
        if (k < dim) return x[k];
        throw EvalError("coordinate '" + nd.name + "' outside chart dimension");
      }
      if (auto it = params.find(nd.name); it != params.end()) return it->second;
      if (nd.name == "pi") return 3.14159265358979323846;
      throw EvalError("unknown identifier '" + nd.name + "'");
    }
    case Node::K::call:
      return apply_fn(fn_id(nd.name), eval_node(nd.a, r, x, dim, params));
    case Node::K::neg:
      return -eval_node(nd.a, r, x, dim, params);
    case Node::K::add:
      return apply_bin(0, eval_node(nd.a, r, x, dim, params), eval_node(nd.b, r, x, dim, params));
    case Node::K::sub:
      return apply_bin(1, eval_node(nd.a, r, x, dim, params), eval_node(nd.b, r, x, dim, params));
    case Node::K::mul:
      return apply_bin(2, eval_node(nd.a, r, x, dim, params), eval_node(nd.b, r, x, dim, params));
    case Node::K::div:
      return apply_bin(3, eval_node(nd.a, r, x, dim, params), eval_node(nd.b, r, x, dim, params));
    case Node::K::pow:
      return apply_bin(4, eval_node(nd.a, r, x, dim, params), eval_node(nd.b, r, x, dim, params));
  }
  throw EvalError("corrupt expression tree");
}

double Expr::eval(double r, const double* x, int dim, const ParamMap& params) const {
  if (root_ < 0) throw EvalError("evaluating empty expression");
  return eval_node(root_, r, x, dim, params);
}

// Bytecode: 0 const, 1 r, 2..4 x1..x3, 10 add, 11 sub, 12 mul, 13 div,
// 14 pow, 15 neg, 20+f function f.
BoundExpr Expr::bind(int dim, bool allow_r, const ParamMap& params) const {
  if (root_ < 0) throw ExprError("binding empty expression", 0);
  BoundExpr be;
  be.dim_ = dim;

  int depth = 0, maxdepth = 0;
  auto push = [&](std::int8_t code, double k = 0) {
    be.prog_.push_back({code, k});
  };

  // Post-order emit.
  auto emit = [&](auto&& self, int id) -> void {
    const Node& nd = nodes_[static_cast<std::size_t>(id)];
    switch (nd.k) {
      case Node::K::num:
        push(0, nd.num);
        maxdepth = std::max(maxdepth, ++depth);
        return;
      case Node::K::var: {
        if (nd.name == "r") {
          if (!allow_r) throw ExprError("variable 'r' is not allowed in this expression", 0);
          push(1);
        } else if (nd.name.size() == 2 && nd.name[0] == 'x' && nd.name[1] >= '1' &&
                   nd.name[1] <= '3') {
          int k = nd.name[1] - '1';
          if (k >= dim)
            throw ExprError("coordinate '" + nd.name + "' outside chart dimension", 0);
          push(static_cast<std::int8_t>(2 + k));
        } else if (auto it = params.find(nd.name); it != params.end()) {
          push(0, it->second);
        } else if (nd.name == "pi") {
          push(0, 3.14159265358979323846);
        } else {
          throw ExprError("unknown identifier '" + nd.name + "'", 0);
        }
        maxdepth = std::max(maxdepth, ++depth);
        return;
      }
      case Node::K::call:
        self(self, nd.a);
        push(static_cast<std::int8_t>(20 + fn_id(nd.name)));
        return;
      case Node::K::neg:
        self(self, nd.a);
        push(15);
        return;
      case Node::K::add:
      case Node::K::sub:
      case Node::K::mul:
      case Node::K::div:
      case Node::K::pow: {
        self(self, nd.a);
        self(self, nd.b);
        std::int8_t code = 10;
        if (nd.k == Node::K::sub) code = 11;
        if (nd.k == Node::K::mul) code = 12;
        if (nd.k == Node::K::div) code = 13;
        if (nd.k == Node::K::pow) code = 14;
        push(code);
        --depth;
        return;
      }
    }
  };
  emit(emit, root_);
  if (maxdepth > 120) throw ExprError("expression too deeply nested", 0);
  return be;
}

double BoundExpr::eval(double r, const double* x) const {
  if (prog_.empty()) throw EvalError("evaluating unbound expression");
  std::array<double, 128> stack;
  int sp = 0;
  for (const Op& op : prog_) {
    switch (op.code) {
      case 0: stack[sp++] = op.k; break;
      case 1: stack[sp++] = r; break;
      case 2: stack[sp++] = x[0]; break;
      case 3: stack[sp++] = x[1]; break;
      case 4: stack[sp++] = x[2]; break;
      case 10: case 11: case 12: case 13: case 14: {
        double b = stack[--sp];
        double a = stack[--sp];
        stack[sp++] = apply_bin(op.code - 10, a, b);
        break;
      }
      case 15: stack[sp - 1] = -stack[sp - 1]; break;
      default: stack[sp - 1] = apply_fn(op.code - 20, stack[sp - 1]); break;
    }
  }
  return stack[0];
}

}  // namespace rrm
