#ifndef EIGENLAB_EXPR_HPP
#define EIGENLAB_EXPR_HPP

// Coefficient expressions: a small recursive-descent parser, an immutable
// AST and an evaluator with exact piecewise-branch semantics.
//
// Grammar (whitespace is insignificant):
//
//   expr      := term (('+' | '-') term)*
//   term      := unary (('*' | '/') unary)*
//   unary     := '-' unary | power
//   power     := primary ('^' unary)?
//   primary   := number | 'x' | 'y' | 'pi' | 'e'
//              | func '(' expr ')'
//              | ('min' | 'max') '(' expr ',' expr ')'
//              | 'piecewise' '(' expr cmp expr ',' expr ',' expr ')'
//              | '(' expr ')'
//   cmp       := '<' | '<=' | '>' | '>=' | '≤' | '≥'
//   func      := abs | sqrt | exp | log | sin | cos | tan | atan
//              | sinh | cosh | tanh | sign

#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eigenlab/error.hpp"

namespace eigenlab {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

namespace expr {

enum class Op { constant, variable, neg, add, sub, mul, div, pow, call, piecewise };
enum class Fn { abs, sqrt, exp, log, sin, cos, tan, atan, sinh, cosh, tanh, sign, min, max };
enum class Cmp { lt, le, gt, ge };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::constant;
  double value = 0.0;  // constant
  int var = 0;         // variable: 0 -> x, 1 -> y
  Fn fn = Fn::abs;     // call
  Cmp cmp = Cmp::lt;   // piecewise predicate
  // neg: {a}; binary: {lhs, rhs}; call: arguments;
  // piecewise: {pred_lhs, pred_rhs, then, else}
  std::vector<NodePtr> args;
};

inline NodePtr make_constant(double v) {
  auto n = std::make_shared<Node>();
  n->op = Op::constant;
  n->value = v;
  return n;
}

inline NodePtr make_variable(int var) {
  auto n = std::make_shared<Node>();
  n->op = Op::variable;
  n->var = var;
  return n;
}

inline NodePtr make_node(Op op, std::vector<NodePtr> args) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args = std::move(args);
  return n;
}

inline NodePtr make_call(Fn fn, std::vector<NodePtr> args) {
  auto n = std::make_shared<Node>();
  n->op = Op::call;
  n->fn = fn;
  n->args = std::move(args);
  return n;
}

inline NodePtr make_piecewise(Cmp cmp, NodePtr lhs, NodePtr rhs, NodePtr then_branch,
                              NodePtr else_branch) {
  auto n = std::make_shared<Node>();
  n->op = Op::piecewise;
  n->cmp = cmp;
  n->args = {std::move(lhs), std::move(rhs), std::move(then_branch), std::move(else_branch)};
  return n;
}

struct FnInfo {
  std::string_view name;
  Fn fn;
  int arity;
};

inline constexpr FnInfo kFunctions[] = {
    {"abs", Fn::abs, 1},   {"sqrt", Fn::sqrt, 1}, {"exp", Fn::exp, 1},   {"log", Fn::log, 1},
    {"sin", Fn::sin, 1},   {"cos", Fn::cos, 1},   {"tan", Fn::tan, 1},   {"atan", Fn::atan, 1},
    {"sinh", Fn::sinh, 1}, {"cosh", Fn::cosh, 1}, {"tanh", Fn::tanh, 1}, {"sign", Fn::sign, 1},
    {"min", Fn::min, 2},   {"max", Fn::max, 2},
};

inline const FnInfo& fn_info(Fn fn) {
  for (const auto& info : kFunctions)
    if (info.fn == fn) return info;
  return kFunctions[0];
}

inline bool structurally_equal(const Node& a, const Node& b) {
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  switch (a.op) {
    case Op::constant:
      if (!(a.value == b.value) && !(std::isnan(a.value) && std::isnan(b.value))) return false;
      break;
    case Op::variable:
      if (a.var != b.var) return false;
      break;
    case Op::call:
      if (a.fn != b.fn) return false;
      break;
    case Op::piecewise:
      if (a.cmp != b.cmp) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!structurally_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

inline double evaluate(const Node& n, const Point& p) {
  switch (n.op) {
    case Op::constant:
      return n.value;
    case Op::variable:
      return n.var == 0 ? p.x : p.y;
    case Op::neg:
      return -evaluate(*n.args[0], p);
    case Op::add:
      return evaluate(*n.args[0], p) + evaluate(*n.args[1], p);
    case Op::sub:
      return evaluate(*n.args[0], p) - evaluate(*n.args[1], p);
    case Op::mul:
      return evaluate(*n.args[0], p) * evaluate(*n.args[1], p);
    case Op::div: {
      const double num = evaluate(*n.args[0], p);
      const double den = evaluate(*n.args[1], p);
      if (den == 0.0) throw DomainError("division by zero");
      return num / den;
    }
    case Op::pow: {
      const double base = evaluate(*n.args[0], p);
      const double ex = evaluate(*n.args[1], p);
      if (base < 0.0 && ex != std::floor(ex))
        throw DomainError("negative base raised to a non-integer power");
      if (base == 0.0 && ex < 0.0) throw DomainError("zero raised to a negative power");
      return std::pow(base, ex);
    }
    case Op::call: {
      const double u = evaluate(*n.args[0], p);
      switch (n.fn) {
        case Fn::abs: return std::fabs(u);
        case Fn::sqrt:
          if (u < 0.0) throw DomainError("sqrt of negative value " + std::to_string(u));
          return std::sqrt(u);
        case Fn::exp: return std::exp(u);
        case Fn::log:
          if (u <= 0.0) throw DomainError("log of non-positive value " + std::to_string(u));
          return std::log(u);
        case Fn::sin: return std::sin(u);
        case Fn::cos: return std::cos(u);
        case Fn::tan: return std::tan(u);
        case Fn::atan: return std::atan(u);
        case Fn::sinh: return std::sinh(u);
        case Fn::cosh: return std::cosh(u);
        case Fn::tanh: return std::tanh(u);
        case Fn::sign: return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
        case Fn::min: return std::fmin(u, evaluate(*n.args[1], p));
        case Fn::max: return std::fmax(u, evaluate(*n.args[1], p));
      }
      return u;
    }
    case Op::piecewise: {
      const double lhs = evaluate(*n.args[0], p);
      const double rhs = evaluate(*n.args[1], p);
      bool holds = false;
      switch (n.cmp) {
        case Cmp::lt: holds = lhs < rhs; break;
        case Cmp::le: holds = lhs <= rhs; break;
        case Cmp::gt: holds = lhs > rhs; break;
        case Cmp::ge: holds = lhs >= rhs; break;
      }
      return evaluate(*n.args[holds ? 2 : 3], p);
    }
  }
  return 0.0;
}

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Fully parenthesized canonical form; reparses to a structurally equal AST.
inline void print(const Node& n, std::string& out) {
  auto bin = [&](const char* sym) {
    out += '(';
    print(*n.args[0], out);
    out += sym;
    print(*n.args[1], out);
    out += ')';
  };
  switch (n.op) {
    case Op::constant:
      if (n.value < 0.0 || (n.value == 0.0 && std::signbit(n.value))) {
        out += "(-" + format_number(-n.value) + ")";
      } else {
        out += format_number(n.value);
      }
      break;
    case Op::variable:
      out += n.var == 0 ? "x" : "y";
      break;
    case Op::neg:
      out += "(-(";
      print(*n.args[0], out);
      out += "))";
      break;
    case Op::add: bin(" + "); break;
    case Op::sub: bin(" - "); break;
    case Op::mul: bin(" * "); break;
    case Op::div: bin(" / "); break;
    case Op::pow: bin(" ^ "); break;
    case Op::call:
      out += fn_info(n.fn).name;
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        print(*n.args[i], out);
      }
      out += ')';
      break;
    case Op::piecewise: {
      static constexpr const char* kCmp[] = {" < ", " <= ", " > ", " >= "};
      out += "piecewise(";
      print(*n.args[0], out);
      out += kCmp[static_cast<int>(n.cmp)];
      print(*n.args[1], out);
      out += ", ";
      print(*n.args[2], out);
      out += ", ";
      print(*n.args[3], out);
      out += ')';
      break;
    }
  }
}

inline bool uses_variable(const Node& n, int var) {
  if (n.op == Op::variable) return n.var == var;
  for (const auto& a : n.args)
    if (uses_variable(*a, var)) return true;
  return false;
}

class Parser {
 public:
  Parser(std::string_view text, int dim) : text_(text), dim_(dim) {}

  NodePtr parse() {
    NodePtr root = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(pos_, message); }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip_ws();
      if (accept("+")) {
        lhs = make_node(Op::add, {lhs, parse_term()});
      } else if (pos_ < text_.size() && text_[pos_] == '-') {
        ++pos_;
        lhs = make_node(Op::sub, {lhs, parse_term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept("*")) {
        lhs = make_node(Op::mul, {lhs, parse_unary()});
      } else if (accept("/")) {
        lhs = make_node(Op::div, {lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '-') {
      ++pos_;
      skip_ws();
      // "-<number>" folds into a negative literal unless a power binds it.
      if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                  text_[pos_] == '.')) {
        const std::size_t save = pos_;
        const double v = parse_number();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
          pos_ = save;
          return make_node(Op::neg, {parse_unary()});
        }
        return make_constant(-v);
      }
      return make_node(Op::neg, {parse_unary()});
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept("^")) return make_node(Op::pow, {base, parse_unary()});
    return base;
  }

  double parse_number() {
    const std::size_t start = pos_;
    auto digit = [&](std::size_t i) {
      return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
    };
    while (digit(pos_)) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (digit(pos_)) ++pos_;
    }
    if (pos_ == start + 1 && text_[start] == '.') {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t k = pos_ + 1;
      if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
      if (digit(k)) {
        pos_ = k;
        while (digit(pos_)) ++pos_;
      }
    }
    return std::stod(std::string(text_.substr(start, pos_ - start)));
  }

  std::string parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Cmp parse_cmp() {
    skip_ws();
    if (accept("<=") || accept("\xE2\x89\xA4")) return Cmp::le;
    if (accept(">=") || accept("\xE2\x89\xA5")) return Cmp::ge;
    if (accept("<")) return Cmp::lt;
    if (accept(">")) return Cmp::gt;
    fail("expected comparison operator");
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return make_constant(parse_number());
    if (ch == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(")");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      const std::string id = parse_identifier();
      if (id == "x") return make_variable(0);
      if (id == "y") {
        if (dim_ < 2) throw UnknownIdentifier("'y' at offset " + std::to_string(start) +
                                              " is not a variable of a 1D field");
        return make_variable(1);
      }
      if (id == "pi") return make_constant(3.14159265358979323846);
      if (id == "e") return make_constant(2.71828182845904523536);
      if (id == "piecewise") {
        expect("(");
        NodePtr lhs = parse_expr();
        const Cmp cmp = parse_cmp();
        NodePtr rhs = parse_expr();
        expect(",");
        NodePtr then_branch = parse_expr();
        expect(",");
        NodePtr else_branch = parse_expr();
        expect(")");
        return make_piecewise(cmp, lhs, rhs, then_branch, else_branch);
      }
      for (const auto& info : kFunctions) {
        if (info.name == id) {
          expect("(");
          std::vector<NodePtr> args{parse_expr()};
          for (int i = 1; i < info.arity; ++i) {
            expect(",");
            args.push_back(parse_expr());
          }
          expect(")");
          return make_call(info.fn, std::move(args));
        }
      }
      throw UnknownIdentifier("'" + id + "' at offset " + std::to_string(start));
    }
    fail(std::string("unexpected character '") + ch + "'");
  }

  std::string_view text_;
  int dim_;
  std::size_t pos_ = 0;
};

}  // namespace expr

/// Immutable scalar coefficient field over x (1D) or (x, y) (2D).
class ScalarField {
 public:
  ScalarField() : root_(expr::make_constant(0.0)) {}
  explicit ScalarField(expr::NodePtr root) : root_(std::move(root)) {}

  static ScalarField constant(double v) { return ScalarField(expr::make_constant(v)); }

  double operator()(const Point& p) const {
    const double v = expr::evaluate(*root_, p);
    if (!std::isfinite(v)) throw DomainError("non-finite value in '" + to_string() + "'");
    return v;
  }
  double operator()(double x, double y = 0.0) const { return (*this)(Point{x, y}); }

  const expr::Node& root() const { return *root_; }
  const expr::NodePtr& root_ptr() const { return root_; }

  bool is_constant() const { return root_->op == expr::Op::constant; }
  std::optional<double> constant_value() const {
    if (is_constant()) return root_->value;
    return std::nullopt;
  }
  bool is_zero() const { return is_constant() && root_->value == 0.0; }
  bool uses(int var) const { return expr::uses_variable(*root_, var); }

  std::string to_string() const {
    std::string out;
    expr::print(*root_, out);
    return out;
  }

  friend bool operator==(const ScalarField& a, const ScalarField& b) {
    return expr::structurally_equal(*a.root_, *b.root_);
  }

  ScalarField scaled(double k) const {
    return ScalarField(expr::make_node(expr::Op::mul, {expr::make_constant(k), root_}));
  }
  ScalarField plus(const ScalarField& other) const {
    return ScalarField(expr::make_node(expr::Op::add, {root_, other.root_}));
  }
  ScalarField plus(double k) const { return plus(constant(k)); }

 private:
  expr::NodePtr root_;
};

/// Parses a coefficient expression. `dim` controls whether `y` is a variable.
inline ScalarField parse_field(std::string_view text, int dim = 1) {
  return ScalarField(expr::Parser(text, dim).parse());
}

inline double eval_field(const ScalarField& f, const Point& p) { return f(p); }

}  // namespace eigenlab

#endif  // EIGENLAB_EXPR_HPP
