#include "susy/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

namespace susy::expr {

enum class Op { constant, var, add, sub, mul, div, pow, neg, call };

enum class Fn {
  sin, cos, tan, cot, sec, cosec, sinh, cosh, tanh, coth, sech, cosech, exp, ln, sqrt, abs, sign, sn, cn, dn
};

struct Node {
  Op op;
  double value = 0.0;
  Fn fn = Fn::sin;
  std::shared_ptr<const Node> a{};
  std::shared_ptr<const Node> b{};  // second operand, or the parameter m of sn/cn/dn
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

NodePtr constant(double v) { return std::make_shared<const Node>(Node{Op::constant, v}); }
NodePtr variable() { return std::make_shared<const Node>(Node{Op::var}); }

bool is_const(const NodePtr& n, double v) { return n->op == Op::constant && n->value == v; }

double eval(const Node& n, double x);

NodePtr binary(Op op, NodePtr a, NodePtr b) {
  if (a->op == Op::constant && b->op == Op::constant) {
    Node tmp{op, 0.0, Fn::sin, a, b};
    return constant(eval(tmp, 0.0));
  }
  switch (op) {
    case Op::add:
      if (is_const(a, 0.0)) return b;
      if (is_const(b, 0.0)) return a;
      break;
    case Op::sub:
      if (is_const(b, 0.0)) return a;
      break;
    case Op::mul:
      if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
      if (is_const(a, 1.0)) return b;
      if (is_const(b, 1.0)) return a;
      break;
    case Op::div:
      if (is_const(a, 0.0)) return constant(0.0);
      if (is_const(b, 1.0)) return a;
      break;
    case Op::pow:
      if (is_const(b, 1.0)) return a;
      if (is_const(b, 0.0)) return constant(1.0);
      break;
    default: break;
  }
  return std::make_shared<const Node>(Node{op, 0.0, Fn::sin, std::move(a), std::move(b)});
}

NodePtr negate(NodePtr a) {
  if (a->op == Op::constant) return constant(-a->value);
  return std::make_shared<const Node>(Node{Op::neg, 0.0, Fn::sin, std::move(a)});
}

NodePtr call(Fn fn, NodePtr a, NodePtr m = nullptr) {
  auto n = std::make_shared<const Node>(Node{Op::call, 0.0, fn, std::move(a), std::move(m)});
  if (n->a->op == Op::constant && (!n->b || n->b->op == Op::constant)) return constant(eval(*n, 0.0));
  return n;
}

NodePtr operator+(NodePtr a, NodePtr b) { return binary(Op::add, std::move(a), std::move(b)); }
NodePtr operator-(NodePtr a, NodePtr b) { return binary(Op::sub, std::move(a), std::move(b)); }
NodePtr operator*(NodePtr a, NodePtr b) { return binary(Op::mul, std::move(a), std::move(b)); }
NodePtr operator/(NodePtr a, NodePtr b) { return binary(Op::div, std::move(a), std::move(b)); }

double eval_call(Fn fn, double u, double m) {
  switch (fn) {
    case Fn::sin: return std::sin(u);
    case Fn::cos: return std::cos(u);
    case Fn::tan: return std::tan(u);
    case Fn::cot: return 1.0 / std::tan(u);
    case Fn::sec: return 1.0 / std::cos(u);
    case Fn::cosec: return 1.0 / std::sin(u);
    case Fn::sinh: return std::sinh(u);
    case Fn::cosh: return std::cosh(u);
    case Fn::tanh: return std::tanh(u);
    case Fn::coth: return 1.0 / std::tanh(u);
    case Fn::sech: return 1.0 / std::cosh(u);
    case Fn::cosech: return 1.0 / std::sinh(u);
    case Fn::exp: return std::exp(u);
    case Fn::ln: return std::log(u);
    case Fn::sqrt: return std::sqrt(u);
    case Fn::abs: return std::abs(u);
    case Fn::sign: return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
    case Fn::sn: return jacobi_sn_cn_dn(u, m).sn;
    case Fn::cn: return jacobi_sn_cn_dn(u, m).cn;
    case Fn::dn: return jacobi_sn_cn_dn(u, m).dn;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double eval(const Node& n, double x) {
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::var: return x;
    case Op::add: return eval(*n.a, x) + eval(*n.b, x);
    case Op::sub: return eval(*n.a, x) - eval(*n.b, x);
    case Op::mul: return eval(*n.a, x) * eval(*n.b, x);
    case Op::div: return eval(*n.a, x) / eval(*n.b, x);
    case Op::pow: {
      const double base = eval(*n.a, x);
      if (n.b->op == Op::constant) {
        const double p = n.b->value;
        if (p == 2.0) return base * base;
        if (p == std::round(p) && std::abs(p) <= 64.0) {
          double r = 1.0;
          for (int i = 0; i < static_cast<int>(std::abs(p)); ++i) r *= base;
          return p < 0 ? 1.0 / r : r;
        }
      }
      return std::pow(base, eval(*n.b, x));
    }
    case Op::neg: return -eval(*n.a, x);
    case Op::call: return eval_call(n.fn, eval(*n.a, x), n.b ? eval(*n.b, x) : 0.0);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

bool depends(const NodePtr& n) {
  if (!n) return false;
  if (n->op == Op::var) return true;
  return depends(n->a) || depends(n->b);
}

NodePtr diff(const NodePtr& n) {
  switch (n->op) {
    case Op::constant: return constant(0.0);
    case Op::var: return constant(1.0);
    case Op::add: return diff(n->a) + diff(n->b);
    case Op::sub: return diff(n->a) - diff(n->b);
    case Op::mul: return diff(n->a) * n->b + n->a * diff(n->b);
    case Op::div: return (diff(n->a) * n->b - n->a * diff(n->b)) / binary(Op::pow, n->b, constant(2.0));
    case Op::neg: return negate(diff(n->a));
    case Op::pow: {
      if (!depends(n->b)) {
        const NodePtr p = n->b;
        return p * binary(Op::pow, n->a, p - constant(1.0)) * diff(n->a);
      }
      // u^v (v' ln u + v u'/u)
      return n * (diff(n->b) * call(Fn::ln, n->a) + n->b * diff(n->a) / n->a);
    }
    case Op::call: {
      const NodePtr& u = n->a;
      const NodePtr du = diff(u);
      if (n->b && depends(n->b)) throw std::invalid_argument("expression: the parameter of sn/cn/dn must not depend on x");
      NodePtr outer;
      switch (n->fn) {
        case Fn::sin: outer = call(Fn::cos, u); break;
        case Fn::cos: outer = negate(call(Fn::sin, u)); break;
        case Fn::tan: outer = binary(Op::pow, call(Fn::sec, u), constant(2.0)); break;
        case Fn::cot: outer = negate(binary(Op::pow, call(Fn::cosec, u), constant(2.0))); break;
        case Fn::sec: outer = call(Fn::sec, u) * call(Fn::tan, u); break;
        case Fn::cosec: outer = negate(call(Fn::cosec, u) * call(Fn::cot, u)); break;
        case Fn::sinh: outer = call(Fn::cosh, u); break;
        case Fn::cosh: outer = call(Fn::sinh, u); break;
        case Fn::tanh: outer = binary(Op::pow, call(Fn::sech, u), constant(2.0)); break;
        case Fn::coth: outer = negate(binary(Op::pow, call(Fn::cosech, u), constant(2.0))); break;
        case Fn::sech: outer = negate(call(Fn::sech, u) * call(Fn::tanh, u)); break;
        case Fn::cosech: outer = negate(call(Fn::cosech, u) * call(Fn::coth, u)); break;
        case Fn::exp: outer = call(Fn::exp, u); break;
        case Fn::ln: outer = constant(1.0) / u; break;
        case Fn::sqrt: outer = constant(0.5) / call(Fn::sqrt, u); break;
        case Fn::abs: outer = call(Fn::sign, u); break;
        case Fn::sign: outer = constant(0.0); break;
        case Fn::sn: outer = call(Fn::cn, u, n->b) * call(Fn::dn, u, n->b); break;
        case Fn::cn: outer = negate(call(Fn::sn, u, n->b) * call(Fn::dn, u, n->b)); break;
        case Fn::dn: outer = negate(n->b * call(Fn::sn, u, n->b) * call(Fn::cn, u, n->b)); break;
      }
      return outer * du;
    }
  }
  return constant(0.0);
}

const char* fn_name(Fn fn) {
  static constexpr const char* names[] = {"sin",  "cos",  "tan",    "cot", "sec", "cosec", "sinh",
                                          "cosh", "tanh", "coth",   "sech", "cosech", "exp", "ln",
                                          "sqrt", "abs",  "sign",   "sn",  "cn",  "dn"};
  return names[static_cast<int>(fn)];
}

std::string to_text(const Node& n) {
  switch (n.op) {
    case Op::constant: {
      char buf[32];
      auto r = std::to_chars(buf, buf + sizeof buf, n.value);
      return std::string(buf, r.ptr);
    }
    case Op::var: return "x";
    case Op::add: return "(" + to_text(*n.a) + " + " + to_text(*n.b) + ")";
    case Op::sub: return "(" + to_text(*n.a) + " - " + to_text(*n.b) + ")";
    case Op::mul: return "(" + to_text(*n.a) + " * " + to_text(*n.b) + ")";
    case Op::div: return "(" + to_text(*n.a) + " / " + to_text(*n.b) + ")";
    case Op::pow: return "(" + to_text(*n.a) + " ^ " + to_text(*n.b) + ")";
    case Op::neg: return "(-" + to_text(*n.a) + ")";
    case Op::call:
      return std::string(fn_name(n.fn)) + "(" + to_text(*n.a) + (n.b ? ", " + to_text(*n.b) : "") + ")";
  }
  return "?";
}

struct FnEntry {
  std::string_view name;
  Fn fn;
};

constexpr FnEntry kFunctions[] = {
    {"sin", Fn::sin},     {"cos", Fn::cos},       {"tan", Fn::tan},   {"cot", Fn::cot},       {"sec", Fn::sec},
    {"cosec", Fn::cosec}, {"csc", Fn::cosec},     {"sinh", Fn::sinh}, {"cosh", Fn::cosh},     {"tanh", Fn::tanh},
    {"coth", Fn::coth},   {"sech", Fn::sech},     {"cosech", Fn::cosech}, {"csch", Fn::cosech}, {"exp", Fn::exp},
    {"ln", Fn::ln},       {"log", Fn::ln},        {"sqrt", Fn::sqrt}, {"abs", Fn::abs},       {"sn", Fn::sn},
    {"cn", Fn::cn},       {"dn", Fn::dn},
};

class Parser {
 public:
  Parser(std::string_view text, const Params& params) : s_(text), params_(params) {}

  NodePtr parse_all() {
    NodePtr n = expression();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return n;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  NodePtr expression() {
    NodePtr n = term();
    for (;;) {
      if (accept('+'))
        n = n + term();
      else if (accept('-'))
        n = n - term();
      else
        return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (accept('*'))
        n = n * unary();
      else if (accept('/'))
        n = n / unary();
      else
        return n;
    }
  }

  NodePtr unary() {
    if (accept('-')) return negate(unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return binary(Op::pow, std::move(base), unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expression();
      expect(')');
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    double v = 0.0;
    auto r = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (r.ec != std::errc()) throw ParseError("malformed number", start);
    pos_ = static_cast<std::size_t>(r.ptr - s_.data());
    return constant(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string_view name = s_.substr(start, pos_ - start);
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      for (const auto& f : kFunctions) {
        if (f.name != name) continue;
        ++pos_;
        NodePtr arg = expression();
        NodePtr m;
        if (f.fn == Fn::sn || f.fn == Fn::cn || f.fn == Fn::dn) {
          expect(',');
          m = expression();
          if (depends(m)) throw ParseError("the parameter of " + std::string(name) + " must not depend on x", start);
        }
        expect(')');
        return call(f.fn, std::move(arg), std::move(m));
      }
      throw ParseError("unknown function '" + std::string(name) + "'", start);
    }
    if (name == "x") return variable();
    if (name == "pi") return constant(std::numbers::pi);
    if (name == "e") return constant(std::numbers::e);
    if (auto it = params_.find(std::string(name)); it != params_.end()) return constant(it->second);
    throw ParseError("unknown name '" + std::string(name) + "'", start);
  }

  std::string_view s_;
  const Params& params_;
  std::size_t pos_ = 0;
};

}  // namespace

double Expression::operator()(double x) const { return eval(*root_, x); }

Expression Expression::derivative() const { return Expression(diff(root_)); }

bool Expression::depends_on_x() const { return depends(root_); }

std::string Expression::str() const { return to_text(*root_); }

Expression parse(std::string_view text, const Params& params) { return Expression(Parser(text, params).parse_all()); }

double evaluate_constant(std::string_view text, const Params& params) {
  const Expression e = parse(text, params);
  if (e.depends_on_x()) throw ParseError("constant expected, found a function of x", 0);
  return e(0.0);
}

}  // namespace susy::expr
