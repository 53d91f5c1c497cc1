#include "tailaux/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tailaux {
namespace {

ExprPtr node(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

ExprPtr unary(ExprNode::Tag tag, ExprPtr a, std::string name = {}) {
  ExprNode n;
  n.tag = tag;
  n.a = std::move(a);
  n.name = std::move(name);
  return node(std::move(n));
}

ExprPtr binary(ExprNode::Tag tag, ExprPtr a, ExprPtr b) {
  ExprNode n;
  n.tag = tag;
  n.a = std::move(a);
  n.b = std::move(b);
  return node(std::move(n));
}

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  ExprPtr run() {
    skip_ws();
    if (pos_ >= src_.size()) fail("expression", "non-empty input");
    ExprPtr e = expr();
    skip_ws();
    if (pos_ < src_.size()) fail("end of input", "operator or end");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& wanted, const std::string& expected) {
    std::ostringstream os;
    os << "syntax error at offset " << pos_ << ": expected " << wanted;
    throw ParseError(os.str(), pos_, expected);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (eat('+'))
        e = binary(ExprNode::Tag::Add, e, term());
      else if (eat('-'))
        e = binary(ExprNode::Tag::Sub, e, term());
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    for (;;) {
      if (eat('*'))
        e = binary(ExprNode::Tag::Mul, e, factor());
      else if (eat('/'))
        e = binary(ExprNode::Tag::Div, e, factor());
      else
        return e;
    }
  }

  // '-' factor | atom ('^' factor)?  -- negation wraps the whole power,
  // so -2^2 is -(2^2).
  ExprPtr factor() {
    if (eat('-')) return unary(ExprNode::Tag::Neg, factor());
    ExprPtr base = atom();
    if (eat('^')) return binary(ExprNode::Tag::Pow, base, factor());
    return base;
  }

  ExprPtr atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("operand", "number, name or '('");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!eat(')')) fail("')'", ")");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail("operand", "number, name or '('");
  }

  ExprPtr number() {
    const char* begin = src_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("number", "number");
    pos_ += static_cast<std::size_t>(end - begin);
    ExprNode n;
    n.tag = ExprNode::Tag::Number;
    n.number = v;
    return node(std::move(n));
  }

  ExprPtr name() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string id = src_.substr(start, pos_ - start);
    if (peek() == '(') {
      if (id != "log" && id != "exp" && id != "sqrt") {
        pos_ = start;
        fail("function log, exp or sqrt", "log|exp|sqrt");
      }
      ++pos_;  // consume '('
      ExprPtr arg = expr();
      if (!eat(')')) fail("')'", ")");
      return unary(ExprNode::Tag::Call, std::move(arg), std::move(id));
    }
    if (id == "x") {
      ExprNode n;
      n.tag = ExprNode::Tag::Var;
      return node(std::move(n));
    }
    ExprNode n;
    n.tag = ExprNode::Tag::Param;
    n.name = std::move(id);
    return node(std::move(n));
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

void collect_params(const ExprPtr& n, std::set<std::string>* out) {
  if (!n) return;
  if (n->tag == ExprNode::Tag::Param) out->insert(n->name);
  collect_params(n->a, out);
  collect_params(n->b, out);
}

void print_node(const ExprPtr& n, std::ostringstream& os) {
  switch (n->tag) {
    case ExprNode::Tag::Number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n->number);
      os << buf;
      break;
    }
    case ExprNode::Tag::Var:
      os << 'x';
      break;
    case ExprNode::Tag::Param:
      os << n->name;
      break;
    case ExprNode::Tag::Neg:
      os << "(-";
      print_node(n->a, os);
      os << ')';
      break;
    case ExprNode::Tag::Call:
      os << n->name << '(';
      print_node(n->a, os);
      os << ')';
      break;
    default: {
      const char op = n->tag == ExprNode::Tag::Add   ? '+'
                      : n->tag == ExprNode::Tag::Sub ? '-'
                      : n->tag == ExprNode::Tag::Mul ? '*'
                      : n->tag == ExprNode::Tag::Div ? '/'
                                                     : '^';
      os << '(';
      print_node(n->a, os);
      os << op;
      print_node(n->b, os);
      os << ')';
    }
  }
}

}  // namespace

PsiExpression parse_psi(const std::string& source) {
  if (source.empty()) throw ParseError("empty expression", 0, "non-empty input");
  PsiExpression e;
  e.source = source;
  e.ast = Parser(source).run();
  collect_params(e.ast, &e.free_params);
  return e;
}

std::string to_string(const PsiExpression& expr) {
  std::ostringstream os;
  print_node(expr.ast, os);
  return os.str();
}

double eval_expr(const ExprPtr& n, double x, const std::map<std::string, double>& bindings) {
  switch (n->tag) {
    case ExprNode::Tag::Number:
      return n->number;
    case ExprNode::Tag::Var:
      return x;
    case ExprNode::Tag::Param: {
      auto it = bindings.find(n->name);
      if (it == bindings.end())
        throw std::invalid_argument("unbound parameter '" + n->name + "'");
      return it->second;
    }
    case ExprNode::Tag::Neg:
      return -eval_expr(n->a, x, bindings);
    case ExprNode::Tag::Call: {
      const double a = eval_expr(n->a, x, bindings);
      if (n->name == "log") return a > 0.0 ? std::log(a) : std::nan("");
      if (n->name == "exp") return std::exp(a);
      return a >= 0.0 ? std::sqrt(a) : std::nan("");
    }
    case ExprNode::Tag::Add:
      return eval_expr(n->a, x, bindings) + eval_expr(n->b, x, bindings);
    case ExprNode::Tag::Sub:
      return eval_expr(n->a, x, bindings) - eval_expr(n->b, x, bindings);
    case ExprNode::Tag::Mul:
      return eval_expr(n->a, x, bindings) * eval_expr(n->b, x, bindings);
    case ExprNode::Tag::Div: {
      const double b = eval_expr(n->b, x, bindings);
      if (b == 0.0) return std::nan("");
      return eval_expr(n->a, x, bindings) / b;
    }
    default:
      return std::pow(eval_expr(n->a, x, bindings), eval_expr(n->b, x, bindings));
  }
}

AuxiliaryFunction to_auxiliary(const PsiExpression& expr,
                               const std::map<std::string, double>& bindings, double x_star) {
  for (const std::string& p : expr.free_params)
    if (!bindings.count(p)) throw std::invalid_argument("unbound parameter '" + p + "'");
  AuxiliaryFunction f;
  ExprPtr ast = expr.ast;
  f.eval = [ast, bindings](double x) {
    const double v = eval_expr(ast, x, bindings);
    return std::isfinite(v) ? v : std::nan("");
  };
  f.x_star = x_star;
  f.kind = PsiKind::UserExpression;
  f.source_expr = expr.source;
  return f;
}

}  // namespace tailaux
