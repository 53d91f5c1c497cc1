#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

#include "tailaux/aux_function.hpp"

namespace tailaux {

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Tag { Number, Var, Param, Neg, Add, Sub, Mul, Div, Pow, Call };
  Tag tag = Tag::Number;
  double number = 0.0;
  std::string name;  // parameter or function name
  ExprPtr a, b;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t offset_, std::string expected_)
      : std::runtime_error(what), offset(offset_), expected(std::move(expected_)) {}
  std::size_t offset;
  std::string expected;
};

struct PsiExpression {
  std::string source;
  ExprPtr ast;
  std::set<std::string> free_params;
};

// Grammar: expr := term (('+'|'-') term)*; term := factor (('*'|'/')
// factor)*; factor := '-' factor | atom ('^' factor)?; atom := number |
// 'x' | ident | ident '(' expr ')' | '(' expr ')'.  '^' is
// right-associative and negation applies to the whole power, so -2^2 is
// -4.  Functions: log (natural), exp, sqrt.  No implicit
// multiplication.  Throws ParseError with the byte offset.
PsiExpression parse_psi(const std::string& source);

// Fully parenthesized rendering; parse(print(e)) prints identically.
std::string to_string(const PsiExpression& expr);

// NaN marks a point-wise failure (division by zero, log of a
// non-positive value, non-finite intermediate).
double eval_expr(const ExprPtr& node, double x, const std::map<std::string, double>& bindings);

// Bind parameters and package as a candidate; unbound names throw.
AuxiliaryFunction to_auxiliary(const PsiExpression& expr,
                               const std::map<std::string, double>& bindings, double x_star);

}  // namespace tailaux
