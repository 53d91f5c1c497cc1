#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "expr_reference.hpp"
#include "tailaux/expr.hpp"

using namespace tailaux;

namespace {

double ev(const std::string& src, double x = 0.0,
          const std::map<std::string, double>& bind = {}) {
  return eval_expr(parse_psi(src).ast, x, bind);
}

}  // namespace

TEST_CASE("precedence fixtures") {
  CHECK(ev("2+3*4^2") == 50.0);
  CHECK(ev("-2^2") == -4.0);
  CHECK(ev("(-2)^2") == 4.0);
  CHECK(ev("2^3^2") == 512.0);  // right-associative power
  CHECK(ev("2^-1") == 0.5);
  CHECK(ev("6/3/2") == 1.0);    // left-associative division
  CHECK(ev("1-2-3") == -4.0);
  CHECK(ev("2*-3") == -6.0);
}

TEST_CASE("variables, functions and whitespace") {
  CHECK(ev("x*log(x)/(1+log(x)^2)", std::exp(1.0)) == doctest::Approx(std::exp(1.0) / 2.0));
  CHECK(ev("sqrt(x)", 9.0) == 3.0);
  CHECK(ev("exp( log( 7 ) )") == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(ev("  1 +  2*x ", 3.0) == 7.0);
  CHECK(ev("1.5e2") == 150.0);
}

TEST_CASE("free parameters") {
  const auto e = parse_psi("a*x + b/q");
  CHECK(e.free_params == std::set<std::string>{"a", "b", "q"});
  CHECK(eval_expr(e.ast, 2.0, {{"a", 3.0}, {"b", 8.0}, {"q", 4.0}}) == 8.0);
  CHECK_THROWS_AS(eval_expr(e.ast, 2.0, {{"a", 3.0}}), std::invalid_argument);
  // x is the variable, never a parameter
  CHECK(parse_psi("x*x").free_params.empty());
}

TEST_CASE("point failures evaluate to NaN") {
  CHECK(std::isnan(ev("log(x-5)", 1.0)));
  CHECK(std::isnan(ev("log(0)")));
  CHECK(std::isnan(ev("sqrt(0-4)")));
  CHECK(std::isnan(ev("1/(x-x)", 3.0)));
}

TEST_CASE("parse errors carry the byte offset") {
  try {
    parse_psi("2+");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 2);
    CHECK(!e.expected.empty());
  }
  try {
    parse_psi("(1+2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 4);
  }
  try {
    parse_psi("2 @ 3");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 2);
  }
  CHECK_THROWS_AS(parse_psi(""), ParseError);
  CHECK_THROWS_AS(parse_psi("2 3"), ParseError);
  CHECK_THROWS_AS(parse_psi("log 2"), ParseError);
  try {
    parse_psi("foo(2)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 0);
    CHECK(e.expected == "log|exp|sqrt");
  }
}

TEST_CASE("rendering reaches a fixed point") {
  for (const std::string src :
       {"2+3*4^2", "-2^2", "x*log(x)/(1+log(x)^2)", "a*x+b", "sqrt(x)^-2"}) {
    const std::string once = to_string(parse_psi(src));
    const std::string twice = to_string(parse_psi(once));
    CHECK(once == twice);
    // rendering preserves meaning
    const auto bind = std::map<std::string, double>{{"a", 1.25}, {"b", -0.5}};
    CHECK(exprref::values_agree(eval_expr(parse_psi(src).ast, 1.7, bind),
                                eval_expr(parse_psi(once).ast, 1.7, bind)));
  }
}

TEST_CASE("packaging as an auxiliary function") {
  const auto expr = parse_psi("c*x^2");
  const auto psi = to_auxiliary(expr, {{"c", 0.5}}, 1.0);
  CHECK(psi.eval(4.0) == 8.0);
  CHECK(psi.x_star == 1.0);
  CHECK(psi.kind == PsiKind::UserExpression);
  CHECK_THROWS_AS(to_auxiliary(expr, {}, 0.0), std::invalid_argument);
}

TEST_CASE("differential against the reference evaluator") {
  exprref::Generator gen(20240817);
  const double xs[] = {0.7, 1.3, 2.9};
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::string src = gen.next();
    CAPTURE(src);
    double mine[3], ref[3];
    for (int j = 0; j < 3; ++j) {
      mine[j] = eval_expr(parse_psi(src).ast, xs[j], {});
      ref[j] = exprref::eval_reference(src, xs[j]);
      if (!exprref::values_agree(mine[j], ref[j])) ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}
