#pragma once

#include <functional>
#include <limits>
#include <string>

namespace tailaux {

enum class PsiKind {
  FromZeta,
  ReciprocalHazard,
  IntegralGumbel,
  IntegralFrechet,
  IntegralWeibull,
  MeanExcess,
  DoubleMeanExcess,
  LinearGamma,
  Catalog,
  UserExpression,
};

const char* to_string(PsiKind k);

// A candidate auxiliary function psi.  eval returns NaN for point-wise
// failures (pole, domain error); callers treat NaN as "this point is
// unusable", never as a crash.
struct AuxiliaryFunction {
  std::function<double(double)> eval;
  // Left end of the domain where psi is positive and well defined.
  double x_star = -std::numeric_limits<double>::infinity();
  PsiKind kind = PsiKind::Catalog;
  // Printable form when one exists (catalog entries, user expressions).
  std::string source_expr;
  // True when eval runs adaptive quadrature internally; consumers relax
  // their own tolerances so they do not chase integration noise.
  bool quadrature_backed = false;
  // Construction-time diagnostics (for example analytic/numeric
  // derivative disagreement).
  std::string note;
};

}  // namespace tailaux
