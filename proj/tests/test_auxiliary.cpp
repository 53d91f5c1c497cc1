#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "tailaux/auxiliary.hpp"
#include "tailaux/distributions.hpp"

using namespace tailaux;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::max(1e-300, std::fabs(b)); }
double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }
}  // namespace

TEST_CASE("all four routes are exact on a pure exponential") {
  const auto spec = make_distribution("exponential_like", {{"lambda", 2.0}});
  const AuxiliaryFunction routes[] = {
      psi_catalog(spec, CatalogPsi::Universal),
      psi_integral_universal(spec),
      psi_reciprocal_hazard(spec),
      psi_from_zeta(spec),
  };
  for (const auto& psi : routes)
    for (double x : {1.0, 5.0, 40.0, 300.0}) CHECK(rel(psi.eval(x), 0.5) < 1e-9);
}

TEST_CASE("all routes are exact on a power tail") {
  // Pareto alpha=2: psi_u = x/2 for catalog, integral, hazard and zeta.
  const auto spec = make_distribution("pareto_like");
  const AuxiliaryFunction routes[] = {
      psi_catalog(spec, CatalogPsi::Universal),
      psi_integral_universal(spec),
      psi_reciprocal_hazard(spec),
      psi_from_zeta(spec),
  };
  for (const auto& psi : routes)
    for (double x : {2.0, 7.0, 120.0}) CHECK(rel(psi.eval(x), 0.5 * x) < 1e-8);
}

TEST_CASE("mirrored routes are exact near a finite endpoint") {
  const auto spec = make_distribution("pareto_like_finite");
  const AuxiliaryFunction routes[] = {
      psi_catalog(spec, CatalogPsi::Universal),
      psi_integral_universal(spec),
      psi_reciprocal_hazard(spec),
      psi_from_zeta(spec),
  };
  for (const auto& psi : routes)
    for (double x : {0.3, 0.8, 0.99}) CHECK(rel(psi.eval(x), (1.0 - x) / 2.0) < 1e-8);
}

TEST_CASE("catalog closed forms at hand-checked points") {
  const auto gam = make_distribution("gamma");
  CHECK(rel(psi_catalog(gam, CatalogPsi::Universal).eval(3.0), 1.5) < 1e-13);

  const auto lg = make_distribution("loggamma");
  const double e2 = std::exp(2.0);
  CHECK(rel(psi_catalog(lg, CatalogPsi::Universal).eval(e2), e2) < 1e-13);

  const auto gauss = make_distribution("gaussian");
  CHECK(rel(psi_catalog(gauss, CatalogPsi::Universal).eval(2.0), 0.4) < 1e-13);
  CHECK(rel(psi_catalog(gauss, CatalogPsi::VrSimple).eval(4.0), 0.25) < 1e-13);

  DistributionSpec bare;
  bare.id = "bare";
  CHECK_THROWS_AS(psi_catalog(bare, CatalogPsi::Universal), std::invalid_argument);
}

TEST_CASE("reciprocal hazard of the standard normal at the origin") {
  const auto spec = make_distribution("gaussian");
  const auto psi = psi_reciprocal_hazard(spec);
  CHECK(rel(psi.eval(0.0), std::sqrt(M_PI / 2.0)) < 1e-11);
}

TEST_CASE("zeta construction from a user-supplied function") {
  const auto zeta = [](double x) { return norm_pdf(x) / x; };
  // numeric derivative fallback
  const auto num = psi_from_zeta(zeta, 0.0);
  CHECK(rel(num.eval(2.0), 0.4) < 1e-8);
  // analytic derivative
  const auto ana = psi_from_zeta(zeta, 0.0, [](double x) {
    return -norm_pdf(x) * (1.0 + x * x) / (x * x);
  });
  CHECK(rel(ana.eval(2.0), 0.4) < 1e-13);
  CHECK(ana.note.empty());
  // a wrong analytic derivative is flagged at construction
  const auto off = psi_from_zeta(zeta, 0.0, [](double x) {
    return -1.002 * norm_pdf(x) * (1.0 + x * x) / (x * x);
  });
  CHECK(!off.note.empty());
}

TEST_CASE("spec-registered zeta route survives survival underflow") {
  // x = 800: the gaussian zeta itself is exp(-320000), far below the
  // double range; the log-derivative form keeps the route exact.
  const auto psi = psi_from_zeta(make_distribution("gaussian"));
  for (double x : {2.0, 40.0, 800.0})
    CHECK(rel(psi.eval(x), x / (1.0 + x * x)) < 1e-14);
}

TEST_CASE("classic Gumbel forms of the gamma distribution") {
  // F_bar = (1+x) e^{-x}: mean excess (2+x)/(1+x), double form (3+x)/(2+x).
  const auto spec = make_distribution("gamma");
  const auto me = psi_classic(spec, ClassicForm::MeanExcess);
  const auto dme = psi_classic(spec, ClassicForm::DoubleMeanExcess);
  CHECK(me.quadrature_backed);
  for (double x : {1.0, 2.0, 10.0}) {
    CHECK(rel(me.eval(x), (2.0 + x) / (1.0 + x)) < 1e-9);
    CHECK(rel(dme.eval(x), (3.0 + x) / (2.0 + x)) < 1e-9);
  }
}

TEST_CASE("gaussian mean excess at frozen points") {
  const auto me = psi_classic(make_distribution("gaussian"), ClassicForm::MeanExcess);
  CHECK(rel(me.eval(3.0), 0.28309865493043651) < 1e-9);
  CHECK(rel(me.eval(10.0), 0.09809323396251196) < 1e-9);
}

TEST_CASE("linear form follows the tail index") {
  const auto par = make_distribution("pareto_like");
  CHECK(rel(psi_classic(par, ClassicForm::LinearGamma).eval(6.0), 3.0) < 1e-13);
  const auto fin = make_distribution("pareto_like_finite");
  CHECK(rel(psi_classic(fin, ClassicForm::LinearGamma).eval(0.8), 0.1) < 1e-13);
  CHECK_THROWS_AS(psi_classic(make_distribution("gaussian"), ClassicForm::LinearGamma),
                  std::invalid_argument);
}

TEST_CASE("divergent mean excess reports NaN, not a crash") {
  const auto me = psi_classic(make_distribution("cauchy"), ClassicForm::MeanExcess);
  CHECK(std::isnan(me.eval(5.0)));
}

TEST_CASE("construction metadata") {
  const auto spec = make_distribution("gamma");
  CHECK(psi_catalog(spec, CatalogPsi::Universal).x_star == doctest::Approx(1.0));
  CHECK(psi_catalog(spec, CatalogPsi::Universal).source_expr == "x/(beta*x-alpha+1)");
  CHECK(psi_integral_universal(spec).quadrature_backed);
  CHECK(!psi_catalog(spec, CatalogPsi::Universal).quadrature_backed);
  const auto lg = make_distribution("loggamma");
  CHECK(psi_catalog(lg, CatalogPsi::Universal).x_star == doctest::Approx(std::exp(1.0)));
}
