#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "tailaux/numerics.hpp"

using namespace tailaux;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::max(1e-300, std::fabs(b)); }
}  // namespace

TEST_CASE("probe grids are strictly increasing") {
  const auto g = ProbeGrid::geometric(2.0, 1.5, 16);
  REQUIRE(g.points.size() == 16);
  CHECK(g.points.front() == doctest::Approx(2.0));
  for (std::size_t i = 1; i < g.points.size(); ++i) CHECK(g.points[i] > g.points[i - 1]);

  const auto lg = ProbeGrid::log_geometric(1.0, 1.4, 12);
  for (std::size_t i = 1; i < lg.points.size(); ++i) CHECK(lg.points[i] > lg.points[i - 1]);

  const auto tf = ProbeGrid::toward_finite(1.0, 0.25, 0.5, 14);
  CHECK(tf.x_e == 1.0);
  for (std::size_t i = 0; i < tf.points.size(); ++i) {
    CHECK(tf.points[i] < 1.0);
    if (i) CHECK(tf.points[i] > tf.points[i - 1]);
  }
}

TEST_CASE("default grids fit the tail shape") {
  const auto gauss = default_grid(make_distribution("gaussian"));
  CHECK(gauss.points.front() == doctest::Approx(2.0));
  CHECK(gauss.points.size() >= 8);

  const auto beta = default_grid(make_distribution("beta"));
  CHECK(beta.x_e == 1.0);
  CHECK(beta.points.back() < 1.0);
  CHECK(beta.points.back() > 0.99);

  // min_start advances past a pole without shrinking the grid
  const auto shifted = default_grid(make_distribution("gaussian"), 10.0);
  CHECK(shifted.points.front() > 10.0);
  CHECK(shifted.points.size() == gauss.points.size());
}

TEST_CASE("adaptive quadrature on closed forms") {
  const auto sq = integrate_adaptive([](double t) { return t * t; }, 0.0, 1.0, 1e-12);
  CHECK(sq.converged);
  CHECK(rel(sq.value, 1.0 / 3.0) < 1e-12);

  const auto sine = integrate_adaptive([](double t) { return std::sin(t); }, 0.0, M_PI, 1e-12);
  CHECK(rel(sine.value, 2.0) < 1e-12);

  const auto expo = integrate_semi_infinite([](double t) { return std::exp(-t); }, 1.0, 1e-11);
  CHECK(rel(expo.value, 1.0) < 1e-10);

  const auto ray = integrate_semi_infinite(
      [](double t) { return t * std::exp(-0.5 * t * t); }, 1.0, 1e-11);
  CHECK(rel(ray.value, 1.0) < 1e-10);
}

TEST_CASE("log-axis substitution spans many decades") {
  const auto r = integrate_log_substituted([](double t) { return 1.0 / (t * t); }, 1.0, 1e6,
                                           1e-12);
  CHECK(r.converged);
  CHECK(rel(r.value, 1.0 - 1e-6) < 1e-10);
}

TEST_CASE("log-distance substitution resolves a finite endpoint") {
  const auto r = integrate_logdist_substituted(
      [](double t) { return 1.0 / std::sqrt(1.0 - t); }, 1.0, 0.0, 1.0 - 1e-6, 1e-12);
  CHECK(r.converged);
  CHECK(rel(r.value, 2.0 * (1.0 - 1e-3)) < 1e-9);
}

TEST_CASE("non-integrable singularity is reported, not silently accepted") {
  const auto r = integrate_adaptive([](double t) { return 1.0 / t; }, 0.0, 1.0, 1e-10);
  CHECK(!r.converged);
  CHECK(r.fail_lo < r.fail_hi);
  CHECK(r.fail_lo < 1e-3);
}

TEST_CASE("normalized tail integrals of a pure exponential") {
  // F_bar = e^{-2x}: the three iterated integrals are 1/2, 1/4, 1/8.
  const auto spec = make_distribution("exponential_like", {{"lambda", 2.0}});
  CHECK(rel(tail_ratio_integral(spec, 1.0, TailIntegralMode::Single), 0.5) < 1e-9);
  CHECK(rel(tail_ratio_integral(spec, 1.0, TailIntegralMode::Double), 0.25) < 1e-9);
  CHECK(rel(tail_ratio_integral(spec, 1.0, TailIntegralMode::Triple), 0.125) < 1e-9);

  const auto s = tail_ratio_integrals_scaled(spec, 1.0);
  CHECK(rel(s.scale * s.i1, 0.5) < 1e-9);
  CHECK(rel(s.scale * s.scale * s.i2, 0.25) < 1e-9);
  CHECK(rel(s.scale * s.scale * s.scale * s.i3, 0.125) < 1e-9);
}

TEST_CASE("normalized tail integral of a power tail") {
  // Pareto alpha=2 at x=10: int (x/(x+t))^2 dt = x.
  const auto spec = make_distribution("pareto_like");
  CHECK(rel(tail_ratio_integral(spec, 10.0, TailIntegralMode::Single), 10.0) < 1e-9);
}

TEST_CASE("divergent tail integral throws with a partial estimate") {
  // Cauchy has no mean: the once-iterated tail integral cannot settle.
  const auto spec = make_distribution("cauchy");
  CHECK_THROWS_AS(tail_ratio_integral(spec, 5.0, TailIntegralMode::Single), QuadratureError);
}

TEST_CASE("decay scale of a pure exponential") {
  // The contract is a bracket, not a point: the survival ratio at the
  // returned offset must sit in [e^-2.5, e^-0.5].  For lambda = 2 the
  // log-ratio at offset s is exactly -2s.
  const auto spec = make_distribution("exponential_like", {{"lambda", 2.0}});
  const double s = tail_decay_scale(spec, 3.0);
  CHECK(-2.0 * s <= -0.5);
  CHECK(-2.0 * s >= -2.5);
}

TEST_CASE("cumulative quadrature accumulates a logarithm") {
  const auto grid = ProbeGrid::geometric(2.0, 1.5, 12);
  const auto t = cumulative_quadrature([](double u) { return 1.0 / u; }, 2.0, grid, 1e-10);
  REQUIRE(t.converged);
  REQUIRE(t.x.size() == 12);
  CHECK(t.value.front() == 0.0);
  for (std::size_t i = 0; i < t.x.size(); ++i)
    CHECK(rel(t.value[i] + std::log(2.0), std::log(t.x[i])) < 1e-8);
}

TEST_CASE("numeric derivative") {
  CHECK(rel(numeric_derivative([](double t) { return std::sin(t); }, 0.5), std::cos(0.5)) <
        1e-9);
}

TEST_CASE("noise floor grows with the log survival magnitude") {
  CHECK(log_diff_noise_floor(-1000.0) > log_diff_noise_floor(-10.0));
  CHECK(log_diff_noise_floor(0.0) > 0.0);
  CHECK(log_diff_noise_floor(-1e6) < 1e-8);
}

TEST_CASE("limit estimation: geometric approach converges with a refined limit") {
  std::vector<double> v;
  for (int k = 0; k < 16; ++k) v.push_back(1.0 + std::pow(0.5, k));
  const auto est = estimate_limit(v, 1e-2);
  CHECK(est.verdict == Trend::Converged);
  CHECK(std::fabs(*est.limit - 1.0) < 1e-10);
}

TEST_CASE("limit estimation: slow geometric tail accepted before the plain window") {
  // ratio 0.85: the raw window spread is still ~0.1 at the end, but the
  // increments are exactly geometric and extrapolate to 3.
  std::vector<double> v;
  for (int k = 0; k < 16; ++k) v.push_back(3.0 - 2.0 * std::pow(0.85, k));
  const auto est = estimate_limit(v, 1e-2);
  CHECK(est.verdict == Trend::Converged);
  CHECK(std::fabs(*est.limit - 3.0) < 1e-9);
}

TEST_CASE("limit estimation: linear growth diverges") {
  std::vector<double> v;
  for (int k = 1; k <= 16; ++k) v.push_back(static_cast<double>(k));
  CHECK(estimate_limit(v, 1e-2).verdict == Trend::DivergedToInfinity);
}

TEST_CASE("limit estimation: log log growth on a geometric grid diverges") {
  // increments shrink like 1 - 1/k, too slowly for a summable tail
  std::vector<double> v;
  for (int k = 0; k < 16; ++k) v.push_back(std::log(std::log(2.0 * std::pow(1.5, k)) + 1.0));
  CHECK(estimate_limit(v, 1e-2).verdict == Trend::DivergedToInfinity);
}

TEST_CASE("limit estimation: harmonic decay is not mistaken for a geometric tail") {
  // Ratios k/(k+2) drift toward 1; Aitken would land at ~1/(2n) with a
  // deceptively small mutual gap.  The drift guard keeps this honest.
  std::vector<double> v;
  for (int k = 1; k <= 16; ++k) v.push_back(1.0 / static_cast<double>(k));
  CHECK(estimate_limit(v, 1e-2).verdict == Trend::Inconclusive);
  CHECK(estimate_limit(v, 1e-2, true).verdict == Trend::Inconclusive);
}

TEST_CASE("limit estimation: constants, oscillation, short input") {
  std::vector<double> c(16, 5.0);
  const auto est = estimate_limit(c, 1e-2);
  CHECK(est.verdict == Trend::Converged);
  CHECK(*est.limit == doctest::Approx(5.0));
  CHECK(est.window_spread == 0.0);

  std::vector<double> osc;
  for (int k = 0; k < 16; ++k) osc.push_back(k % 2 ? 1.0 : -1.0);
  CHECK(estimate_limit(osc, 1e-2).verdict == Trend::Oscillatory);

  std::vector<double> shorty(5, 1.0);
  CHECK(estimate_limit(shorty, 1e-2).verdict == Trend::Inconclusive);
}

TEST_CASE("limit estimation: non-finite entries are dropped and noted") {
  std::vector<double> v;
  for (int k = 0; k < 16; ++k) v.push_back(1.0 + std::pow(0.5, k));
  v[3] = std::nan("");
  v[7] = std::nan("");
  v[11] = std::nan("");
  const auto est = estimate_limit(v, 1e-2);
  CHECK(est.verdict == Trend::Converged);
  CHECK(!est.detail.empty());
}
