#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tailaux/distributions.hpp"

namespace tailaux {

// Strictly increasing evaluation points approaching the endpoint.
struct ProbeGrid {
  std::vector<double> points;
  double x_e = kInf;
  std::string rule;  // human-readable description for reports

  static ProbeGrid geometric(double x0, double ratio, int count, double x_e = kInf);
  // x_k = exp(e0 * ratio^k); for distributions converging on log-log scale
  static ProbeGrid log_geometric(double e0, double ratio, int count);
  // x_k = x_e - d0 * shrink^k
  static ProbeGrid toward_finite(double x_e, double d0, double shrink, int count);
};

struct GridOptions {
  std::optional<double> start;
  std::optional<double> ratio;
  std::optional<int> count;
};

// Default grid for a distribution: geometric 2 * 1.5^k (m=16) toward an
// infinite endpoint, log-geometric for lognormal-type tails, and
// x_e - d0 * 0.5^k toward a finite endpoint.  Points at or below
// min_start (for example an x_star pole) are skipped by advancing the
// start, keeping the count.
ProbeGrid default_grid(const DistributionSpec& spec, double min_start = -kInf,
                       const GridOptions& opt = {});

enum class Trend { Converged, DivergedToInfinity, DivergedToZero, Oscillatory, Inconclusive };

const char* to_string(Trend t);

struct LimitEstimate {
  Trend verdict = Trend::Inconclusive;
  std::optional<double> limit;
  double window_spread = 0.0;
  std::string detail;
};

// Trailing-window limit estimation over >= 8 values.  Converged keeps
// window spread <= tol * max(1, |limit|); the limit is the window mean,
// refined by one Aitken delta-squared step when the tail differences
// shrink geometrically.  Monotone trails whose increments stay above
// tol (or whose magnitude passes 1/tol) are classified divergent; the
// Cauchy criterion on increments is what catches log log x growth.
// positive_limit_required turns "converged to 0" into DivergedToZero
// for callers that need a positive limit.
LimitEstimate estimate_limit(const std::vector<double>& values, double tol,
                             bool positive_limit_required = false);

// Central difference with h = eps^(1/3) * max(1, |x|); NaN if either
// evaluation fails.
double numeric_derivative(const std::function<double(double)>& f, double x);

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = false;
  // Subinterval that failed to settle or produced NaN, when one did.
  double fail_lo = 0.0, fail_hi = 0.0;
};

// Thrown when an integral cannot be brought below tolerance; carries
// the partial estimate for the report.
struct QuadratureError : std::runtime_error {
  QuadratureError(const std::string& what, double partial_, double lo, double hi)
      : std::runtime_error(what), partial(partial_), fail_lo(lo), fail_hi(hi) {}
  double partial;
  double fail_lo, fail_hi;
};

// Adaptive Gauss-Kronrod 7/15 on [a, b].
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_floor = 0.0);

// integral_0^inf f(t) dt via t = scale * s/(1-s).
QuadResult integrate_semi_infinite(const std::function<double(double)>& f, double scale,
                                   double rel_tol);

// integral over [a,b] under x = e^w, for integrands spread across many
// decades of a positive axis; requires 0 < a < b.
QuadResult integrate_log_substituted(const std::function<double(double)>& f, double a, double b,
                                     double rel_tol, double abs_floor = 0.0);

// integral over [a,b] (b < x_e) under x_e - x = e^-s, for finite
// endpoints approached geometrically.
QuadResult integrate_logdist_substituted(const std::function<double(double)>& f, double x_e,
                                         double a, double b, double rel_tol,
                                         double abs_floor = 0.0);

// Smallest honest relative tolerance for integrands built from
// exp(logsf(y) - logsf(x)): the subtraction leaves absolute noise of
// order |logsf| * eps.
double log_diff_noise_floor(double log_sf_at_x);

enum class TailIntegralMode { Single, Double, Triple };

// integral_0^(x_e - x) exp(logsf(x+t) - logsf(x)) w(t) dt with weight
// w = 1, t, t^2/2; the F-bar-normalized once/twice/thrice iterated tail
// integral.  Throws QuadratureError when refinement fails (for example
// a divergent mean excess).
double tail_ratio_integral(const DistributionSpec& spec, double x, TailIntegralMode mode,
                           double rel_tol = 1e-11);

// All three weights with the common decay scale factored out:
// integral with weight t^j/j! equals scale^(j+1) * i[j].  Keeps the
// triple combination representable when scale^2 alone would overflow.
struct ScaledTailIntegrals {
  double scale = 0.0;
  double i1 = 0.0, i2 = 0.0, i3 = 0.0;
};

ScaledTailIntegrals tail_ratio_integrals_scaled(const DistributionSpec& spec, double x,
                                                double rel_tol = 1e-11);

// t > 0 with logsf(x+t) - logsf(x) roughly -1; the natural decay scale
// of the survival ratio at x.
double tail_decay_scale(const DistributionSpec& spec, double x);

// Prefix sums of panel quadratures of f from z to each grid point
// beyond z (trail starts with the seed point (z, 0)).  Panels use the
// log-axis substitution fitting the grid shape, so trails spanning
// decades or collapsing onto a finite endpoint stay cheap.  A panel
// that cannot be settled stops the trail: converged=false and the
// offending subinterval reported.
struct CumulativeTrail {
  std::vector<double> x;
  std::vector<double> value;
  bool converged = true;
  double fail_lo = 0.0, fail_hi = 0.0;
};

CumulativeTrail cumulative_quadrature(const std::function<double(double)>& f, double z,
                                      const ProbeGrid& grid, double rel_tol,
                                      double abs_floor = 0.0);

}  // namespace tailaux
