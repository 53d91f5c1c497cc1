#include "tailaux/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tailaux::special {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // ln sqrt(2*pi)
constexpr double kFpMin = 1e-300;

// erfc handles the body of the normal distribution; beyond this the
// continued fraction has fully converged and erfc is near underflow.
constexpr double kMillsSwitch = 8.0;

}  // namespace

double normal_logpdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

double mills_ratio_cf(double x) {
  // Phi_bar(x)/phi(x) = 1/(x + 1/(x + 2/(x + 3/(...)))).  Backward
  // recurrence; depth 120 is far past convergence for x >= 8.
  double d = x;
  for (int k = 120; k >= 1; --k) d = x + k / d;
  return 1.0 / d;
}

double log_normal_sf(double x) {
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x <= kMillsSwitch) return std::log(0.5 * std::erfc(x * M_SQRT1_2));
  return normal_logpdf(x) + std::log(mills_ratio_cf(x));
}

namespace {

// Series for the regularized lower incomplete gamma P(a, y), y < a+1.
double gamma_p_series(double a, double y) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 10000; ++i) {
    ap += 1.0;
    del *= y / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
  }
  double logp = -y + a * std::log(y) - std::lgamma(a) + std::log(sum);
  return std::exp(logp);
}

// ln of the Lentz continued fraction H with Gamma(a,y) = e^-y y^a H.
double log_gamma_q_cf(double a, double y) {
  double b = y + 1.0 - a;
  double c = 1.0 / kFpMin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 10000; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = b + an / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-17) break;
  }
  return -y + a * std::log(y) - std::lgamma(a) + std::log(h);
}

}  // namespace

double log_gamma_q(double a, double y) {
  if (!(a > 0.0) || y < 0.0) throw std::domain_error("log_gamma_q: need a > 0, y >= 0");
  if (y == 0.0) return 0.0;
  if (y < a + 1.0) {
    double p = gamma_p_series(a, y);
    return std::log1p(-p);
  }
  return log_gamma_q_cf(a, y);
}

double log_beta_fn(double p, double q) {
  return std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q);
}

namespace {

// Lentz continued fraction for the regularized incomplete beta I_x(a,b),
// converging for x < (a+1)/(a+b+2).
double betacf(double a, double b, double x) {
  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-17) break;
  }
  return h;
}

// ln I_x(a,b) assuming x is on the convergent side of the fraction.
double log_inc_beta(double a, double b, double x) {
  double lead = a * std::log(x) + b * std::log1p(-x) - std::log(a) - log_beta_fn(a, b);
  return lead + std::log(betacf(a, b, x));
}

}  // namespace

double log_beta_sf(double x, double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) throw std::domain_error("log_beta_sf: need p, q > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return -std::numeric_limits<double>::infinity();
  // P(X > x) = I_{1-x}(q, p)
  double y = 1.0 - x;
  if (y < (q + 1.0) / (p + q + 2.0)) return log_inc_beta(q, p, y);
  // Complement side: I_{1-x}(q,p) = 1 - I_x(p,q), and here I_x(p,q) is
  // the numerically small piece, so no cancellation trouble.
  double li = log_inc_beta(p, q, x);
  return std::log1p(-std::exp(li));
}

}  // namespace tailaux::special
