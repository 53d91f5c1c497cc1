#include "tailaux/distributions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tailaux/special.hpp"

namespace tailaux {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;

double norm_pdf(double x) { return std::exp(-0.5 * x * x - kLogSqrt2Pi); }

AuxiliaryFunction catalog_psi(std::function<double(double)> f, double x_star,
                              const std::string& expr) {
  AuxiliaryFunction a;
  a.eval = [f = std::move(f)](double x) {
    double v = f(x);
    return (std::isfinite(v) && v > 0.0) ? v : std::numeric_limits<double>::quiet_NaN();
  };
  a.x_star = x_star;
  a.kind = PsiKind::Catalog;
  a.source_expr = expr;
  return a;
}

void require_positive(const std::map<std::string, double>& p, const char* name) {
  if (!(p.at(name) > 0.0))
    throw std::invalid_argument(std::string("parameter must be positive: ") + name);
}

std::map<std::string, double> merge_params(const std::map<std::string, double>& defaults,
                                           const std::map<std::string, double>& given,
                                           const std::string& id) {
  std::map<std::string, double> out = defaults;
  for (const auto& [k, v] : given) {
    if (out.find(k) == out.end())
      throw std::invalid_argument("unknown parameter '" + k + "' for " + id);
    if (!std::isfinite(v))
      throw std::invalid_argument("parameter not finite: " + k);
    out[k] = v;
  }
  return out;
}

// Upper root of log K + alpha*log x = (beta*x)^tau, i.e. where the
// decreasing branch of the weibull_like tail crosses 1.  Left of the
// returned point the survival is clamped to 1.
double weibull_like_support_lo(double K, double alpha, double beta, double tau) {
  double xm = alpha > 0.0 ? std::pow(alpha / (tau * std::pow(beta, tau)), 1.0 / tau) : 0.0;
  auto raw = [&](double x) {
    return std::log(K) + (alpha != 0.0 ? alpha * std::log(x) : 0.0) - std::pow(beta * x, tau);
  };
  if (xm > 0.0 && raw(xm) <= 0.0) return xm;  // whole decreasing branch is < 1
  if (xm == 0.0 && K <= 1.0) return 0.0;
  double lo = std::max(xm, 1e-12), hi = std::max(2.0 * lo, 1.0);
  while (raw(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (raw(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const char* to_string(PsiKind k) {
  switch (k) {
    case PsiKind::FromZeta: return "from_zeta";
    case PsiKind::ReciprocalHazard: return "reciprocal_hazard";
    case PsiKind::IntegralGumbel: return "integral_gumbel";
    case PsiKind::IntegralFrechet: return "integral_frechet";
    case PsiKind::IntegralWeibull: return "integral_weibull";
    case PsiKind::MeanExcess: return "mean_excess";
    case PsiKind::DoubleMeanExcess: return "double_mean_excess";
    case PsiKind::LinearGamma: return "linear_gamma";
    case PsiKind::Catalog: return "catalog";
    case PsiKind::UserExpression: return "user_expression";
  }
  return "unknown";
}

double log_survival_at(const DistributionSpec& spec, double x, TailFlag* flag) {
  if (flag) *flag = TailFlag::Interior;
  if (std::isfinite(spec.x_e) && x >= spec.x_e) {
    if (flag) *flag = TailFlag::AtOrAboveEndpoint;
    return -kInf;
  }
  if (std::isfinite(spec.support_lo) && x <= spec.support_lo) {
    if (flag) *flag = TailFlag::BelowSupport;
    return 0.0;
  }
  return std::min(0.0, spec.log_survival(x));
}

double zeta_at(const DistributionSpec& spec, double x) {
  if (!spec.zeta)
    throw std::domain_error("no tail-equivalent zeta registered for " + spec.id);
  return spec.zeta(x);
}

std::vector<std::string> catalog_ids() {
  return {"gaussian",  "lognormal",   "exponential_like", "gamma",
          "weibull_like", "loggamma", "cauchy",           "pareto_like",
          "beta",      "pareto_like_finite", "gev"};
}

DistributionSpec make_distribution(const std::string& id,
                                   const std::map<std::string, double>& params) {
  DistributionSpec s;
  s.id = id;

  if (id == "gaussian") {
    s.params = merge_params({}, params, id);
    s.gamma = 0.0;
    s.x_e = kInf;
    s.support_lo = -kInf;
    s.log_survival = [](double x) { return special::log_normal_sf(x); };
    s.density = [](double x) { return norm_pdf(x); };
    s.density_derivative = [](double x) { return -x * norm_pdf(x); };
    s.log_density = [](double x) { return -0.5 * x * x - kLogSqrt2Pi; };
    s.dd_ratio = [](double x) { return -x; };
    s.zeta = [](double x) { return x > 0.0 ? norm_pdf(x) / x : std::numeric_limits<double>::quiet_NaN(); };
    s.zeta_derivative = [](double x) {
      return x > 0.0 ? -norm_pdf(x) * (1.0 + x * x) / (x * x) : std::numeric_limits<double>::quiet_NaN();
    };
    s.zeta_log_derivative = [](double x) {
      return x > 0.0 ? -(x + 1.0 / x) : std::numeric_limits<double>::quiet_NaN();
    };
    s.catalog_psi_u = catalog_psi([](double x) { return x / (1.0 + x * x); }, 0.0, "x/(1+x^2)");
    s.catalog_psi_vr = catalog_psi([](double x) { return 1.0 / x; }, 0.0, "1/x");
    return s;
  }

  if (id == "lognormal") {
    s.params = merge_params({}, params, id);
    s.gamma = 0.0;
    s.x_e = kInf;
    s.support_lo = 0.0;
    s.grid_hint = GridHint::LogGeometric;
    s.log_survival = [](double x) { return special::log_normal_sf(std::log(x)); };
    s.density = [](double x) { return norm_pdf(std::log(x)) / x; };
    s.density_derivative = [](double x) {
      double L = std::log(x);
      return -norm_pdf(L) * (L + 1.0) / (x * x);
    };
    s.log_density = [](double x) {
      double L = std::log(x);
      return -0.5 * L * L - kLogSqrt2Pi - L;
    };
    s.dd_ratio = [](double x) { return -(std::log(x) + 1.0) / x; };
    s.zeta = [](double x) {
      if (x <= 1.0) return std::numeric_limits<double>::quiet_NaN();
      double L = std::log(x);
      return norm_pdf(L) / L;
    };
    s.zeta_derivative = [](double x) {
      if (x <= 1.0) return std::numeric_limits<double>::quiet_NaN();
      double L = std::log(x);
      return -norm_pdf(L) * (1.0 + L * L) / (x * L * L);
    };
    s.zeta_log_derivative = [](double x) {
      if (x <= 1.0) return std::numeric_limits<double>::quiet_NaN();
      double L = std::log(x);
      return -(1.0 + L * L) / (x * L);
    };
    s.catalog_psi_u = catalog_psi(
        [](double x) {
          double L = std::log(x);
          return x * L / (1.0 + L * L);
        },
        1.0, "x*log(x)/(1+log(x)^2)");
    s.catalog_psi_vr = catalog_psi([](double x) { return x / std::log(x); }, 1.0, "x/log(x)");
    return s;
  }

  if (id == "exponential_like") {
    s.params = merge_params({{"lambda", 1.0}, {"k", 1.0}}, params, id);
    require_positive(s.params, "lambda");
    require_positive(s.params, "k");
    double lambda = s.params.at("lambda"), K = s.params.at("k");
    double lk = std::log(K);
    s.gamma = 0.0;
    s.x_e = kInf;
    s.support_lo = std::max(0.0, lk / lambda);
    s.log_survival = [lambda, lk](double x) { return lk - lambda * x; };
    s.density = [lambda, lk](double x) { return lambda * std::exp(lk - lambda * x); };
    s.density_derivative = [lambda, lk](double x) {
      return -lambda * lambda * std::exp(lk - lambda * x);
    };
    s.log_density = [lambda, lk](double x) { return std::log(lambda) + lk - lambda * x; };
    s.dd_ratio = [lambda](double) { return -lambda; };
    s.zeta = [lambda, lk](double x) { return std::exp(lk - lambda * x); };
    s.zeta_derivative = [lambda, lk](double x) { return -lambda * std::exp(lk - lambda * x); };
    s.zeta_log_derivative = [lambda](double) { return -lambda; };
    s.catalog_psi_u = catalog_psi([lambda](double) { return 1.0 / lambda; }, s.support_lo, "1/lambda");
    s.catalog_psi_vr = s.catalog_psi_u;
    s.quantile_from_logsf = [lambda, lk, lo = s.support_lo](double t) {
      return std::max(lo, (lk - t) / lambda);
    };
    return s;
  }

  if (id == "gamma") {
    s.params = merge_params({{"alpha", 2.0}, {"beta", 1.0}}, params, id);
    require_positive(s.params, "alpha");
    require_positive(s.params, "beta");
    double a = s.params.at("alpha"), b = s.params.at("beta");
    s.gamma = 0.0;
    s.x_e = kInf;
    s.support_lo = 0.0;
    s.log_survival = [a, b](double x) { return special::log_gamma_q(a, b * x); };
    double lognorm = a * std::log(b) - std::lgamma(a);
    s.density = [a, b, lognorm](double x) {
      return std::exp(lognorm + (a - 1.0) * std::log(x) - b * x);
    };
    s.density_derivative = [this_density = s.density, a, b](double x) {
      return this_density(x) * ((a - 1.0) / x - b);
    };
    s.log_density = [a, b, lognorm](double x) {
      return lognorm + (a - 1.0) * std::log(x) - b * x;
    };
    s.dd_ratio = [a, b](double x) { return (a - 1.0) / x - b; };
    s.zeta = [a, b, lg = std::lgamma(a)](double x) {
      return std::exp((a - 1.0) * std::log(b * x) - b * x - lg);
    };
    s.zeta_derivative = [zeta = s.zeta, a, b](double x) { return zeta(x) * ((a - 1.0) / x - b); };
    s.zeta_log_derivative = [a, b](double x) { return (a - 1.0) / x - b; };
    double pole = std::max(0.0, (a - 1.0) / b);
    s.catalog_psi_u =
        catalog_psi([a, b](double x) { return x / (b * x - a + 1.0); }, pole, "x/(beta*x-alpha+1)");
    s.catalog_psi_vr = catalog_psi([b](double) { return 1.0 / b; }, 0.0, "1/beta");
    return s;
  }

  if (id == "weibull_like") {
    s.params = merge_params({{"k", 1.0}, {"alpha", 0.0}, {"beta", 1.0}, {"tau", 2.0}}, params, id);
    require_positive(s.params, "k");
    require_positive(s.params, "beta");
    require_positive(s.params, "tau");
    double K = s.params.at("k"), al = s.params.at("alpha"), b = s.params.at("beta"),
           tau = s.params.at("tau");
    double lk = std::log(K);
    double bt = std::pow(b, tau);
    s.gamma = 0.0;
    s.x_e = kInf;
    s.support_lo = weibull_like_support_lo(K, al, b, tau);
    auto raw = [lk, al, b, tau](double x) {
      return lk + (al != 0.0 ? al * std::log(x) : 0.0) - std::pow(b * x, tau);
    };
    s.log_survival = raw;
    auto hazard = [al, tau, bt](double x) { return tau * bt * std::pow(x, tau - 1.0) - al / x; };
    s.density = [raw, hazard](double x) { return std::exp(raw(x)) * hazard(x); };
    s.density_derivative = [raw, hazard, al, tau, bt](double x) {
      double h = hazard(x);
      double hp = tau * (tau - 1.0) * bt * std::pow(x, tau - 2.0) + al / (x * x);
      return -std::exp(raw(x)) * (h * h - hp);
    };
    s.log_density = [raw, hazard](double x) {
      double h = hazard(x);
      if (!(h > 0.0)) return std::numeric_limits<double>::quiet_NaN();
      return raw(x) + std::log(h);
    };
    s.dd_ratio = [hazard, al, tau, bt](double x) {
      double h = hazard(x);
      double hp = tau * (tau - 1.0) * bt * std::pow(x, tau - 2.0) + al / (x * x);
      return hp / h - h;
    };
    s.zeta = [raw](double x) { return std::exp(raw(x)); };
    s.zeta_derivative = [raw, hazard](double x) { return -std::exp(raw(x)) * hazard(x); };
    s.zeta_log_derivative = [hazard](double x) { return -hazard(x); };
    double pole = al > 0.0 ? std::pow(al / (tau * bt), 1.0 / tau) : 0.0;
    s.catalog_psi_u = catalog_psi(
        [tau, b, al](double x) { return x / (tau * std::pow(b * x, tau) - al); }, pole,
        "x/(tau*(beta*x)^tau-alpha)");
    s.catalog_psi_vr = catalog_psi(
        [tau, bt](double x) { return std::pow(x, 1.0 - tau) / (tau * bt); }, 0.0,
        "x^(1-tau)/(tau*beta^tau)");
    if (al == 0.0) {
      s.quantile_from_logsf = [lk, b, tau, lo = s.support_lo](double t) {
        return std::max(lo, std::pow(lk - t, 1.0 / tau) / b);
      };
    }
    return s;
  }

  if (id == "loggamma") {
    s.params = merge_params({{"alpha", 2.0}, {"beta", 3.0}}, params, id);
    require_positive(s.params, "alpha");
    require_positive(s.params, "beta");
    double a = s.params.at("alpha"), b = s.params.at("beta");
    s.gamma = 1.0 / a;
    s.x_e = kInf;
    s.support_lo = 1.0 + 1e-9;
    s.grid_hint = GridHint::LogGeometric;
    s.log_survival = [a, b](double x) { return special::log_gamma_q(b, a * std::log(x)); };
    double lognorm = b * std::log(a) - std::lgamma(b);
    s.density = [a, b, lognorm](double x) {
      double L = std::log(x);
      return std::exp(lognorm + (b - 1.0) * std::log(L) - (a + 1.0) * L);
    };
    s.density_derivative = [d = s.density, a, b](double x) {
      double L = std::log(x);
      return d(x) * ((b - 1.0) / (x * L) - (a + 1.0) / x);
    };
    s.log_density = [a, b, lognorm](double x) {
      double L = std::log(x);
      return lognorm + (b - 1.0) * std::log(L) - (a + 1.0) * L;
    };
    s.dd_ratio = [a, b](double x) {
      double L = std::log(x);
      return (b - 1.0) / (x * L) - (a + 1.0) / x;
    };
    double zlognorm = (b - 1.0) * std::log(a) - std::lgamma(b);
    s.zeta = [a, b, zlognorm](double x) {
      double L = std::log(x);
      return std::exp(zlognorm + (b - 1.0) * std::log(L) - a * L);
    };
    s.zeta_derivative = [z = s.zeta, a, b](double x) {
      double L = std::log(x);
      return z(x) * ((b - 1.0) / (x * L) - a / x);
    };
    s.zeta_log_derivative = [a, b](double x) {
      double L = std::log(x);
      return (b - 1.0) / (x * L) - a / x;
    };
    double pole = std::max(1.0 + 1e-9, std::exp((b - 1.0) / a));
    s.catalog_psi_u = catalog_psi(
        [a, b](double x) {
          double L = std::log(x);
          return x * L / (a * L - b + 1.0);
        },
        pole, "x*log(x)/(alpha*log(x)-beta+1)");
    s.catalog_psi_vr = catalog_psi([a](double x) { return x / a; }, 1.0, "x/alpha");
    return s;
  }

  if (id == "cauchy") {
    s.params = merge_params({}, params, id);
    s.gamma = 1.0;
    s.x_e = kInf;
    s.support_lo = -kInf;
    s.log_survival = [](double x) {
      if (x > 0.0) return std::log(std::atan(1.0 / x) / M_PI);
      return std::log(0.5 - std::atan(x) / M_PI);
    };
    s.density = [](double x) { return 1.0 / (M_PI * (1.0 + x * x)); };
    s.density_derivative = [](double x) {
      double d = 1.0 + x * x;
      return -2.0 * x / (M_PI * d * d);
    };
    s.log_density = [](double x) { return -std::log(M_PI) - std::log1p(x * x); };
    s.dd_ratio = [](double x) { return -2.0 * x / (1.0 + x * x); };
    s.zeta = [](double x) { return x > 0.0 ? 1.0 / (M_PI * x) : std::numeric_limits<double>::quiet_NaN(); };
    s.zeta_derivative = [](double x) {
      return x > 0.0 ? -1.0 / (M_PI * x * x) : std::numeric_limits<double>::quiet_NaN();
    };
    s.zeta_log_derivative = [](double x) {
      return x > 0.0 ? -1.0 / x : std::numeric_limits<double>::quiet_NaN();
    };
    s.catalog_psi_u = catalog_psi([](double x) { return x; }, 0.0, "x");
    s.catalog_psi_vr = s.catalog_psi_u;
    s.quantile_from_logsf = [](double t) { return std::tan(M_PI * (0.5 - std::exp(t))); };
    return s;
  }

  if (id == "pareto_like") {
    s.params = merge_params({{"k", 1.0}, {"alpha", 2.0}}, params, id);
    require_positive(s.params, "k");
    require_positive(s.params, "alpha");
    double K = s.params.at("k"), a = s.params.at("alpha");
    double lk = std::log(K);
    s.gamma = 1.0 / a;
    s.x_e = kInf;
    s.support_lo = std::pow(K, 1.0 / a);
    s.log_survival = [lk, a](double x) { return lk - a * std::log(x); };
    s.density = [lk, a](double x) { return a * std::exp(lk - (a + 1.0) * std::log(x)); };
    s.density_derivative = [lk, a](double x) {
      return -a * (a + 1.0) * std::exp(lk - (a + 2.0) * std::log(x));
    };
    s.log_density = [lk, a](double x) { return std::log(a) + lk - (a + 1.0) * std::log(x); };
    s.dd_ratio = [a](double x) { return -(a + 1.0) / x; };
    s.zeta = [lk, a](double x) { return std::exp(lk - a * std::log(x)); };
    s.zeta_derivative = [lk, a](double x) { return -a * std::exp(lk - (a + 1.0) * std::log(x)); };
    s.zeta_log_derivative = [a](double x) { return -a / x; };
    s.catalog_psi_u = catalog_psi([a](double x) { return x / a; }, 0.0, "x/alpha");
    s.catalog_psi_vr = s.catalog_psi_u;
    s.quantile_from_logsf = [lk, a, lo = s.support_lo](double t) {
      return std::max(lo, std::exp((lk - t) / a));
    };
    return s;
  }

  if (id == "beta") {
    s.params = merge_params({{"p", 2.0}, {"q", 2.0}}, params, id);
    require_positive(s.params, "p");
    require_positive(s.params, "q");
    double p = s.params.at("p"), q = s.params.at("q");
    s.gamma = -1.0 / q;
    s.x_e = 1.0;
    s.support_lo = 0.0;
    s.log_survival = [p, q](double x) { return special::log_beta_sf(x, p, q); };
    double logc = -special::log_beta_fn(p, q);
    s.density = [p, q, logc](double x) {
      return std::exp(logc + (p - 1.0) * std::log(x) + (q - 1.0) * std::log1p(-x));
    };
    s.density_derivative = [p, q, logc](double x) {
      double c = std::exp(logc);
      return c * ((p - 1.0) * std::pow(x, p - 2.0) * std::pow(1.0 - x, q - 1.0) -
                  (q - 1.0) * std::pow(x, p - 1.0) * std::pow(1.0 - x, q - 2.0));
    };
    s.log_density = [p, q, logc](double x) {
      return logc + (p - 1.0) * std::log(x) + (q - 1.0) * std::log1p(-x);
    };
    s.dd_ratio = [p, q](double x) { return (p - 1.0) / x - (q - 1.0) / (1.0 - x); };
    s.zeta = [q, logc](double x) { return std::exp(logc + q * std::log1p(-x)) / q; };
    s.zeta_derivative = [q, logc](double x) {
      return -std::exp(logc + (q - 1.0) * std::log1p(-x));
    };
    s.zeta_log_derivative = [q](double x) { return -q / (1.0 - x); };
    s.catalog_psi_u = catalog_psi([q](double x) { return (1.0 - x) / q; }, 0.0, "(1-x)/q");
    s.catalog_psi_vr = s.catalog_psi_u;
    return s;
  }

  if (id == "pareto_like_finite") {
    s.params = merge_params({{"k", 1.0}, {"alpha", 2.0}, {"x_e", 1.0}}, params, id);
    require_positive(s.params, "k");
    require_positive(s.params, "alpha");
    double K = s.params.at("k"), a = s.params.at("alpha"), xe = s.params.at("x_e");
    double lk = std::log(K);
    s.gamma = -1.0 / a;
    s.x_e = xe;
    s.support_lo = xe - std::pow(K, -1.0 / a);
    s.log_survival = [lk, a, xe](double x) { return lk + a * std::log(xe - x); };
    s.density = [lk, a, xe](double x) {
      return a * std::exp(lk + (a - 1.0) * std::log(xe - x));
    };
    s.density_derivative = [lk, a, xe](double x) {
      return -a * (a - 1.0) * std::exp(lk + (a - 2.0) * std::log(xe - x));
    };
    s.log_density = [lk, a, xe](double x) {
      return std::log(a) + lk + (a - 1.0) * std::log(xe - x);
    };
    s.dd_ratio = [a, xe](double x) { return -(a - 1.0) / (xe - x); };
    s.zeta = [lk, a, xe](double x) { return std::exp(lk + a * std::log(xe - x)); };
    s.zeta_derivative = [lk, a, xe](double x) {
      return -a * std::exp(lk + (a - 1.0) * std::log(xe - x));
    };
    s.zeta_log_derivative = [a, xe](double x) { return -a / (xe - x); };
    s.catalog_psi_u = catalog_psi([a, xe](double x) { return (xe - x) / a; }, s.support_lo,
                                  "(x_e-x)/alpha");
    s.catalog_psi_vr = s.catalog_psi_u;
    s.quantile_from_logsf = [lk, a, xe, lo = s.support_lo](double t) {
      return std::max(lo, xe - std::exp((t - lk) / a));
    };
    return s;
  }

  if (id == "gev") {
    s.params = merge_params({{"gamma", 0.0}}, params, id);
    double g = s.params.at("gamma");
    s.gamma = g;
    s.x_e = g < 0.0 ? -1.0 / g : kInf;
    s.support_lo = g > 0.0 ? -1.0 / g : -kInf;
    auto log_u = [g](double x) {
      // ln of (1+gx)^(-1/g), resp. e^-x; the exponent of the GEV cdf.
      if (g == 0.0) return -x;
      return -std::log1p(g * x) / g;
    };
    s.log_survival = [log_u](double x) {
      double lu = log_u(x);
      if (lu < -18.0) {
        double u = std::exp(lu);
        return lu + std::log1p(-0.5 * u);
      }
      return std::log(-std::expm1(-std::exp(lu)));
    };
    if (g == 0.0) {
      s.density = [](double x) { return std::exp(-std::exp(-x) - x); };
      s.density_derivative = [](double x) {
        double e = std::exp(-x);
        return std::exp(-e - x) * (e - 1.0);
      };
      s.log_density = [](double x) { return -std::exp(-x) - x; };
      s.dd_ratio = [](double x) { return std::expm1(-x); };
    } else {
      s.density = [g, log_u](double x) {
        double lu = log_u(x);
        double L = std::log1p(g * x);
        return std::exp(-std::exp(lu) + (-1.0 / g - 1.0) * L);
      };
      s.density_derivative = [g, log_u](double x) {
        double lu = log_u(x);
        double u = std::exp(lu);
        double L = std::log1p(g * x);
        return std::exp(-u + (-2.0 / g - 2.0) * L) -
               (1.0 + g) * std::exp(-u + (-1.0 / g - 2.0) * L);
      };
      s.log_density = [g, log_u](double x) {
        double L = std::log1p(g * x);
        return -std::exp(log_u(x)) + (-1.0 / g - 1.0) * L;
      };
      s.dd_ratio = [g, log_u](double x) {
        double w = 1.0 + g * x;
        return std::exp(log_u(x)) / w - (1.0 + g) / w;
      };
    }
    if (g == 0.0) {
      s.catalog_psi_u = catalog_psi([](double) { return 1.0; }, -kInf, "1");
    } else if (g > 0.0) {
      s.catalog_psi_u = catalog_psi([g](double x) { return g * x; }, 0.0, "gamma*x");
    } else {
      s.catalog_psi_u =
          catalog_psi([g, xe = s.x_e](double x) { return -g * (xe - x); }, -kInf, "-gamma*(x_e-x)");
    }
    s.catalog_psi_vr = s.catalog_psi_u;
    s.quantile_from_logsf = [g](double t) {
      // survival = e^t; w = -ln(cdf) = -ln(1 - e^t)
      double w = -std::log1p(-std::exp(t));
      if (g == 0.0) return -std::log(w);
      return (std::pow(w, -g) - 1.0) / g;
    };
    return s;
  }

  throw std::invalid_argument("unknown distribution id: " + id);
}

DistributionSpec parse_distribution(const std::string& text) {
  std::string name = text;
  std::map<std::string, double> params;
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    name = text.substr(0, colon);
    std::string rest = text.substr(colon + 1);
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("expected key=value in distribution spec: " + item);
      std::string key = item.substr(0, eq);
      std::string val = item.substr(eq + 1);
      try {
        std::size_t used = 0;
        double v = std::stod(val, &used);
        if (used != val.size()) throw std::invalid_argument(val);
        params[key] = v;
      } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value for '" + key + "': " + val);
      }
    }
  }
  if (name.empty()) throw std::invalid_argument("empty distribution name");
  return make_distribution(name, params);
}

std::vector<CatalogRow> catalog_table() {
  std::vector<CatalogRow> rows;
  for (const auto& id : catalog_ids()) {
    DistributionSpec s = make_distribution(id);
    CatalogRow r;
    r.id = id;
    std::ostringstream ps;
    bool first = true;
    for (const auto& [k, v] : s.params) {
      if (!first) ps << ",";
      ps << k << "=" << v;
      first = false;
    }
    r.params = ps.str();
    r.gamma = s.gamma;
    r.x_e = std::isfinite(s.x_e) ? std::to_string(s.x_e) : "inf";
    r.psi_u = s.catalog_psi_u ? s.catalog_psi_u->source_expr : "-";
    r.psi_vr = s.catalog_psi_vr ? s.catalog_psi_vr->source_expr : "-";
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace tailaux
