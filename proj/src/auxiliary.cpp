#include "tailaux/auxiliary.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tailaux/numerics.hpp"

namespace tailaux {

namespace {

double nan_of() { return std::numeric_limits<double>::quiet_NaN(); }

double positive_or_nan(double v) {
  return (std::isfinite(v) && v > 0.0) ? v : nan_of();
}

}  // namespace

AuxiliaryFunction psi_from_zeta(std::function<double(double)> zeta, double x_star,
                                std::function<double(double)> zeta_deriv) {
  AuxiliaryFunction a;
  a.kind = PsiKind::FromZeta;
  a.x_star = x_star;
  if (zeta_deriv) {
    // Cross-check the analytic derivative against a central difference
    // at a few interior points; the analytic one wins either way.
    std::ostringstream warn;
    double base = std::isfinite(x_star) ? std::max(x_star, 0.5) : 0.5;
    for (double mult : {1.5, 3.0, 6.0}) {
      double x = base * mult + 0.25;
      double ana = zeta_deriv(x);
      double num = numeric_derivative(zeta, x);
      if (std::isfinite(ana) && std::isfinite(num) &&
          std::fabs(num - ana) > 1e-4 * std::max(1e-300, std::fabs(ana))) {
        warn << "zeta derivative mismatch at x=" << x << " (analytic " << ana << ", numeric "
             << num << "); ";
      }
    }
    a.note = warn.str();
    a.eval = [zeta = std::move(zeta), zd = std::move(zeta_deriv)](double x) {
      double z = zeta(x);
      double d = zd(x);
      if (!std::isfinite(z) || !std::isfinite(d) || d >= 0.0) return nan_of();
      return positive_or_nan(-z / d);
    };
  } else {
    a.eval = [zeta = std::move(zeta)](double x) {
      double z = zeta(x);
      double d = numeric_derivative(zeta, x);
      if (!std::isfinite(z) || !std::isfinite(d) || d >= 0.0) return nan_of();
      return positive_or_nan(-z / d);
    };
  }
  return a;
}

AuxiliaryFunction psi_from_zeta(const DistributionSpec& spec) {
  if (!spec.zeta)
    throw std::domain_error("no tail-equivalent zeta registered for " + spec.id);
  double x_star = spec.catalog_psi_u ? spec.catalog_psi_u->x_star : spec.support_lo;
  if (spec.zeta_log_derivative) {
    // -zeta/zeta' = -1/(ln zeta)'.  The log form survives far into the
    // tail where zeta itself underflows to 0 and the ratio turns 0/0.
    AuxiliaryFunction a;
    a.kind = PsiKind::FromZeta;
    a.x_star = x_star;
    a.eval = [ld = spec.zeta_log_derivative](double x) {
      double d = ld(x);
      if (!std::isfinite(d) || d >= 0.0) return nan_of();
      return positive_or_nan(-1.0 / d);
    };
    return a;
  }
  return psi_from_zeta(spec.zeta, x_star, spec.zeta_derivative);
}

AuxiliaryFunction psi_reciprocal_hazard(const DistributionSpec& spec) {
  if (!spec.log_density)
    throw std::invalid_argument("reciprocal hazard needs a density for " + spec.id);
  AuxiliaryFunction a;
  a.kind = PsiKind::ReciprocalHazard;
  a.x_star = spec.support_lo;
  a.eval = [spec](double x) {
    TailFlag flag;
    double ls = log_survival_at(spec, x, &flag);
    if (flag != TailFlag::Interior) return nan_of();
    double ld = spec.log_density(x);
    if (!std::isfinite(ls) || !std::isfinite(ld)) return nan_of();
    return positive_or_nan(std::exp(ls - ld));
  };
  return a;
}

AuxiliaryFunction psi_integral_universal(const DistributionSpec& spec) {
  AuxiliaryFunction a;
  a.quadrature_backed = true;
  double g = spec.gamma;

  if (g == 0.0) {
    a.kind = PsiKind::IntegralGumbel;
    a.x_star = std::isfinite(spec.support_lo) ? spec.support_lo : -kInf;
    a.eval = [spec](double x) {
      try {
        ScaledTailIntegrals t = tail_ratio_integrals_scaled(spec, x);
        double den = 3.0 * t.i1 * t.i3 - 2.0 * t.i2 * t.i2;
        if (!(den > 0.0)) return nan_of();
        return positive_or_nan(t.scale * (t.i2 * t.i3) / den);
      } catch (const QuadratureError&) {
        return nan_of();
      }
    };
    return a;
  }

  if (g > 0.0) {
    a.kind = PsiKind::IntegralFrechet;
    a.x_star = std::max(0.0, spec.support_lo);
    a.eval = [spec](double x) {
      if (!(x > 0.0)) return nan_of();
      double lsx = log_survival_at(spec, x);
      if (!std::isfinite(lsx)) return nan_of();
      auto f = [&](double t) {
        double u = x + t;
        if (!std::isfinite(u)) return 0.0;
        double d = log_survival_at(spec, u) - lsx;
        return d > -745.0 ? std::exp(d) / u : 0.0;
      };
      double scale = tail_decay_scale(spec, x);
      QuadResult q = integrate_semi_infinite(f, scale, std::max(1e-11, log_diff_noise_floor(lsx)));
      if (!q.converged) return nan_of();
      return positive_or_nan(x * q.value);
    };
    return a;
  }

  a.kind = PsiKind::IntegralWeibull;
  a.x_star = spec.support_lo;
  a.eval = [spec](double x) {
    double xe = spec.x_e;
    if (!(x < xe)) return nan_of();
    double D = xe - x;
    double lsx = log_survival_at(spec, x);
    if (!std::isfinite(lsx)) return nan_of();
    // u = x_e - D e^-v turns int F_bar(u)/(x_e - u) du into a plain
    // integral over v in (0, inf) with exponential decay.
    auto f = [&](double v) {
      double u = xe - D * std::exp(-v);
      double d = log_survival_at(spec, u) - lsx;
      return d > -745.0 ? std::exp(d) : 0.0;
    };
    // decay rate is alpha = -1/gamma, so unit scale is fine
    QuadResult q = integrate_semi_infinite(f, 1.0, std::max(1e-11, log_diff_noise_floor(lsx)));
    if (!q.converged) return nan_of();
    return positive_or_nan(D * q.value);
  };
  return a;
}

AuxiliaryFunction psi_classic(const DistributionSpec& spec, ClassicForm form) {
  AuxiliaryFunction a;
  if (form == ClassicForm::LinearGamma) {
    double g = spec.gamma;
    if (g == 0.0)
      throw std::invalid_argument("linear_gamma needs gamma != 0 (got a Gumbel-class spec)");
    a.kind = PsiKind::LinearGamma;
    if (g > 0.0) {
      a.x_star = 0.0;
      a.eval = [g](double x) { return positive_or_nan(g * x); };
      a.source_expr = "gamma*x";
    } else {
      a.x_star = -kInf;
      double xe = spec.x_e;
      a.eval = [g, xe](double x) { return positive_or_nan(-g * (xe - x)); };
      a.source_expr = "-gamma*(x_e-x)";
    }
    return a;
  }

  a.quadrature_backed = true;
  a.x_star = std::isfinite(spec.support_lo) ? spec.support_lo : -kInf;
  a.source_expr = form == ClassicForm::MeanExcess ? "mean_excess" : "double_mean_excess";
  if (form == ClassicForm::MeanExcess) {
    a.kind = PsiKind::MeanExcess;
    a.eval = [spec](double x) {
      try {
        return positive_or_nan(tail_ratio_integral(spec, x, TailIntegralMode::Single));
      } catch (const QuadratureError&) {
        return nan_of();
      }
    };
  } else {
    a.kind = PsiKind::DoubleMeanExcess;
    a.eval = [spec](double x) {
      try {
        ScaledTailIntegrals t = tail_ratio_integrals_scaled(spec, x);
        if (!(t.i1 > 0.0)) return nan_of();
        return positive_or_nan(t.scale * t.i2 / t.i1);
      } catch (const QuadratureError&) {
        return nan_of();
      }
    };
  }
  return a;
}

AuxiliaryFunction psi_catalog(const DistributionSpec& spec, CatalogPsi which) {
  const auto& entry = which == CatalogPsi::Universal ? spec.catalog_psi_u : spec.catalog_psi_vr;
  if (!entry)
    throw std::invalid_argument("no catalog auxiliary function for " + spec.id);
  return *entry;
}

}  // namespace tailaux
