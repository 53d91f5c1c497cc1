#include "tailaux/probes.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tailaux {

double gpd_tail(double gamma, double z) {
  if (std::fabs(gamma) < 1e-8) return std::exp(-z);
  const double arg = 1.0 + gamma * z;
  if (!(arg > 0.0)) {
    std::ostringstream os;
    os << "gpd_tail outside support: 1 + gamma z = " << arg;
    throw std::domain_error(os.str());
  }
  return std::exp(-std::log1p(gamma * z) / gamma);
}

VrProbeResult vr_limit_probe(const DistributionSpec& spec, const AuxiliaryFunction& psi,
                             double z, const ProbeGrid& grid, double tol) {
  VrProbeResult r;
  r.z = z;
  r.target = gpd_tail(spec.gamma, z);  // throws when 1 + gamma z <= 0
  for (double x : grid.points) {
    const double p = psi.eval(x);
    if (!(p > 0.0)) {
      r.trail.x.push_back(x);
      r.trail.value.push_back(std::nan(""));
      continue;
    }
    const double arg = x + z * p;
    // Points the shift pushes past the endpoint are trimmed; for a
    // valid psi this only happens far from the limit.
    if (std::isfinite(spec.x_e) && arg >= spec.x_e) continue;
    TailFlag flag;
    const double lx = log_survival_at(spec, x, &flag);
    if (flag != TailFlag::Interior) continue;
    r.trail.x.push_back(x);
    r.trail.value.push_back(std::exp(log_survival_at(spec, arg) - lx));
  }
  r.est = estimate_limit(r.trail.value, tol);
  if (r.est.verdict == Trend::Converged) {
    r.matches_target = std::fabs(*r.est.limit - r.target) <= tol;
    if (!r.matches_target) {
      std::ostringstream os;
      os << "ratio -> " << *r.est.limit << " but GPD tail is " << r.target;
      r.detail = os.str();
    }
  } else {
    r.detail = std::string("ratio trail ") + to_string(r.est.verdict);
  }
  return r;
}

double pot_excess_probability(const DistributionSpec& spec, const AuxiliaryFunction& psi,
                              double x, double z) {
  if (!(z > 0.0)) throw std::domain_error("pot excess probability needs z > 0");
  const double p = psi.eval(x);
  if (!(p > 0.0)) throw std::domain_error("psi must be positive at the threshold");
  TailFlag flag;
  const double lx = log_survival_at(spec, x, &flag);
  if (flag != TailFlag::Interior) throw std::domain_error("threshold outside the support interior");
  const double arg = x + z * p;
  if (std::isfinite(spec.x_e) && arg >= spec.x_e) return 0.0;
  return std::exp(log_survival_at(spec, arg) - lx);
}

CReconstruction reconstruct_c(const DistributionSpec& spec, const AuxiliaryFunction& psi,
                              double x_star, const ProbeGrid& grid, double tol) {
  CReconstruction r;
  r.x_star = x_star;
  if (!(x_star > psi.x_star))
    throw std::invalid_argument("reconstruction start must lie beyond psi's x_star");
  auto inv_psi = [&](double v) {
    const double p = psi.eval(v);
    return p > 0.0 ? 1.0 / p : std::nan("");
  };
  // The accumulated exponent reaches ~x^2/2 for Gaussian-type tails, so
  // panel tolerances must be tight enough that the absolute error stays
  // small after cancellation against log F_bar.
  const double rel = psi.quadrature_backed ? 1e-8 : 1e-12;
  CumulativeTrail acc = cumulative_quadrature(inv_psi, x_star, grid, rel);
  if (!acc.converged) {
    r.verdict = Trend::Inconclusive;
    std::ostringstream os;
    os << "1/psi unresolved over [" << acc.fail_lo << ", " << acc.fail_hi
       << "] (substituted axis)";
    r.detail = os.str();
    return r;
  }
  r.lnc_trail.x = acc.x;
  for (std::size_t i = 0; i < acc.x.size(); ++i) {
    TailFlag flag;
    const double lsf = log_survival_at(spec, acc.x[i], &flag);
    r.lnc_trail.value.push_back(flag == TailFlag::Interior ? lsf + acc.value[i] : std::nan(""));
  }
  r.c_trail.x = r.lnc_trail.x;
  for (double v : r.lnc_trail.value) r.c_trail.value.push_back(std::exp(v));
  r.est = estimate_limit(r.lnc_trail.value, tol);
  switch (r.est.verdict) {
    case Trend::Converged:
      r.verdict = Trend::Converged;
      r.c_limit = std::exp(*r.est.limit);
      break;
    case Trend::DivergedToInfinity: {
      // The sign of ln c picks between c -> infinity and c -> 0.
      double last = std::nan("");
      for (auto it = r.lnc_trail.value.rbegin(); it != r.lnc_trail.value.rend(); ++it)
        if (std::isfinite(*it)) {
          last = *it;
          break;
        }
      r.verdict = last < 0.0 ? Trend::DivergedToZero : Trend::DivergedToInfinity;
      r.detail = last < 0.0 ? "ln c decreases without bound" : "ln c increases without bound";
      break;
    }
    default:
      r.verdict = Trend::Inconclusive;
      r.detail = r.est.detail.empty() ? std::string("ln c trail ") + to_string(r.est.verdict)
                                      : r.est.detail;
  }
  return r;
}

}  // namespace tailaux
