#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tailaux/aux_function.hpp"

namespace tailaux {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Probe grids for distributions whose convergence happens on a log-log
// scale (lognormal, loggamma) use points x_k = exp(e0 * r^k) instead of
// the plain geometric default.
enum class GridHint { Geometric, LogGeometric };

struct DistributionSpec {
  std::string id;
  std::map<std::string, double> params;
  double gamma = 0.0;
  double x_e = kInf;
  double support_lo = -kInf;

  std::function<double(double)> log_survival;
  std::function<double(double)> density;              // F'
  std::function<double(double)> density_derivative;   // F''
  std::function<double(double)> log_density;          // ln F', deep-tail safe
  std::function<double(double)> dd_ratio;             // F''/F', stays polynomial
  std::function<double(double)> zeta;                 // tail-equivalent form
  std::function<double(double)> zeta_derivative;      // analytic zeta'
  std::function<double(double)> zeta_log_derivative;  // (ln zeta)', immune to underflow of zeta itself

  std::optional<AuxiliaryFunction> catalog_psi_u;
  std::optional<AuxiliaryFunction> catalog_psi_vr;

  GridHint grid_hint = GridHint::Geometric;
  // Analytic quantile from a log-survival target, where closed form
  // exists; otherwise sampling bisects log_survival.
  std::function<double(double)> quantile_from_logsf;
};

enum class TailFlag { Interior, AtOrAboveEndpoint, BelowSupport };

// Survival evaluation with the edge conventions: -inf at or above the
// endpoint, 0 below the support, both reported through *flag.
double log_survival_at(const DistributionSpec& spec, double x, TailFlag* flag = nullptr);

// zeta(x) for catalog members that carry one; throws std::domain_error
// for members without (gev uses its closed survival directly).
double zeta_at(const DistributionSpec& spec, double x);

// Families: gaussian, lognormal, exponential_like, gamma, weibull_like,
// loggamma, cauchy, pareto_like, beta, pareto_like_finite, gev.
// Unknown ids or out-of-domain parameters throw std::invalid_argument.
DistributionSpec make_distribution(const std::string& id,
                                   const std::map<std::string, double>& params = {});

// "name" or "name:key=value,key=value"
DistributionSpec parse_distribution(const std::string& text);

std::vector<std::string> catalog_ids();

struct CatalogRow {
  std::string id;
  std::string params;
  double gamma;
  std::string x_e;
  std::string psi_u;
  std::string psi_vr;
};

std::vector<CatalogRow> catalog_table();

}  // namespace tailaux
