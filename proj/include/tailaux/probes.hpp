#pragma once

#include <optional>
#include <string>

#include "tailaux/auxiliary.hpp"
#include "tailaux/validity.hpp"

namespace tailaux {

// exp(-z) at gamma = 0 (the branch also takes |gamma| < 1e-8 for
// continuity), (1+gamma z)^(-1/gamma) otherwise; throws domain_error
// outside 1 + gamma z > 0.
double gpd_tail(double gamma, double z);

// Ratio trail F_bar(x + z psi(x)) / F_bar(x) along the grid, compared
// against gpd_tail(gamma, z).
struct VrProbeResult {
  double z = 0.0;
  double target = 0.0;
  Trail trail;
  LimitEstimate est;
  bool matches_target = false;  // Converged within tol of target
  std::string detail;
};

VrProbeResult vr_limit_probe(const DistributionSpec& spec, const AuxiliaryFunction& psi,
                             double z, const ProbeGrid& grid, double tol = 1e-2);

// Single-point excess probability P(X > x + z psi(x) | X > x); the
// finite-threshold POT approximation to gpd_tail.
double pot_excess_probability(const DistributionSpec& spec, const AuxiliaryFunction& psi,
                              double x, double z);

// c(x) = F_bar(x) exp(int_{x_star}^x 1/psi).  Accumulated and judged in
// log space so Gaussian-scale exponents cannot overflow; the c trail is
// exp of the ln-c trail with infinities where that underflows or
// overflows.  Verdict taxonomy is for c itself: Converged(c > 0) is the
// vMR acceptance, DivergedToZero / DivergedToInfinity reject.
struct CReconstruction {
  double x_star = 0.0;
  Trail lnc_trail;
  Trail c_trail;
  LimitEstimate est;  // on ln c
  Trend verdict = Trend::Inconclusive;
  std::optional<double> c_limit;
  std::string detail;
};

CReconstruction reconstruct_c(const DistributionSpec& spec, const AuxiliaryFunction& psi,
                              double x_star, const ProbeGrid& grid, double tol = 1e-2);

}  // namespace tailaux
