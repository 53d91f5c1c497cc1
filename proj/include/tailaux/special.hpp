#pragma once

// Log-scale special functions for deep-tail survival evaluation.  Every
// routine here stays finite long after the plain probability underflows.

namespace tailaux::special {

// ln phi(x) for the standard normal density.
double normal_logpdf(double x);

// ln of the standard normal survival Phi_bar(x).  Uses erfc up to the
// switch point and a Mills-ratio continued fraction past it, so values
// like x = 40 (Phi_bar ~ 1e-350) stay representable.
double log_normal_sf(double x);

// Mills ratio Phi_bar(x)/phi(x) for x above the continued-fraction
// switch point.  Exposed for cross-checking against erfc.
double mills_ratio_cf(double x);

// ln Q(a, y) where Q is the regularized upper incomplete gamma
// function.  a > 0, y >= 0.  Series below y < a+1, Lentz continued
// fraction above, both assembled in log space.
double log_gamma_q(double a, double y);

// ln B(p, q).
double log_beta_fn(double p, double q);

// ln P(X > x) for X ~ Beta(p, q), x in [0, 1).  Continued fraction on
// whichever side converges, with the near-1 branch fully in log space.
double log_beta_sf(double x, double p, double q);

}  // namespace tailaux::special
