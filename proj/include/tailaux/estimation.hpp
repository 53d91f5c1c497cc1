#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tailaux/aux_function.hpp"
#include "tailaux/distributions.hpp"

namespace tailaux {

struct SampleSet {
  std::string dist_id;
  std::map<std::string, double> params;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;
};

// Inverse-transform draws from the spec's survival function.  The
// stream is a single mt19937_64 sequence mapped to [0,1) through the
// top 53 bits, so identical (spec, n, seed) give identical samples on
// any platform.  Families with a closed-form inverse use it; the rest
// bisect the monotone log-survival.
SampleSet sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

constexpr int kMinExceedances = 50;

// Mean of (X_i - u) over {X_i > u}; throws when fewer than
// kMinExceedances samples lie above u.
double empirical_mean_excess(const SampleSet& samples, double u);

// Number of samples strictly above u.
std::size_t exceedance_count(const SampleSet& samples, double u);

// Empirical p-quantile (linear interpolation on the sorted sample).
double sample_quantile(const SampleSet& samples, double p);

// 8 geometric thresholds between the 50th and 99th percentiles
// (arithmetic when the lower percentile is not positive).
std::vector<double> default_threshold_grid(const SampleSet& samples, int m = 8);

struct FitResult {
  double c_hat = 0.0;
  double beta_hat = 0.0;
  std::vector<double> threshold_grid;  // surviving thresholds
  std::vector<std::pair<double, double>> log_log_points;
  double residual_rms = 0.0;
  std::vector<std::string> warnings;
};

// Least squares of ln e_hat(u) on ln u over the threshold grid; the
// power model psi(x) = x^(1-beta)/(c beta) has slope 1-beta and
// intercept -ln(c beta).  Thresholds with too few exceedances (or
// u <= 0) are dropped with a warning; under 5 survivors the fit fails.
// beta_hat <= 0 is an error carrying the raw slope and intercept.
// residual_rms above 0.1 adds a warning that the mean excess is not
// power-like (the Lognormal does this by design).
FitResult fit_power_psi(const SampleSet& samples, std::vector<double> threshold_grid);

// The same regression on precomputed (u, e_hat(u)) pairs, for mean
// excess estimates produced outside the sampler.  Requires >= 5 pairs,
// u strictly increasing, both coordinates positive.
FitResult fit_power_psi(const std::vector<std::pair<double, double>>& mean_excess_points);

// The fitted psi as an evaluable candidate.
AuxiliaryFunction psi_from_fit(const FitResult& fit, double x_star = 0.0);

// One value per line.
void write_samples(const std::string& path, const SampleSet& samples);
SampleSet read_samples(const std::string& path, const std::string& dist_id = "imported");

}  // namespace tailaux
