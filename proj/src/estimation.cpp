#include "tailaux/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace tailaux {
namespace {

double quantile_from_logsf_bisect(const DistributionSpec& spec, double t) {
  // Solve log F_bar(x) = t on the monotone decreasing log-survival.
  double lo, hi;
  if (std::isfinite(spec.support_lo)) {
    lo = spec.support_lo;
  } else {
    lo = -1.0;
    int guard = 0;
    while (log_survival_at(spec, lo) < t && guard++ < 1100) lo = lo * 2.0 - 1.0;
  }
  if (std::isfinite(spec.x_e)) {
    hi = spec.x_e;
  } else {
    hi = std::max(1.0, lo + 1.0);
    int guard = 0;
    while (log_survival_at(spec, hi) >= t && guard++ < 1100) hi = hi * 2.0 + 1.0;
  }
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo) || !(mid < hi)) break;
    if (log_survival_at(spec, mid) >= t)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-14 * std::max(1.0, std::fabs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

double draw(const DistributionSpec& spec, double t) {
  if (spec.quantile_from_logsf) return spec.quantile_from_logsf(t);
  return quantile_from_logsf_bisect(spec, t);
}

// Shared regression tail: expects threshold_grid and log_log_points
// already filled and at least 5 of them.
void regress_log_log(FitResult& fit) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double N = static_cast<double>(fit.log_log_points.size());
  for (const auto& [lx, ly] : fit.log_log_points) {
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = N * sxx - sx * sx;
  if (!(std::fabs(denom) > 0.0)) throw std::runtime_error("degenerate threshold grid");
  const double m = (N * sxy - sx * sy) / denom;
  const double b = (sy - m * sx) / N;

  fit.beta_hat = 1.0 - m;
  if (!(fit.beta_hat > 0.0)) {
    std::ostringstream os;
    os << "fitted beta = " << fit.beta_hat << " <= 0 (raw slope " << m << ", intercept " << b
       << "); the power form needs beta > 0";
    throw std::runtime_error(os.str());
  }
  fit.c_hat = std::exp(-b) / fit.beta_hat;

  double rss = 0.0;
  for (const auto& [lx, ly] : fit.log_log_points) {
    const double r = ly - (m * lx + b);
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / N);
  if (fit.residual_rms > 0.1) {
    std::ostringstream os;
    os << "residual rms " << fit.residual_rms
       << " > 0.1: mean excess is not power-like on this range";
    fit.warnings.push_back(os.str());
  }
}

}  // namespace

SampleSet sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample needs n >= 1");
  SampleSet s;
  s.dist_id = spec.id;
  s.params = spec.params;
  s.n = n;
  s.seed = seed;
  s.values.reserve(n);
  std::mt19937_64 eng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    double u;
    do {
      u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    } while (u == 0.0);
    s.values.push_back(draw(spec, std::log1p(-u)));
  }
  return s;
}

std::size_t exceedance_count(const SampleSet& samples, double u) {
  std::size_t k = 0;
  for (double v : samples.values)
    if (v > u) ++k;
  return k;
}

double empirical_mean_excess(const SampleSet& samples, double u) {
  double acc = 0.0;
  std::size_t k = 0;
  for (double v : samples.values)
    if (v > u) {
      acc += v - u;
      ++k;
    }
  if (k < static_cast<std::size_t>(kMinExceedances)) {
    std::ostringstream os;
    os << "only " << k << " exceedances above u = " << u << " (need " << kMinExceedances << ")";
    throw std::runtime_error(os.str());
  }
  return acc / static_cast<double>(k);
}

double sample_quantile(const SampleSet& samples, double p) {
  if (samples.values.empty()) throw std::invalid_argument("empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile level outside [0,1]");
  std::vector<double> v = samples.values;
  std::sort(v.begin(), v.end());
  const double pos = p * static_cast<double>(v.size() - 1);
  const std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  const double w = pos - static_cast<double>(i);
  return v[i] * (1.0 - w) + v[i + 1] * w;
}

std::vector<double> default_threshold_grid(const SampleSet& samples, int m) {
  if (m < 2) throw std::invalid_argument("threshold grid needs at least 2 points");
  const double lo = sample_quantile(samples, 0.50);
  const double hi = sample_quantile(samples, 0.99);
  if (!(hi > lo)) throw std::runtime_error("degenerate sample: q99 <= q50");
  std::vector<double> grid;
  grid.reserve(m);
  for (int j = 0; j < m; ++j) {
    const double w = static_cast<double>(j) / static_cast<double>(m - 1);
    grid.push_back(lo > 0.0 ? lo * std::pow(hi / lo, w) : lo + (hi - lo) * w);
  }
  return grid;
}

FitResult fit_power_psi(const SampleSet& samples, std::vector<double> threshold_grid) {
  if (threshold_grid.size() < 5)
    throw std::invalid_argument("threshold grid needs at least 5 points");
  for (std::size_t i = 1; i < threshold_grid.size(); ++i)
    if (!(threshold_grid[i] > threshold_grid[i - 1]))
      throw std::invalid_argument("threshold grid must be strictly increasing");

  FitResult fit;
  for (double u : threshold_grid) {
    if (!(u > 0.0)) {
      std::ostringstream os;
      os << "threshold u = " << u << " dropped: log-log fit needs u > 0";
      fit.warnings.push_back(os.str());
      continue;
    }
    const std::size_t k = exceedance_count(samples, u);
    if (k < static_cast<std::size_t>(kMinExceedances)) {
      std::ostringstream os;
      os << "threshold u = " << u << " dropped: " << k << " exceedances < " << kMinExceedances;
      fit.warnings.push_back(os.str());
      continue;
    }
    fit.threshold_grid.push_back(u);
    fit.log_log_points.emplace_back(std::log(u), std::log(empirical_mean_excess(samples, u)));
  }
  if (fit.threshold_grid.size() < 5) {
    std::ostringstream os;
    os << "only " << fit.threshold_grid.size() << " thresholds survived (need 5)";
    throw std::runtime_error(os.str());
  }
  regress_log_log(fit);
  return fit;
}

FitResult fit_power_psi(const std::vector<std::pair<double, double>>& mean_excess_points) {
  if (mean_excess_points.size() < 5)
    throw std::invalid_argument("mean excess input needs at least 5 points");
  FitResult fit;
  for (std::size_t i = 0; i < mean_excess_points.size(); ++i) {
    const auto& [u, e] = mean_excess_points[i];
    if (!(u > 0.0) || !(e > 0.0))
      throw std::invalid_argument("mean excess input needs u > 0 and e > 0");
    if (i > 0 && !(u > mean_excess_points[i - 1].first))
      throw std::invalid_argument("mean excess input must be strictly increasing in u");
    fit.threshold_grid.push_back(u);
    fit.log_log_points.emplace_back(std::log(u), std::log(e));
  }
  regress_log_log(fit);
  return fit;
}

AuxiliaryFunction psi_from_fit(const FitResult& fit, double x_star) {
  AuxiliaryFunction f;
  const double beta = fit.beta_hat;
  const double cb = fit.c_hat * fit.beta_hat;
  f.eval = [beta, cb](double x) {
    if (!(x > 0.0)) return std::nan("");
    return std::pow(x, 1.0 - beta) / cb;
  };
  f.x_star = x_star;
  f.kind = PsiKind::UserExpression;
  std::ostringstream os;
  os << "x^(1-" << beta << ")/(" << cb << ")";
  f.source_expr = os.str();
  return f;
}

void write_samples(const std::string& path, const SampleSet& samples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.precision(17);
  for (double v : samples.values) out << v << "\n";
  if (!out) throw std::runtime_error("write failed for " + path);
}

SampleSet read_samples(const std::string& path, const std::string& dist_id) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  SampleSet s;
  s.dist_id = dist_id;
  double v;
  while (in >> v) s.values.push_back(v);
  if (!in.eof()) throw std::runtime_error("non-numeric content in " + path);
  s.n = s.values.size();
  return s;
}

}  // namespace tailaux
