#include "tailaux/numerics.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace tailaux {

namespace {

std::string describe(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

const char* to_string(Trend t) {
  switch (t) {
    case Trend::Converged: return "converged";
    case Trend::DivergedToInfinity: return "diverged_to_infinity";
    case Trend::DivergedToZero: return "diverged_to_zero";
    case Trend::Oscillatory: return "oscillatory";
    case Trend::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

ProbeGrid ProbeGrid::geometric(double x0, double ratio, int count, double x_e) {
  ProbeGrid g;
  g.x_e = x_e;
  double x = x0;
  for (int k = 0; k < count; ++k, x *= ratio) g.points.push_back(x);
  g.rule = "x_k = " + describe(x0) + " * " + describe(ratio) + "^k, " + describe(count) + " points";
  return g;
}

ProbeGrid ProbeGrid::log_geometric(double e0, double ratio, int count) {
  ProbeGrid g;
  g.x_e = kInf;
  double e = e0;
  for (int k = 0; k < count && e <= 690.0; ++k, e *= ratio) g.points.push_back(std::exp(e));
  g.rule = "x_k = exp(" + describe(e0) + " * " + describe(ratio) + "^k), " +
           describe((int)g.points.size()) + " points";
  return g;
}

ProbeGrid ProbeGrid::toward_finite(double x_e, double d0, double shrink, int count) {
  ProbeGrid g;
  g.x_e = x_e;
  double d = d0;
  for (int k = 0; k < count; ++k, d *= shrink) g.points.push_back(x_e - d);
  g.rule = "x_k = " + describe(x_e) + " - " + describe(d0) + " * " + describe(shrink) + "^k, " +
           describe(count) + " points";
  return g;
}

ProbeGrid default_grid(const DistributionSpec& spec, double min_start, const GridOptions& opt) {
  int m = opt.count.value_or(16);
  if (std::isfinite(spec.x_e)) {
    double anchor = std::isfinite(spec.support_lo) ? spec.support_lo : spec.x_e - 4.0;
    if (std::isfinite(min_start)) anchor = std::max(anchor, min_start);
    double d0 = opt.start ? (spec.x_e - *opt.start) : 0.25 * (spec.x_e - anchor);
    double shrink = opt.ratio.value_or(0.5);
    return ProbeGrid::toward_finite(spec.x_e, d0, shrink, m);
  }
  double floor_x = std::max(std::isfinite(min_start) ? min_start : -kInf,
                            std::isfinite(spec.support_lo) ? spec.support_lo : -kInf);
  if (spec.grid_hint == GridHint::LogGeometric && !opt.start) {
    double r = opt.ratio.value_or(1.5);
    double e0 = 1.0;
    if (std::isfinite(floor_x) && floor_x > 1.0) {
      while (std::exp(e0) <= floor_x * 1.05 + 0.1 && e0 < 650.0) e0 *= r;
    }
    return ProbeGrid::log_geometric(e0, r, m);
  }
  double x0 = opt.start.value_or(2.0);
  double r = opt.ratio.value_or(1.5);
  if (std::isfinite(floor_x)) {
    double thresh = floor_x + 0.05 * std::max(1.0, std::fabs(floor_x));
    while (x0 <= thresh) x0 *= r;
  }
  return ProbeGrid::geometric(x0, r, m);
}

LimitEstimate estimate_limit(const std::vector<double>& values, double tol,
                             bool positive_limit_required) {
  LimitEstimate out;
  std::vector<double> v;
  v.reserve(values.size());
  for (double x : values)
    if (std::isfinite(x)) v.push_back(x);
  if (v.size() + 2 < values.size())
    out.detail = "dropped " + describe((int)(values.size() - v.size())) + " unusable values; ";
  if (v.size() < 8) {
    out.verdict = Trend::Inconclusive;
    out.detail += "fewer than 8 usable values";
    return out;
  }

  const std::size_t n = v.size();
  double wmax = v[n - 4], wmin = v[n - 4], mean = 0.0;
  for (std::size_t i = n - 4; i < n; ++i) {
    wmax = std::max(wmax, v[i]);
    wmin = std::min(wmin, v[i]);
    mean += v[i];
  }
  mean *= 0.25;
  out.window_spread = wmax - wmin;

  // One Aitken delta-squared step on the last three values, used only
  // when the tail differences shrink geometrically with steady sign.
  auto aitken = [&]() -> std::optional<double> {
    double d1 = v[n - 2] - v[n - 3];
    double d2 = v[n - 1] - v[n - 2];
    if (d1 == 0.0 || d2 == 0.0) return std::nullopt;
    if ((d1 > 0) != (d2 > 0)) return std::nullopt;
    double q = d2 / d1;
    if (!(q >= 0.05 && q <= 0.97)) return std::nullopt;
    if (std::fabs(d2) < 1e3 * DBL_EPSILON * std::fabs(v[n - 1])) return std::nullopt;
    return v[n - 1] + d2 * q / (1.0 - q);
  };

  if (out.window_spread <= tol * std::max(1.0, std::fabs(mean))) {
    double limit = aitken().value_or(mean);
    out.limit = limit;
    if (positive_limit_required && limit <= tol) {
      out.verdict = Trend::DivergedToZero;
      out.detail += "trail settles at 0 where a positive limit is required";
      return out;
    }
    out.verdict = Trend::Converged;
    return out;
  }

  double diffs[6];
  for (int i = 0; i < 6; ++i) diffs[i] = v[n - 6 + i] - v[n - 7 + i];
  bool up = true, down = true, alternating = true;
  double min_abs = std::fabs(diffs[0]), max_abs = min_abs;
  for (int i = 0; i < 6; ++i) {
    up = up && diffs[i] > 0.0;
    down = down && diffs[i] < 0.0;
    if (i > 0 && (diffs[i] > 0.0) == (diffs[i - 1] > 0.0)) alternating = false;
    min_abs = std::min(min_abs, std::fabs(diffs[i]));
    max_abs = std::max(max_abs, std::fabs(diffs[i]));
  }

  double last = v[n - 1];
  if (up || down) {
    // Geometrically shrinking increments make the tail summable, so the
    // sequence is Cauchy even when the raw window has not settled (slow
    // O(1/x) or O(1/log x) approaches).  Two Aitken extrapolations from
    // adjacent triples must agree; their gap is the honest uncertainty.
    // The 0.90 ratio cap keeps the ~1 - 1/k pattern of log log growth
    // on a geometric grid reading as divergent, not convergent.
    bool geometric = true;
    double q[5], qsum = 0.0;
    for (int i = 0; i < 5 && geometric; ++i) {
      if (diffs[i] == 0.0) {
        geometric = false;
        break;
      }
      q[i] = diffs[i + 1] / diffs[i];
      geometric = q[i] >= 0.05 && q[i] <= 0.90;
      qsum += q[i];
    }
    if (geometric) {
      double qbar = qsum / 5.0;
      for (int i = 0; i < 5; ++i)
        if (std::fabs(q[i] - qbar) > 0.08) geometric = false;
      // Harmonic-type tails (ratios k/(k+2) creeping toward 1) pass the
      // scatter test but extrapolate to the wrong place with deceptive
      // mutual agreement.  A true geometric tail has flat ratios, so any
      // systematic drift comparable to the gap 1 - qbar disqualifies.
      if (geometric && std::fabs(q[4] - q[0]) > 0.25 * (1.0 - qbar)) geometric = false;
    }
    if (geometric &&
        std::fabs(diffs[5]) > 100.0 * DBL_EPSILON * std::max(1.0, std::fabs(last))) {
      auto extrapolate = [&](std::size_t k) {
        double d1 = v[k - 1] - v[k - 2];
        double d2 = v[k] - v[k - 1];
        double r = d2 / d1;
        return v[k] + d2 * r / (1.0 - r);
      };
      double l1 = extrapolate(n - 1);
      double l2 = extrapolate(n - 2);
      if (std::fabs(l1 - l2) <= tol * std::max(1.0, std::fabs(l1))) {
        out.limit = l1;
        out.window_spread = std::fabs(l1 - l2);
        if (positive_limit_required && l1 <= tol) {
          out.verdict = Trend::DivergedToZero;
          out.detail += "geometric tail extrapolates to 0 where a positive limit is required";
          return out;
        }
        out.verdict = Trend::Converged;
        out.detail += "geometric tail, Aitken-extrapolated";
        return out;
      }
    }
    bool increments_hold = min_abs >= tol * std::max(1.0, std::fabs(last));
    bool past_threshold = std::fabs(last) > 1.0 / tol;
    if (increments_hold || past_threshold) {
      bool abs_up = true, abs_down = true;
      for (std::size_t i = n - 7; i + 1 < n; ++i) {
        abs_up = abs_up && std::fabs(v[i + 1]) > std::fabs(v[i]);
        abs_down = abs_down && std::fabs(v[i + 1]) < std::fabs(v[i]);
      }
      if (abs_down && !past_threshold) {
        out.verdict = Trend::DivergedToZero;
        out.detail += "monotone decay toward 0 with non-vanishing steps";
      } else {
        out.verdict = Trend::DivergedToInfinity;
        out.detail += up ? "monotone growth, increments stay above tolerance"
                         : "monotone decrease, increments stay above tolerance";
      }
      (void)abs_up;
      return out;
    }
    out.verdict = Trend::Inconclusive;
    out.detail += "monotone but neither settled nor clearly divergent";
    return out;
  }

  if (alternating && max_abs > 0.0 && std::fabs(diffs[5]) >= 0.5 * std::fabs(diffs[0])) {
    out.verdict = Trend::Oscillatory;
    out.detail += "alternating differences without shrinking amplitude";
    return out;
  }

  out.verdict = Trend::Inconclusive;
  out.detail += "no stable trend in the trailing window";
  return out;
}

double numeric_derivative(const std::function<double(double)>& f, double x) {
  double h = std::cbrt(DBL_EPSILON) * std::max(1.0, std::fabs(x));
  volatile double xp = x + h;
  volatile double xm = x - h;
  double span = xp - xm;
  double fp = f(xp), fm = f(xm);
  if (!std::isfinite(fp) || !std::isfinite(fm) || span == 0.0)
    return std::numeric_limits<double>::quiet_NaN();
  return (fp - fm) / span;
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights (positive half).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
                           0.4179591836734694};

struct Panel {
  double a, b;
  double s, err;
  bool ok;  // no non-finite integrand values seen
  int depth;
};

void eval_gk(const std::function<double(double)>& f, double a, double b, Panel* p) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  bool ok = true;
  double fc = f(c);
  ok = ok && std::isfinite(fc);
  double sk = kWgk[7] * fc;
  double sg = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    double f1 = f(c - h * kXgk[i]);
    double f2 = f(c + h * kXgk[i]);
    ok = ok && std::isfinite(f1) && std::isfinite(f2);
    sk += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) sg += kWg[(i - 1) / 2] * (f1 + f2);
  }
  p->a = a;
  p->b = b;
  p->s = sk * h;
  p->err = std::fabs((sk - sg) * h);
  p->ok = ok;
}

constexpr int kMaxDepth = 55;
constexpr int kMaxPanels = 30000;

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_floor) {
  QuadResult out;
  if (!(b > a)) {
    out.converged = true;
    return out;
  }
  Panel first;
  eval_gk(f, a, b, &first);
  first.depth = 0;
  double scale_ref = std::fabs(first.s);
  double total_len = b - a;

  std::deque<Panel> work{first};
  double sum = 0.0, errsum = 0.0;
  bool failed = false;
  double worst_err = -1.0;
  int processed = 0;

  while (!work.empty()) {
    Panel p = work.front();
    work.pop_front();
    ++processed;
    double frac = (p.b - p.a) / total_len;
    double local_tol =
        std::max(rel_tol * std::fabs(p.s), frac * (rel_tol * scale_ref + abs_floor) + 1e-305);
    bool forced = p.depth >= kMaxDepth || processed > kMaxPanels;
    if (!p.ok) {
      // Non-finite integrand inside this panel: split to isolate the
      // bad region, then report the offending subinterval.
      if (p.depth < 40 && processed <= kMaxPanels) {
        double mid = 0.5 * (p.a + p.b);
        Panel l, r;
        eval_gk(f, p.a, mid, &l);
        eval_gk(f, mid, p.b, &r);
        l.depth = r.depth = p.depth + 1;
        work.push_back(l);
        work.push_back(r);
        continue;
      }
      failed = true;
      if (out.fail_hi == out.fail_lo) {
        out.fail_lo = p.a;
        out.fail_hi = p.b;
      }
      continue;
    }
    if (p.err <= local_tol || forced) {
      sum += p.s;
      errsum += p.err;
      if (forced && p.err > local_tol) {
        failed = true;
        if (p.err > worst_err) {
          worst_err = p.err;
          out.fail_lo = p.a;
          out.fail_hi = p.b;
        }
      }
      continue;
    }
    double mid = 0.5 * (p.a + p.b);
    Panel l, r;
    eval_gk(f, p.a, mid, &l);
    eval_gk(f, mid, p.b, &r);
    l.depth = r.depth = p.depth + 1;
    scale_ref = std::max(scale_ref, std::fabs(l.s) + std::fabs(r.s));
    work.push_back(l);
    work.push_back(r);
  }

  out.value = sum;
  out.abs_error = errsum;
  out.converged = !failed;
  return out;
}

QuadResult integrate_semi_infinite(const std::function<double(double)>& f, double scale,
                                   double rel_tol) {
  auto g = [&f, scale](double s) {
    double om = 1.0 - s;
    double t = scale * s / om;
    if (!std::isfinite(t)) return 0.0;
    double val = f(t);
    if (val == 0.0) return 0.0;
    return val * scale / (om * om);
  };
  return integrate_adaptive(g, 0.0, 1.0, rel_tol);
}

QuadResult integrate_log_substituted(const std::function<double(double)>& f, double a, double b,
                                     double rel_tol, double abs_floor) {
  auto g = [&f](double w) {
    double x = std::exp(w);
    return f(x) * x;
  };
  return integrate_adaptive(g, std::log(a), std::log(b), rel_tol, abs_floor);
}

QuadResult integrate_logdist_substituted(const std::function<double(double)>& f, double x_e,
                                         double a, double b, double rel_tol, double abs_floor) {
  auto g = [&f, x_e](double s) {
    double d = std::exp(-s);
    return f(x_e - d) * d;
  };
  return integrate_adaptive(g, -std::log(x_e - a), -std::log(x_e - b), rel_tol, abs_floor);
}

double log_diff_noise_floor(double log_sf_at_x) {
  return 8.0 * std::numeric_limits<double>::epsilon() *
         std::max(1.0, std::fabs(log_sf_at_x));
}

double tail_decay_scale(const DistributionSpec& spec, double x) {
  double lsx = log_survival_at(spec, x);
  auto lr = [&](double t) {
    double u = x + t;
    if (!std::isfinite(u)) return -kInf;
    return log_survival_at(spec, u) - lsx;
  };
  double cap = std::isfinite(spec.x_e) ? 0.9 * (spec.x_e - x) : kInf;
  double t = std::isfinite(cap) ? 0.5 * cap : 1.0;
  int guard = 0;
  while (lr(t) > -0.5 && guard++ < 1500) {
    t *= 2.0;
    if (t >= cap) {
      t = cap;
      break;
    }
  }
  guard = 0;
  while (lr(t) < -2.5 && t > 1e-290 && guard++ < 1500) t *= 0.5;
  return t;
}

ScaledTailIntegrals tail_ratio_integrals_scaled(const DistributionSpec& spec, double x,
                                                double rel_tol) {
  ScaledTailIntegrals out;
  double S = tail_decay_scale(spec, x);
  out.scale = S;
  double lsx = log_survival_at(spec, x);
  // The survival-ratio difference logsf(x+St) - logsf(x) carries
  // absolute rounding noise ~ |logsf| * eps, so demanding less than
  // that would subdivide forever.
  rel_tol = std::max(rel_tol, log_diff_noise_floor(lsx));
  auto ratio = [&](double tau) {
    double u = x + S * tau;
    if (!std::isfinite(u)) return 0.0;
    double d = log_survival_at(spec, u) - lsx;
    return d > -745.0 ? std::exp(d) : 0.0;
  };
  auto run = [&](auto weight) {
    std::function<double(double)> g = [&](double tau) { return ratio(tau) * weight(tau); };
    QuadResult q;
    if (std::isfinite(spec.x_e)) {
      q = integrate_adaptive(g, 0.0, (spec.x_e - x) / S, rel_tol);
    } else {
      q = integrate_semi_infinite(g, 1.0, rel_tol);
    }
    if (!q.converged)
      throw QuadratureError("tail ratio integral did not converge near [" +
                                describe(q.fail_lo) + ", " + describe(q.fail_hi) + "] (scaled)",
                            q.value, q.fail_lo, q.fail_hi);
    return q.value;
  };
  out.i1 = run([](double) { return 1.0; });
  out.i2 = run([](double t) { return t; });
  out.i3 = run([](double t) { return 0.5 * t * t; });
  return out;
}

double tail_ratio_integral(const DistributionSpec& spec, double x, TailIntegralMode mode,
                           double rel_tol) {
  double S = tail_decay_scale(spec, x);
  double lsx = log_survival_at(spec, x);
  rel_tol = std::max(rel_tol, log_diff_noise_floor(lsx));
  auto ratio = [&](double tau) {
    double u = x + S * tau;
    if (!std::isfinite(u)) return 0.0;
    double d = log_survival_at(spec, u) - lsx;
    return d > -745.0 ? std::exp(d) : 0.0;
  };
  int pow = mode == TailIntegralMode::Single ? 1 : mode == TailIntegralMode::Double ? 2 : 3;
  std::function<double(double)> g = [&](double tau) {
    double w = pow == 1 ? 1.0 : pow == 2 ? tau : 0.5 * tau * tau;
    return ratio(tau) * w;
  };
  QuadResult q;
  if (std::isfinite(spec.x_e)) {
    q = integrate_adaptive(g, 0.0, (spec.x_e - x) / S, rel_tol);
  } else {
    q = integrate_semi_infinite(g, 1.0, rel_tol);
  }
  double factor = std::pow(S, pow);
  if (!q.converged)
    throw QuadratureError("tail ratio integral did not converge near t in [" +
                              describe(q.fail_lo * S) + ", " + describe(q.fail_hi * S) + "]",
                          q.value * factor, q.fail_lo, q.fail_hi);
  return q.value * factor;
}

CumulativeTrail cumulative_quadrature(const std::function<double(double)>& f, double z,
                                      const ProbeGrid& grid, double rel_tol, double abs_floor) {
  CumulativeTrail out;
  out.x.push_back(z);
  out.value.push_back(0.0);
  double acc = 0.0;
  double lo = z;
  const bool finite_end = std::isfinite(grid.x_e);
  for (double hi : grid.points) {
    if (!(hi > lo)) continue;
    QuadResult q;
    if (finite_end)
      q = integrate_logdist_substituted(f, grid.x_e, lo, hi, rel_tol, abs_floor);
    else if (lo > 0.0)
      q = integrate_log_substituted(f, lo, hi, rel_tol, abs_floor);
    else
      q = integrate_adaptive(f, lo, hi, rel_tol, abs_floor);
    if (!q.converged) {
      out.converged = false;
      out.fail_lo = q.fail_lo;
      out.fail_hi = q.fail_hi;
      return out;
    }
    acc += q.value;
    out.x.push_back(hi);
    out.value.push_back(acc);
    lo = hi;
  }
  return out;
}

}  // namespace tailaux
