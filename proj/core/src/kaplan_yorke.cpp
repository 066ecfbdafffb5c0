#include "dfosc/kaplan_yorke.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dfosc {

double hamiltonian(const FeedbackFn& f, double u, double v) {
  return -f.antiderivative(u) - f.antiderivative(v);
}

PlanarTrace::PlanarTrace(double step, std::vector<PlanarPoint> points, double h0,
                         double max_h_drift)
    : step_(step), points_(std::move(points)), h0_(h0), max_h_drift_(max_h_drift) {
  if (points_.size() < 2) throw std::invalid_argument("planar trace: too few points");
}

std::pair<double, double> PlanarTrace::state_at(double t) const {
  if (t <= points_.front().t) return {points_.front().u, points_.front().v};
  if (t >= points_.back().t) return {points_.back().u, points_.back().v};
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](double val, const PlanarPoint& p) { return val < p.t; });
  const PlanarPoint& r = *it;
  const PlanarPoint& l = *(it - 1);
  const double theta = (t - l.t) / (r.t - l.t);
  return {l.u * (1.0 - theta) + r.u * theta, l.v * (1.0 - theta) + r.v * theta};
}

namespace {

struct State {
  double u = 0.0;
  double v = 0.0;
};

State rk4_step(const FeedbackFn& f, const State& s, double h) {
  const auto deriv = [&f](const State& q) { return State{f(q.v), -f(q.u)}; };
  const State k1 = deriv(s);
  const State k2 = deriv({s.u + 0.5 * h * k1.u, s.v + 0.5 * h * k1.v});
  const State k3 = deriv({s.u + 0.5 * h * k2.u, s.v + 0.5 * h * k2.v});
  const State k4 = deriv({s.u + h * k3.u, s.v + h * k3.v});
  return {s.u + h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
          s.v + h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
}

/// Sorted kink abscissae of f, mirrored to the negative axis.  The origin is
/// omitted: the odd extension of the first linear piece is smooth there.
std::vector<double> kink_levels(const FeedbackFn& f) {
  std::vector<double> levels;
  for (size_t i = 1; i < f.breakpoints().size(); ++i) {
    const double x = f.breakpoints()[i].x;
    levels.push_back(-x);
    levels.push_back(x);
  }
  std::sort(levels.begin(), levels.end());
  return levels;
}

bool interval_hits_level(const std::vector<double>& levels, double a, double b) {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  auto it = std::upper_bound(levels.begin(), levels.end(), lo);
  return it != levels.end() && *it < hi;
}

/// One stepping unit: advances by at most `h`, splitting at the first kink
/// crossing of either component so that every accepted sub-step stays inside
/// a region where the right-hand side is smooth.
class Stepper {
 public:
  Stepper(const FeedbackFn& f, bool split) : f_(f), split_(split), levels_(kink_levels(f)) {}

  /// Returns the accepted step size (== h unless a crossing forced a split).
  double advance(State& s, double h) const {
    State trial = rk4_step(f_, s, h);
    if (!split_ || (!interval_hits_level(levels_, s.u, trial.u) &&
                    !interval_hits_level(levels_, s.v, trial.v))) {
      s = trial;
      return h;
    }
    // Bisect the step size down to the first crossing.
    double lo = 0.0, hi = h;
    for (int i = 0; i < 60 && hi - lo > 1e-16 * std::max(1.0, h); ++i) {
      const double mid = 0.5 * (lo + hi);
      const State probe = rk4_step(f_, s, mid);
      if (interval_hits_level(levels_, s.u, probe.u) ||
          interval_hits_level(levels_, s.v, probe.v)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    s = rk4_step(f_, s, hi);
    return hi;
  }

  const FeedbackFn& f() const { return f_; }

 private:
  const FeedbackFn& f_;
  bool split_;
  std::vector<double> levels_;
};

}  // namespace

PlanarTrace integrate_planar(const FeedbackFn& f, double u0, double t_max,
                             const PlanarOptions& opts) {
  if (!(u0 > 0.0)) throw std::invalid_argument("planar: u0 must be positive");
  if (!(t_max > 0.0)) throw std::invalid_argument("planar: t_max must be positive");
  const Stepper stepper(f, opts.split_at_kinks);
  const double h0 = hamiltonian(f, u0, 0.0);
  const double tol = opts.drift_tol > 0.0 ? opts.drift_tol : 1e-8 * std::max(1.0, h0);

  std::vector<PlanarPoint> pts;
  pts.reserve(static_cast<size_t>(t_max / opts.step) + 16);
  State s{u0, 0.0};
  double t = 0.0;
  double drift = 0.0;
  pts.push_back({t, s.u, s.v});
  while (t < t_max) {
    const double h = std::min(opts.step, t_max - t);
    t += stepper.advance(s, h);
    pts.push_back({t, s.u, s.v});
    drift = std::max(drift, std::abs(hamiltonian(f, s.u, s.v) - h0));
  }
  if (drift > tol) {
    throw std::runtime_error("planar: first-integral drift " + std::to_string(drift) +
                             " exceeds tolerance; reduce the step size");
  }
  return PlanarTrace(opts.step, std::move(pts), h0, drift);
}

TauResult tau(const FeedbackFn& f, double u0, const PlanarOptions& opts) {
  if (!(u0 > 0.0)) throw std::invalid_argument("tau: u0 must be positive");
  const Stepper stepper(f, opts.split_at_kinks);
  State s{u0, 0.0};
  double t = 0.0;
  while (t < opts.t_max) {
    const State prev = s;
    const double taken = stepper.advance(s, opts.step);
    if (prev.u > 0.0 && s.u <= 0.0 && s.v > 0.0) {
      // Bisect the sub-step map for the axis hit.
      double lo = 0.0, hi = taken;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        State probe = prev;
        stepper.advance(probe, mid);
        (probe.u > 0.0 ? lo : hi) = mid;
      }
      return {u0, t + 0.5 * (lo + hi), hi - lo};
    }
    t += taken;
  }
  throw std::runtime_error("tau: no axis hit before t_max; orbit should be closed");
}

KYSolution find_ky_amplitude(const FeedbackFn& f, double bracket_lo, double bracket_hi,
                             double tol, const PlanarOptions& opts) {
  if (!(bracket_lo > 0.0 && bracket_hi > bracket_lo)) {
    throw std::invalid_argument("ky: need 0 < bracket_lo < bracket_hi");
  }
  double lo = bracket_lo, hi = bracket_hi;
  double g_lo = tau(f, lo, opts).tau - 1.0;
  const double g_hi = tau(f, hi, opts).tau - 1.0;
  if (g_lo == 0.0) {
    // fall through with u0 = lo
  } else if (g_lo * g_hi > 0.0) {
    throw std::runtime_error("ky: no sign change of tau - 1 on the bracket (tau_lo = " +
                             std::to_string(g_lo + 1.0) + ", tau_hi = " +
                             std::to_string(g_hi + 1.0) + ")");
  }

  double u0 = lo, g = g_lo;
  for (int i = 0; i < 200 && std::abs(g) >= tol; ++i) {
    u0 = 0.5 * (lo + hi);
    g = tau(f, u0, opts).tau - 1.0;
    if ((g > 0.0) == (g_lo > 0.0)) {
      lo = u0;
      g_lo = g;
    } else {
      hi = u0;
    }
  }
  if (std::abs(g) >= tol) {
    throw std::runtime_error("ky: bisection stalled before reaching the tau tolerance");
  }

  KYSolution sol;
  sol.u0 = u0;
  sol.tau = g + 1.0;

  // Residual checks of the induced solution x(t) = u(t; u0), extended
  // periodically with period 4*tau.
  const double period = 4.0 * sol.tau;
  PlanarOptions orbit_opts = opts;
  orbit_opts.drift_tol = 1e300;  // drift is validated separately
  const PlanarTrace orbit = integrate_planar(f, u0, period, orbit_opts);
  const auto wrap = [&](double t) {
    double w = std::fmod(t, period);
    if (w < 0.0) w += period;
    return w;
  };
  const int grid = 4000;
  for (int k = 0; k <= grid; ++k) {
    const double t = period * static_cast<double>(k) / grid;
    const auto [u_t, v_t] = orbit.state_at(t);
    const auto [u_delay, v_unused] = orbit.state_at(wrap(t - 1.0));
    (void)v_unused;
    sol.dde_residual = std::max(sol.dde_residual, std::abs(f(v_t) - f(u_delay)));
    const auto [u_half, v_half] = orbit.state_at(wrap(t - 2.0));
    (void)v_half;
    sol.symmetry_residual = std::max(sol.symmetry_residual, std::abs(u_t + u_half));
  }
  return sol;
}

std::vector<std::pair<double, double>> scan_tau_brackets(const FeedbackFn& f,
                                                         int points_per_decade,
                                                         const PlanarOptions& opts) {
  const double u_min = 1e-3 * f.breakpoints()[1].x;
  const double u_max = 10.0 * f.x_max();
  const double decades = std::log10(u_max / u_min);
  const int count = std::max(2, static_cast<int>(std::ceil(decades * points_per_decade)) + 1);

  std::vector<std::pair<double, double>> brackets;
  double prev_u = u_min;
  double prev_g = tau(f, u_min, opts).tau - 1.0;
  for (int i = 1; i < count; ++i) {
    const double u = u_min * std::pow(u_max / u_min, static_cast<double>(i) / (count - 1));
    const double g = tau(f, u, opts).tau - 1.0;
    if (prev_g * g < 0.0) brackets.emplace_back(prev_u, u);
    prev_u = u;
    prev_g = g;
  }
  return brackets;
}

TauLimitReport verify_tau_limits(const FeedbackFn& f, const PlanarOptions& opts) {
  TauLimitReport rep;
  rep.expected_limit = -(0.5 * 3.14159265358979323846) / f.slope0();
  const double width = f.breakpoints()[1].x;
  rep.u_small = {1e-3 * width, 1e-4 * width, 1e-5 * width};
  rep.small_limit_ok = true;
  for (size_t i = 0; i < 3; ++i) {
    rep.tau_small[i] = tau(f, rep.u_small[i], opts).tau;
    rep.deviation[i] = std::abs(rep.tau_small[i] - rep.expected_limit);
    if (rep.deviation[i] > 0.01 * rep.expected_limit) rep.small_limit_ok = false;
  }
  // Deviations must not grow as u shrinks (slack for integrator noise).
  for (size_t i = 1; i < 3; ++i) {
    if (rep.deviation[i] > rep.deviation[i - 1] + 1e-9) rep.small_limit_ok = false;
  }
  rep.tau_xmax = tau(f, f.x_max(), opts).tau;
  rep.tau_10xmax = tau(f, 10.0 * f.x_max(), opts).tau;
  rep.growth_ok = rep.tau_10xmax > rep.tau_xmax;
  rep.pass = rep.small_limit_ok && rep.growth_ok;
  return rep;
}

SolutionTrace ky_period4_trace(const FeedbackFn& f, double u0, int n, double tau_tol,
                               const PlanarOptions& opts) {
  const TauResult tr = tau(f, u0, opts);
  if (std::abs(tr.tau - 1.0) >= tau_tol) {
    throw std::invalid_argument("ky trace: tau(u0) is not within tolerance of 1");
  }
  const double period = 4.0 * tr.tau;
  PlanarOptions orbit_opts = opts;
  orbit_opts.drift_tol = 1e300;
  const PlanarTrace orbit = integrate_planar(f, u0, period, orbit_opts);
  const auto wrap = [&](double t) {
    double w = std::fmod(t, period);
    if (w < 0.0) w += period;
    return w;
  };
  const int total = 5 * n;  // [-1, 4] on the delay grid
  std::vector<double> samples(static_cast<size_t>(total) + 1);
  for (int k = 0; k <= total; ++k) {
    const double t = static_cast<double>(k) / n - 1.0;
    samples[static_cast<size_t>(k)] = orbit.state_at(wrap(t)).first;
  }
  ZeroScan scan = find_zeros(n, samples);
  return SolutionTrace(n, std::move(samples), std::move(scan.zeros), std::move(scan.violations));
}

}  // namespace dfosc
