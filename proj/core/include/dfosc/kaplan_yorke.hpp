#pragma once

#include <array>
#include <utility>
#include <vector>

#include "dfosc/dde.hpp"
#include "dfosc/feedback.hpp"

namespace dfosc {

/// First integral of the planar system u' = f(v), v' = -f(u):
/// H(u, v) = -F(u) - F(v) with F the antiderivative of f.  Closed form,
/// zero at the origin, positive elsewhere.
double hamiltonian(const FeedbackFn& f, double u, double v);

struct PlanarPoint {
  double t = 0.0;
  double u = 0.0;
  double v = 0.0;
};

struct PlanarOptions {
  double step = 1e-4;
  double t_max = 2000.0;       // safety cap for event searches
  double drift_tol = 0.0;      // 0 means 1e-8 * max(1, H0)
  bool split_at_kinks = true;  // sub-step at breakpoint crossings
};

/// Trajectory of the planar system with conservation bookkeeping.  Points are
/// ordered in time with spacing at most `step` (kink-splitting may insert
/// intermediate points).
class PlanarTrace {
 public:
  PlanarTrace(double step, std::vector<PlanarPoint> points, double h0, double max_h_drift);

  double step() const { return step_; }
  const std::vector<PlanarPoint>& points() const { return points_; }
  double h0() const { return h0_; }
  double max_h_drift() const { return max_h_drift_; }
  double t_end() const { return points_.back().t; }

  /// Linear interpolation of (u, v) at time t within [0, t_end].
  std::pair<double, double> state_at(double t) const;

 private:
  double step_;
  std::vector<PlanarPoint> points_;
  double h0_;
  double max_h_drift_;
};

/// Classical 4th-order integration from (u0, 0).  Throws when the recorded
/// Hamiltonian drift exceeds the tolerance, advising a smaller step.
PlanarTrace integrate_planar(const FeedbackFn& f, double u0, double t_max,
                             const PlanarOptions& opts = {});

struct TauResult {
  double u0 = 0.0;
  double tau = 0.0;
  double hit_refinement_width = 0.0;
};

/// First positive time at which the orbit launched from (u0, 0) reaches the
/// positive v-axis; the hit is refined by bisection on the one-step map to a
/// width of 1e-12.
TauResult tau(const FeedbackFn& f, double u0, const PlanarOptions& opts = {});

struct KYSolution {
  double u0 = 0.0;
  double tau = 0.0;                // within tol of 1
  double dde_residual = 0.0;       // max |x'(t) - f(x(t-1))| over one period
  double symmetry_residual = 0.0;  // max |x(t) + x(t-2)| over one period
};

/// Bisection for tau(u0) = 1 on a bracket with opposite signs of tau - 1,
/// followed by a delay-equation residual and half-turn symmetry check of the
/// induced period-4 solution x(t) = u(t; u0).  A bracket without a sign
/// change is rejected, reporting both tau values.
KYSolution find_ky_amplitude(const FeedbackFn& f, double bracket_lo, double bracket_hi,
                             double tol = 1e-9, const PlanarOptions& opts = {});

/// Scans u0 over a geometric grid from 1e-3 * (first-piece width) to
/// 10 * x_max and returns every bracket on which tau - 1 changes sign.
std::vector<std::pair<double, double>> scan_tau_brackets(const FeedbackFn& f,
                                                         int points_per_decade = 8,
                                                         const PlanarOptions& opts = {});

struct TauLimitReport {
  double expected_limit = 0.0;  // -(pi/2) / f'(0)
  std::array<double, 3> u_small{};
  std::array<double, 3> tau_small{};
  std::array<double, 3> deviation{};
  bool small_limit_ok = false;
  double tau_xmax = 0.0;
  double tau_10xmax = 0.0;
  bool growth_ok = false;
  bool pass = false;
};

/// Checks tau near zero against -(pi/2)/f'(0) (within 1%, with deviations
/// not growing as u shrinks) and monotone growth at large amplitude.
TauLimitReport verify_tau_limits(const FeedbackFn& f, const PlanarOptions& opts = {});

/// One period of the induced solution x(t) = u(t; u0) resampled on the delay
/// grid over [-1, 4]; requires |tau(u0) - 1| < tau_tol.
SolutionTrace ky_period4_trace(const FeedbackFn& f, double u0, int n, double tau_tol = 1e-6,
                               const PlanarOptions& opts = {});

}  // namespace dfosc
