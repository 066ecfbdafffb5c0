#pragma once

#include <optional>
#include <vector>

#include "dfosc/feedback.hpp"
#include "dfosc/segment.hpp"

namespace dfosc {

struct ZeroCrossing {
  double t = 0.0;
  int direction = 0;  // +1 crossing upward, -1 downward
};

struct SlowOscViolation {
  int index = 0;  // zeros[index] -> zeros[index+1] is the offending gap
  double gap = 0.0;
};

/// A computed solution on [-1, T] with t_k = -1 + k/n, plus its refined zero
/// list on (0, T].  Immutable after construction.
class SolutionTrace {
 public:
  SolutionTrace(int n, std::vector<double> samples, std::vector<ZeroCrossing> zeros,
                std::vector<SlowOscViolation> violations);

  int n() const { return n_; }
  double h() const { return 1.0 / n_; }
  double t_begin() const { return -1.0; }
  double t_end() const { return time_at(static_cast<int>(samples_.size()) - 1); }
  double time_at(int k) const { return static_cast<double>(k) / n_ - 1.0; }

  const std::vector<double>& samples() const { return samples_; }

  /// Linear interpolation of the trace at time t in [-1, T].
  double value_at(double t) const;

  /// One-sided value at t: extends the grid interval left of t linearly.
  /// Exact up to scheme error when the solution is linear on that side, even
  /// if a derivative kink sits at t itself.
  double value_at_left(double t) const;

  const std::vector<ZeroCrossing>& zeros() const { return zeros_; }
  int zero_count() const { return static_cast<int>(zeros_.size()); }
  const std::vector<SlowOscViolation>& slow_osc_violations() const { return violations_; }

  /// Max |x| over [t0, t1] evaluated on grid nodes (endpoints clamped).
  double max_abs_over(double t0, double t1) const;

 private:
  int n_;
  std::vector<double> samples_;
  std::vector<ZeroCrossing> zeros_;
  std::vector<SlowOscViolation> violations_;
};

/// Marches x' (t) = f(x(t-1)) from the history segment by the method of steps
/// with an explicit trapezoid rule; the unit delay equals exactly n grid
/// steps, so delayed values are always grid values.  T is rounded up to a
/// multiple of the grid step.  Zeros are detected and refined on (0, T].
SolutionTrace integrate(const FeedbackFn& f, const Segment& phi, double T);

/// Scans a sample array for sign changes and refines each crossing by linear
/// interpolation; grid-exact zeros are resolved by the signs of the nearest
/// nonzero neighbors.  Gaps at or below 1 - h are flagged.
struct ZeroScan {
  std::vector<ZeroCrossing> zeros;
  std::vector<SlowOscViolation> violations;
};
ZeroScan find_zeros(int n, const std::vector<double>& samples);

/// First time in (t_min, T] where the trace crosses `level` in the given
/// direction (+1 upward, -1 downward), refined by linear interpolation.
std::optional<double> first_crossing(const SolutionTrace& trace, double level, int direction,
                                     double t_min);

enum class SnapMode { None, SnapLeftEndpoint };

/// The segment x_t on [t-1, t], resampled on the n+1 grid by linear
/// interpolation.  With SnapLeftEndpoint, a left endpoint within `snap_tol`
/// of zero is set to exactly zero.
Segment segment_at(const SolutionTrace& trace, double t, SnapMode mode = SnapMode::None,
                   double snap_tol = 0.0);

}  // namespace dfosc
