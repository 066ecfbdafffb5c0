#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dfosc {

struct Breakpoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Odd, continuous, piecewise-linear negative-feedback function.
///
/// Values are stored as breakpoints on [0, x_max] with a constant tail beyond
/// x_max; negative arguments are handled by odd extension f(-x) = -f(x).
/// Construction enforces: breakpoints strictly increasing starting at (0, 0),
/// every value for x > 0 negative (so x*f(x) < 0), tail value negative, and
/// a negative first-piece slope (= f'(0)).
class FeedbackFn {
 public:
  FeedbackFn(std::vector<Breakpoint> points, double tail_value);

  /// Exact piecewise-linear evaluation with odd extension.
  double operator()(double x) const;

  /// Slope of the first linear piece, i.e. f'(0).
  double slope0() const { return slope0_; }

  /// Global bound M = sup |f|.
  double bound() const { return bound_; }

  /// Last breakpoint abscissa; f is constant for x >= x_max.
  double x_max() const { return points_.back().x; }

  double tail_value() const { return tail_; }

  /// Antiderivative F(x) = integral of f from 0 to x, in closed form
  /// (piecewise quadratic).  F is even because f is odd.
  double antiderivative(double x) const;

  /// Integral of |f| over [x0, x1], 0 <= x0 <= x1, exact per piece.
  double integral_abs(double x0, double x1) const;

  const std::vector<Breakpoint>& breakpoints() const { return points_; }

  /// Plain-text breakpoint table; round-trips bit-exactly.
  std::string to_text() const;
  static FeedbackFn from_text(std::string_view text);

  friend bool operator==(const FeedbackFn& a, const FeedbackFn& b) {
    return a.points_ == b.points_ && a.tail_ == b.tail_;
  }

 private:
  std::vector<Breakpoint> points_;
  double tail_;
  double slope0_;
  double bound_;
  std::vector<double> cum_;  // antiderivative values at breakpoints
};

/// Parameters of the two-plateau feedback construction.  All positive, with
///   (1) c < min(a, delta)
///   (2) gamma >= 4a and gamma > delta
///   (3) delta + (c/delta)*gamma <= a
struct PlateauParams {
  double a = 0.0;
  double c = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
};

struct ConditionCheck {
  std::string name;
  bool pass = false;
  double margin = 0.0;  // >= 0 (or > 0 for strict) means pass
};

struct ValidationReport {
  std::vector<ConditionCheck> conditions;
  bool valid = false;
  std::string to_text() const;
};

/// Per-condition pass/fail with numeric slack.  Throws std::invalid_argument
/// on non-positive fields.
ValidationReport validate_plateau_params(const PlateauParams& p);

/// Builds the two-plateau feedback: slope0*x on [0, a-c], linear to (a, -gamma),
/// constant -gamma on [a, 2a-c], linear to (2a, -delta), constant -delta tail.
/// Requires a valid parameter set and |slope0|*(a-c) <= gamma.
FeedbackFn build_plateau_feedback(const PlateauParams& p, double slope0);

/// Derived per-scale parameters of the multi-scale construction:
/// a = gamma/4, delta = gamma/8, c = gamma/64.
PlateauParams multiscale_scale_params(double gamma);

/// Builds one feedback function carrying the plateau structure at every scale
/// in `gammas` (strictly decreasing, each below a quarter of its predecessor).
/// The innermost scale holds the linear piece through 0; by default its slope
/// is the steepest one keeping |f| within the innermost gamma.
FeedbackFn build_multiscale(const std::vector<double>& gammas,
                            std::optional<double> slope0 = std::nullopt);

/// Bounds hypothesis on a feedback function: |f| <= mu everywhere and
/// |f(x)| >= sigma whenever |x| >= beta.
struct FeedbackBounds {
  double mu = 0.0;
  double beta = 0.0;
  double sigma = 0.0;
};

/// Exact check of the bounds hypothesis on the piecewise-linear pieces.
bool check_feedback_bounds(const FeedbackFn& f, const FeedbackBounds& b);

struct TransitCheck {
  bool pass = false;
  double lhs = 0.0;  // integral_abs(f, 0, a) / gamma
  double rhs = 0.0;  // a - c
  double margin = 0.0;
};

/// Checks integral_abs(f, 0, a)/gamma < a - c, the gate for a quarter turn of
/// the planar system faster than one delay at amplitude 2a - c.
TransitCheck check_transit_bound(const FeedbackFn& f, const PlateauParams& p);

enum class StabilityClass { Stable, Unstable, Boundary };

/// Classifies the zero solution by the first-piece slope against the -pi/2
/// threshold of the characteristic equation.  Requires slope0 < 0.
StabilityClass stability_class(double slope0);

}  // namespace dfosc
