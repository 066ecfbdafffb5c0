#pragma once

#include <cmath>
#include <functional>

#include "dfosc/feedback.hpp"

namespace testutil {

/// The worked parameter set (a, c, delta, gamma) = (1, 1/20, 2/3, 4).
inline dfosc::PlateauParams worked_params() { return {1.0, 0.05, 2.0 / 3.0, 4.0}; }

inline dfosc::FeedbackFn worked_feedback(double slope0 = -2.0) {
  return dfosc::build_plateau_feedback(worked_params(), slope0);
}

namespace detail {
inline double simpson(const std::function<double(double)>& g, double a, double b) {
  return (b - a) / 6.0 * (g(a) + 4.0 * g(0.5 * (a + b)) + g(b));
}

inline double adaptive(const std::function<double(double)>& g, double a, double b, double whole,
                       double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(g, a, m);
  const double right = simpson(g, m, b);
  if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive(g, a, m, left, 0.5 * tol, depth + 1) +
         adaptive(g, m, b, right, 0.5 * tol, depth + 1);
}
}  // namespace detail

/// Independent quadrature oracle (adaptive Simpson).
inline double adaptive_quadrature(const std::function<double(double)>& g, double a, double b,
                                  double tol = 1e-13) {
  if (a == b) return 0.0;
  return detail::adaptive(g, a, b, detail::simpson(g, a, b), tol, 0);
}

}  // namespace testutil
