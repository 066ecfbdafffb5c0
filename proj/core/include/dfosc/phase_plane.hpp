#pragma once

#include <utility>
#include <vector>

#include "dfosc/dde.hpp"

namespace dfosc {

/// Rows (t, x(t), x(t-1)) for t >= 0; the delayed column is an exact grid
/// shift by n samples.
struct PhaseRow {
  double t = 0.0;
  double x = 0.0;
  double x_delayed = 0.0;
};
std::vector<PhaseRow> phase_polyline(const SolutionTrace& trace);

/// Plane curve (x, x_delayed) from the rows, optionally strided.
std::vector<std::pair<double, double>> phase_curve(const std::vector<PhaseRow>& rows,
                                                   int stride = 1);

/// True when two polylines have at least one proper segment crossing
/// (shared endpoints and collinear touches count as crossings).
bool polylines_intersect(const std::vector<std::pair<double, double>>& a,
                         const std::vector<std::pair<double, double>>& b);

}  // namespace dfosc
