#include "dfosc/phase_plane.hpp"

#include <algorithm>
#include <cmath>

namespace dfosc {

std::vector<PhaseRow> phase_polyline(const SolutionTrace& trace) {
  const int n = trace.n();
  const auto& x = trace.samples();
  std::vector<PhaseRow> rows;
  rows.reserve(x.size() - static_cast<size_t>(n));
  for (size_t k = static_cast<size_t>(n); k < x.size(); ++k) {
    rows.push_back({trace.time_at(static_cast<int>(k)), x[k], x[k - static_cast<size_t>(n)]});
  }
  return rows;
}

std::vector<std::pair<double, double>> phase_curve(const std::vector<PhaseRow>& rows,
                                                   int stride) {
  std::vector<std::pair<double, double>> pts;
  for (size_t i = 0; i < rows.size(); i += static_cast<size_t>(std::max(1, stride))) {
    pts.emplace_back(rows[i].x, rows[i].x_delayed);
  }
  if (!rows.empty() && (pts.empty() || pts.back().first != rows.back().x ||
                        pts.back().second != rows.back().x_delayed)) {
    pts.emplace_back(rows.back().x, rows.back().x_delayed);
  }
  return pts;
}

namespace {

using Pt = std::pair<double, double>;

double orient(const Pt& a, const Pt& b, const Pt& c) {
  return (b.first - a.first) * (c.second - a.second) -
         (b.second - a.second) * (c.first - a.first);
}

bool on_segment(const Pt& a, const Pt& b, const Pt& p) {
  return std::min(a.first, b.first) <= p.first && p.first <= std::max(a.first, b.first) &&
         std::min(a.second, b.second) <= p.second && p.second <= std::max(a.second, b.second);
}

bool segments_cross(const Pt& p1, const Pt& p2, const Pt& q1, const Pt& q2) {
  const double d1 = orient(q1, q2, p1);
  const double d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1);
  const double d4 = orient(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

}  // namespace

bool polylines_intersect(const std::vector<Pt>& a, const std::vector<Pt>& b) {
  for (size_t i = 0; i + 1 < a.size(); ++i) {
    const double lox = std::min(a[i].first, a[i + 1].first);
    const double hix = std::max(a[i].first, a[i + 1].first);
    const double loy = std::min(a[i].second, a[i + 1].second);
    const double hiy = std::max(a[i].second, a[i + 1].second);
    for (size_t j = 0; j + 1 < b.size(); ++j) {
      if (std::max(b[j].first, b[j + 1].first) < lox ||
          std::min(b[j].first, b[j + 1].first) > hix ||
          std::max(b[j].second, b[j + 1].second) < loy ||
          std::min(b[j].second, b[j + 1].second) > hiy) {
        continue;
      }
      if (segments_cross(a[i], a[i + 1], b[j], b[j + 1])) return true;
    }
  }
  return false;
}

}  // namespace dfosc
