#include "dfosc/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dfosc {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr double kHalfPi = 1.57079632679489661923;

}  // namespace

FeedbackFn::FeedbackFn(std::vector<Breakpoint> points, double tail_value)
    : points_(std::move(points)), tail_(tail_value) {
  if (points_.size() < 2) {
    throw std::invalid_argument("feedback: need at least two breakpoints");
  }
  if (points_.front().x != 0.0 || points_.front().y != 0.0) {
    throw std::invalid_argument("feedback: first breakpoint must be (0, 0)");
  }
  for (size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i].x > points_[i - 1].x)) {
      throw std::invalid_argument("feedback: breakpoints must be strictly increasing in x");
    }
    if (!(points_[i].y < 0.0)) {
      throw std::invalid_argument("feedback: values must be negative for x > 0");
    }
  }
  if (!(tail_ < 0.0)) {
    throw std::invalid_argument("feedback: tail value must be negative");
  }
  if (tail_ != points_.back().y) {
    throw std::invalid_argument("feedback: tail value must continue the last breakpoint");
  }
  slope0_ = (points_[1].y - points_[0].y) / (points_[1].x - points_[0].x);
  if (!(slope0_ < 0.0)) {
    throw std::invalid_argument("feedback: first-piece slope must be negative");
  }
  bound_ = -tail_;
  for (const auto& p : points_) bound_ = std::max(bound_, -p.y);

  cum_.resize(points_.size());
  cum_[0] = 0.0;
  for (size_t i = 1; i < points_.size(); ++i) {
    const auto& l = points_[i - 1];
    const auto& r = points_[i];
    cum_[i] = cum_[i - 1] + 0.5 * (l.y + r.y) * (r.x - l.x);
  }
}

double FeedbackFn::operator()(double x) const {
  if (x < 0.0) return -(*this)(-x);
  if (x >= points_.back().x) return tail_;
  // Find the piece [points_[i], points_[i+1]) containing x.
  auto it = std::upper_bound(points_.begin(), points_.end(), x,
                             [](double v, const Breakpoint& b) { return v < b.x; });
  size_t i = static_cast<size_t>(it - points_.begin()) - 1;
  const auto& l = points_[i];
  const auto& r = points_[i + 1];
  return l.y + (x - l.x) * ((r.y - l.y) / (r.x - l.x));
}

double FeedbackFn::antiderivative(double x) const {
  if (x < 0.0) return antiderivative(-x);  // F is even for odd f
  if (x >= points_.back().x) {
    return cum_.back() + tail_ * (x - points_.back().x);
  }
  auto it = std::upper_bound(points_.begin(), points_.end(), x,
                             [](double v, const Breakpoint& b) { return v < b.x; });
  size_t i = static_cast<size_t>(it - points_.begin()) - 1;
  const auto& l = points_[i];
  const auto& r = points_[i + 1];
  const double slope = (r.y - l.y) / (r.x - l.x);
  const double dx = x - l.x;
  return cum_[i] + l.y * dx + 0.5 * slope * dx * dx;
}

double FeedbackFn::integral_abs(double x0, double x1) const {
  if (x0 < 0.0 || x1 < x0) {
    throw std::invalid_argument("integral_abs: need 0 <= x0 <= x1");
  }
  // f <= 0 on [0, inf), so |f| integrates to -(F(x1) - F(x0)).
  return antiderivative(x0) - antiderivative(x1);
}

std::string FeedbackFn::to_text() const {
  std::string out = "# feedback v1\n";
  for (const auto& p : points_) {
    out += fmt_double(p.x);
    out += ' ';
    out += fmt_double(p.y);
    out += '\n';
  }
  out += "tail ";
  out += fmt_double(tail_);
  out += '\n';
  return out;
}

FeedbackFn FeedbackFn::from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "# feedback v1") {
    throw std::invalid_argument("feedback file: missing '# feedback v1' header");
  }
  std::vector<Breakpoint> pts;
  std::optional<double> tail;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string first;
    ls >> first;
    if (first == "tail") {
      double v;
      if (!(ls >> v)) throw std::invalid_argument("feedback file: malformed tail line");
      tail = v;
    } else {
      double x = std::stod(first), y;
      if (!(ls >> y)) throw std::invalid_argument("feedback file: malformed breakpoint line");
      pts.push_back({x, y});
    }
  }
  if (!tail) throw std::invalid_argument("feedback file: missing tail line");
  return FeedbackFn(std::move(pts), *tail);
}

ValidationReport validate_plateau_params(const PlateauParams& p) {
  if (!(p.a > 0.0 && p.c > 0.0 && p.delta > 0.0 && p.gamma > 0.0)) {
    throw std::invalid_argument("plateau params: all fields must be positive");
  }
  ValidationReport rep;
  const double m1 = std::min(p.a, p.delta) - p.c;
  rep.conditions.push_back({"c < min(a, delta)", m1 > 0.0, m1});
  const double m2a = p.gamma - 4.0 * p.a;
  const double m2b = p.gamma - p.delta;
  rep.conditions.push_back(
      {"gamma >= 4a and gamma > delta", m2a >= 0.0 && m2b > 0.0, std::min(m2a, m2b)});
  const double m3 = p.a - (p.delta + (p.c / p.delta) * p.gamma);
  rep.conditions.push_back({"delta + (c/delta)*gamma <= a", m3 >= 0.0, m3});
  rep.valid = rep.conditions[0].pass && rep.conditions[1].pass && rep.conditions[2].pass;
  return rep;
}

std::string ValidationReport::to_text() const {
  std::string out;
  for (const auto& c : conditions) {
    out += c.pass ? "pass" : "FAIL";
    out += "  ";
    out += c.name;
    out += "  margin=";
    out += fmt_double(c.margin);
    out += '\n';
  }
  out += valid ? "valid\n" : "invalid\n";
  return out;
}

FeedbackFn build_plateau_feedback(const PlateauParams& p, double slope0) {
  const auto rep = validate_plateau_params(p);
  if (!rep.valid) {
    for (const auto& c : rep.conditions) {
      if (!c.pass) {
        throw std::invalid_argument("plateau feedback: condition failed: " + c.name);
      }
    }
  }
  if (!(slope0 < 0.0)) {
    throw std::invalid_argument("plateau feedback: slope0 must be negative");
  }
  if (-slope0 * (p.a - p.c) > p.gamma * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "plateau feedback: |slope0|*(a-c) exceeds gamma, breaking |f| <= gamma on [0, 2a]");
  }
  std::vector<Breakpoint> pts;
  pts.push_back({0.0, 0.0});
  pts.push_back({p.a - p.c, slope0 * (p.a - p.c)});
  pts.push_back({p.a, -p.gamma});
  pts.push_back({2.0 * p.a - p.c, -p.gamma});
  pts.push_back({2.0 * p.a, -p.delta});
  return FeedbackFn(std::move(pts), -p.delta);
}

PlateauParams multiscale_scale_params(double gamma) {
  return {gamma / 4.0, gamma / 64.0, gamma / 8.0, gamma};
}

FeedbackFn build_multiscale(const std::vector<double>& gammas, std::optional<double> slope0) {
  if (gammas.empty()) {
    throw std::invalid_argument("multiscale: need at least one gamma");
  }
  for (double g : gammas) {
    if (!(g > 0.0)) throw std::invalid_argument("multiscale: gammas must be positive");
  }
  for (size_t i = 1; i < gammas.size(); ++i) {
    if (!(gammas[i] < gammas[i - 1] / 4.0)) {
      throw std::invalid_argument(
          "multiscale: each gamma must be below a quarter of its predecessor");
    }
  }
  const size_t m = gammas.size();
  const PlateauParams inner = multiscale_scale_params(gammas[m - 1]);
  const double innermost_width = inner.a - inner.c;
  double s0 = slope0.value_or(-inner.gamma / innermost_width);
  if (!(s0 < 0.0)) throw std::invalid_argument("multiscale: slope0 must be negative");
  if (-s0 * innermost_width > inner.gamma * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "multiscale: |slope0|*(a-c) exceeds the innermost gamma");
  }

  std::vector<Breakpoint> pts;
  pts.push_back({0.0, 0.0});
  pts.push_back({innermost_width, s0 * innermost_width});
  // Scales from innermost to outermost; each contributes its plateau block and,
  // except the outermost, a constant stretch at -delta up to the next ramp.
  for (size_t k = m; k-- > 0;) {
    const PlateauParams sp = multiscale_scale_params(gammas[k]);
    if (k < m - 1) {
      // Constant at the inner scale's tail level until this scale's ramp begins.
      const double inner_gamma = gammas[k + 1];
      const double inner_delta = multiscale_scale_params(inner_gamma).delta;
      const double ramp_start = std::max(sp.a - sp.c, inner_gamma);
      pts.push_back({ramp_start, -inner_delta});
    }
    pts.push_back({sp.a, -sp.gamma});
    pts.push_back({2.0 * sp.a - sp.c, -sp.gamma});
    pts.push_back({2.0 * sp.a, -sp.delta});
  }
  const double tail = -multiscale_scale_params(gammas[0]).delta;
  return FeedbackFn(std::move(pts), tail);
}

bool check_feedback_bounds(const FeedbackFn& f, const FeedbackBounds& b) {
  if (!(b.mu > 0.0 && b.beta > 0.0 && b.sigma > 0.0)) {
    throw std::invalid_argument("feedback bounds: fields must be positive");
  }
  if (f.bound() > b.mu) return false;
  // min |f| over [beta, x_max] union the tail; |f| is piecewise linear, so the
  // minimum is attained at beta, at a breakpoint, or on the tail.
  if (b.beta < f.x_max()) {
    double lo = std::abs(f(b.beta));
    for (const auto& p : f.breakpoints()) {
      if (p.x > b.beta) lo = std::min(lo, -p.y);
    }
    if (lo < b.sigma) return false;
  }
  return std::abs(f.tail_value()) >= b.sigma;
}

TransitCheck check_transit_bound(const FeedbackFn& f, const PlateauParams& p) {
  TransitCheck out;
  out.lhs = f.integral_abs(0.0, p.a) / p.gamma;
  out.rhs = p.a - p.c;
  out.margin = out.rhs - out.lhs;
  out.pass = out.lhs < out.rhs;
  return out;
}

StabilityClass stability_class(double slope0) {
  if (!(slope0 < 0.0)) {
    throw std::invalid_argument("stability_class: slope0 must be negative");
  }
  if (std::abs(slope0 + kHalfPi) <= 1e-12) return StabilityClass::Boundary;
  return slope0 > -kHalfPi ? StabilityClass::Stable : StabilityClass::Unstable;
}

}  // namespace dfosc
