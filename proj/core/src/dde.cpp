#include "dfosc/dde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfosc {

SolutionTrace::SolutionTrace(int n, std::vector<double> samples, std::vector<ZeroCrossing> zeros,
                             std::vector<SlowOscViolation> violations)
    : n_(n), samples_(std::move(samples)), zeros_(std::move(zeros)),
      violations_(std::move(violations)) {
  if (samples_.size() < static_cast<size_t>(n_) + 1) {
    throw std::invalid_argument("trace: must cover at least [-1, 0]");
  }
}

double SolutionTrace::value_at(double t) const {
  const double pos = (t + 1.0) * n_;
  const int last = static_cast<int>(samples_.size()) - 1;
  if (pos <= 0.0) return samples_.front();
  if (pos >= last) return samples_.back();
  int k = static_cast<int>(pos);
  if (k == last) --k;
  const double theta = pos - k;
  return samples_[static_cast<size_t>(k)] * (1.0 - theta) +
         samples_[static_cast<size_t>(k) + 1] * theta;
}

double SolutionTrace::value_at_left(double t) const {
  const double pos = (t + 1.0) * n_;
  const int last = static_cast<int>(samples_.size()) - 1;
  if (pos <= 1.0) return value_at(t);
  if (pos >= last) return samples_.back();
  const int k = static_cast<int>(pos);
  const double theta = pos - k;
  if (theta == 0.0) return samples_[static_cast<size_t>(k)];
  const double slope_left =
      samples_[static_cast<size_t>(k)] - samples_[static_cast<size_t>(k) - 1];
  return samples_[static_cast<size_t>(k)] + theta * slope_left;
}

double SolutionTrace::max_abs_over(double t0, double t1) const {
  const int last = static_cast<int>(samples_.size()) - 1;
  int k0 = std::max(0, static_cast<int>(std::floor((t0 + 1.0) * n_)));
  int k1 = std::min(last, static_cast<int>(std::ceil((t1 + 1.0) * n_)));
  double m = 0.0;
  for (int k = k0; k <= k1; ++k) m = std::max(m, std::abs(samples_[static_cast<size_t>(k)]));
  return m;
}

ZeroScan find_zeros(int n, const std::vector<double>& samples) {
  ZeroScan out;
  const double h = 1.0 / n;
  const int last = static_cast<int>(samples.size()) - 1;
  auto time_at = [&](int k) { return static_cast<double>(k) / n - 1.0; };

  int k = n;  // t = 0
  while (k < last) {
    const double a = samples[static_cast<size_t>(k)];
    const double b = samples[static_cast<size_t>(k) + 1];
    if (a == 0.0) {
      // Run of grid-exact zeros: a crossing iff the nonzero neighbors differ
      // in sign.  The zero time is the midpoint of the run.
      int r = k;
      while (r < last && samples[static_cast<size_t>(r) + 1] == 0.0) ++r;
      int l = k;
      while (l > 0 && samples[static_cast<size_t>(l)] == 0.0) --l;
      const double before = samples[static_cast<size_t>(l)];
      const double after = r < last ? samples[static_cast<size_t>(r) + 1] : 0.0;
      if (before != 0.0 && after != 0.0 && std::signbit(before) != std::signbit(after)) {
        const double z = 0.5 * (time_at(k) + time_at(r));
        if (z > 0.0) out.zeros.push_back({z, after > 0.0 ? +1 : -1});
      }
      k = r + 1;
      continue;
    }
    if (b != 0.0 && std::signbit(a) != std::signbit(b)) {
      const double z = time_at(k) + h * (a / (a - b));
      if (z > 0.0) out.zeros.push_back({z, b > 0.0 ? +1 : -1});
    }
    ++k;
  }

  for (size_t j = 0; j + 1 < out.zeros.size(); ++j) {
    const double gap = out.zeros[j + 1].t - out.zeros[j].t;
    if (gap <= 1.0 - h) {
      out.violations.push_back({static_cast<int>(j), gap});
    }
  }
  return out;
}

SolutionTrace integrate(const FeedbackFn& f, const Segment& phi, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("integrate: T must be positive");
  const int n = phi.n();
  const double h = 1.0 / n;
  const int steps = static_cast<int>(std::ceil(T * n - 1e-9));
  const size_t total = static_cast<size_t>(n) + static_cast<size_t>(steps) + 1;

  std::vector<double> x(total);
  std::vector<double> fx(total);  // f(x_k), each node evaluated once
  for (int k = 0; k <= n; ++k) {
    x[static_cast<size_t>(k)] = phi[k];
    fx[static_cast<size_t>(k)] = f(phi[k]);
  }
  // x_{k+1} = x_k + (h/2) (f(x_{k-n}) + f(x_{k+1-n})); the delayed nodes are
  // always already known because the delay is exactly n steps.
  for (size_t k = static_cast<size_t>(n); k + 1 < total; ++k) {
    x[k + 1] = x[k] + 0.5 * h * (fx[k - n] + fx[k + 1 - n]);
    fx[k + 1] = f(x[k + 1]);
  }

  ZeroScan scan = find_zeros(n, x);
  return SolutionTrace(n, std::move(x), std::move(scan.zeros), std::move(scan.violations));
}

std::optional<double> first_crossing(const SolutionTrace& trace, double level, int direction,
                                     double t_min) {
  const auto& x = trace.samples();
  const int n = trace.n();
  const double h = 1.0 / n;
  const int last = static_cast<int>(x.size()) - 1;
  int k0 = std::max(0, static_cast<int>(std::floor((t_min + 1.0) * n)));
  for (int k = k0; k < last; ++k) {
    const double a = x[static_cast<size_t>(k)] - level;
    const double b = x[static_cast<size_t>(k) + 1] - level;
    if (a == 0.0 && b == 0.0) continue;
    const bool crosses = (direction > 0) ? (a <= 0.0 && b > 0.0) : (a >= 0.0 && b < 0.0);
    if (!crosses) continue;
    const double z = trace.time_at(k) + (a == b ? 0.0 : h * (a / (a - b)));
    if (z >= t_min) return z;
  }
  return std::nullopt;
}

Segment segment_at(const SolutionTrace& trace, double t, SnapMode mode, double snap_tol) {
  if (t < 0.0 || t > trace.t_end() + 1e-12) {
    throw std::invalid_argument("segment_at: need 0 <= t <= T");
  }
  const int n = trace.n();
  const auto& x = trace.samples();
  const int last = static_cast<int>(x.size()) - 1;
  // Work in grid positions so grid-aligned requests copy samples exactly.
  const double base = (t + 1.0) * n - n;
  std::vector<double> vals(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    const double pos = base + j;
    if (pos <= 0.0) {
      vals[static_cast<size_t>(j)] = x.front();
      continue;
    }
    if (pos >= last) {
      vals[static_cast<size_t>(j)] = x.back();
      continue;
    }
    int k = static_cast<int>(pos);
    const double theta = pos - k;
    vals[static_cast<size_t>(j)] =
        theta == 0.0 ? x[static_cast<size_t>(k)]
                     : x[static_cast<size_t>(k)] * (1.0 - theta) +
                           x[static_cast<size_t>(k) + 1] * theta;
  }
  if (mode == SnapMode::SnapLeftEndpoint && std::abs(vals.front()) < snap_tol) {
    vals.front() = 0.0;
  }
  return Segment(n, std::move(vals));
}

}  // namespace dfosc
