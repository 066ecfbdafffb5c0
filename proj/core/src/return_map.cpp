#include "dfosc/return_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfosc {

Segment normalize_to_cone(Segment s, double bound, double budget) {
  auto& vals = s.mutable_values();
  if (std::abs(vals.front()) > budget) {
    throw std::runtime_error("cone re-entry: left endpoint offset exceeds the scheme budget");
  }
  vals.front() = 0.0;
  double worst = 0.0;
  double running = 0.0;
  for (size_t k = 1; k < vals.size(); ++k) {
    if (vals[k] < running) {
      worst = std::max(worst, running - vals[k]);
      vals[k] = running;
    } else {
      running = vals[k];
    }
  }
  if (worst > budget) {
    throw std::runtime_error("cone re-entry: monotonicity violated beyond the scheme budget");
  }
  if (vals.back() > bound) {
    if (vals.back() - bound > budget) {
      throw std::runtime_error("cone re-entry: norm exceeds the feedback bound beyond budget");
    }
    for (auto& v : vals) v = std::min(v, bound);
  }
  return s;
}

ApplyResult apply_P_detail(const FeedbackFn& f, const Segment& phi, double horizon) {
  if (!(horizon > 2.0)) throw std::invalid_argument("apply_P: horizon must exceed 2");
  const auto cone = phi.in_cone(f.bound());
  if (!cone.ok) {
    throw std::invalid_argument("apply_P: segment not in the cone: " + cone.violation);
  }
  if (phi.is_zero()) return {phi, ApplyStatus::ZeroInput, 0};

  const SolutionTrace trace = integrate(f, phi, horizon);
  const auto& zeros = trace.zeros();
  const double snap_tol = 10.0 * phi.h() * f.bound();
  if (zeros.size() >= 2 && zeros[1].t + 1.0 <= trace.t_end() + 1e-12) {
    Segment seg = segment_at(trace, std::min(zeros[1].t + 1.0, trace.t_end()),
                             SnapMode::SnapLeftEndpoint, snap_tol);
    seg = normalize_to_cone(std::move(seg), f.bound(), snap_tol);
    return {std::move(seg), ApplyStatus::Returned, static_cast<int>(zeros.size())};
  }
  const bool decayed = trace.max_abs_over(trace.t_end() - 5.0, trace.t_end()) < 1e-9;
  return {Segment(phi.n()),
          decayed ? ApplyStatus::ZeroDecayed : ApplyStatus::ZeroHorizonTooShort,
          static_cast<int>(zeros.size())};
}

Segment apply_P(const FeedbackFn& f, const Segment& phi, double horizon) {
  return apply_P_detail(f, phi, horizon).segment;
}

IterateOutcome iterate_to_fixed_point(const FeedbackFn& f, const Segment& phi0,
                                      const IterateOptions& opts) {
  const auto cone = phi0.in_cone(f.bound());
  if (!cone.ok) {
    throw std::invalid_argument("iterate: seed not in the cone: " + cone.violation);
  }
  if (phi0.is_zero()) throw std::invalid_argument("iterate: seed must be nonzero");
  const double zero_thr =
      opts.zero_threshold > 0.0 ? opts.zero_threshold : std::max(10.0 * opts.tol, 1e-9);

  IterateOutcome out;
  Segment phi = phi0;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    ApplyResult next = apply_P_detail(f, phi, opts.horizon);
    if (next.segment.is_zero() || next.segment.sup_norm() < zero_thr) {
      out.status = IterateOutcome::Status::ConvergedToZero;
      return out;
    }
    const double res = next.segment.sup_distance(phi);
    out.residual_history.push_back(res);
    phi = std::move(next.segment);
    if (res < opts.tol) {
      const SolutionTrace trace = integrate(f, phi, opts.horizon);
      if (trace.zeros().size() < 2) {
        out.status = IterateOutcome::Status::ConvergedToZero;
        return out;
      }
      SOPResult sop{phi, trace.zeros()[1].t + 1.0, 0.0, iter, res};
      sop.amplitude = trace.max_abs_over(0.0, sop.period);
      out.status = IterateOutcome::Status::Converged;
      out.sop = std::move(sop);
      return out;
    }
  }
  out.status = IterateOutcome::Status::NoConvergence;
  return out;
}

std::vector<SOPResult> find_multiple_sops(const FeedbackFn& f, const std::vector<Segment>& seeds,
                                          const IterateOptions& opts) {
  std::vector<SOPResult> found;
  for (const Segment& seed : seeds) {
    IterateOutcome outcome = iterate_to_fixed_point(f, seed, opts);
    if (outcome.status != IterateOutcome::Status::Converged) continue;
    const SOPResult& cand = *outcome.sop;
    bool duplicate = false;
    for (const SOPResult& have : found) {
      if (std::abs(have.period - cand.period) < 1e-3 * have.period &&
          std::abs(have.amplitude - cand.amplitude) < 1e-3 * have.amplitude) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) found.push_back(cand);
  }
  return found;
}

bool wedge_params_valid(const WedgeParams& wp, double mu) {
  if (!(wp.sigma > 0.0 && wp.gamma > 0.0 && wp.beta > 0.0 && mu > 0.0)) return false;
  if (!(wp.gamma + wp.beta / wp.sigma < 1.0)) return false;
  const double cap = (wp.sigma - (wp.sigma + mu) * wp.gamma) / (2.0 + mu / wp.sigma);
  return wp.beta <= cap;
}

bool in_wedge(const Segment& phi, const WedgeParams& wp, bool closure) {
  const int n = phi.n();
  const int j_lo = static_cast<int>(std::ceil(wp.gamma * n - 1e-12));
  const int j_hi = static_cast<int>(std::floor((1.0 - wp.beta / wp.sigma) * n + 1e-12));
  for (int j = j_lo; j <= j_hi; ++j) {
    const double t = static_cast<double>(j) / n - 1.0;
    const double line = wp.sigma * t + wp.sigma * (1.0 - wp.gamma);
    if (closure ? (phi[j] < line) : !(phi[j] > line)) return false;
  }
  return true;
}

Segment wedge_boundary_segment(int n, const WedgeParams& wp) {
  const double top = wp.sigma * (1.0 - wp.gamma) - wp.beta;
  std::vector<double> vals(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    const double t = static_cast<double>(j) / n - 1.0;
    const double line = wp.sigma * t + wp.sigma * (1.0 - wp.gamma);
    vals[static_cast<size_t>(j)] = std::clamp(line, 0.0, top);
  }
  vals.front() = 0.0;
  return Segment(n, std::move(vals));
}

Segment random_cone_segment(int n, double norm, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> vals(static_cast<size_t>(n) + 1, 0.0);
  double acc = 0.0;
  for (int j = 1; j <= n; ++j) {
    acc += unit(rng);
    vals[static_cast<size_t>(j)] = acc;
  }
  const double scale = acc > 0.0 ? norm / acc : 0.0;
  for (auto& v : vals) v *= scale;
  return Segment(n, std::move(vals));
}

WedgeInvarianceReport verify_wedge_invariance(const FeedbackFn& f, const FeedbackBounds& fb,
                                              const WedgeParams& wp, int n, int n_samples,
                                              double horizon, std::uint64_t seed) {
  if (!check_feedback_bounds(f, fb)) {
    throw std::invalid_argument("wedge invariance: feedback fails the bounds hypothesis");
  }
  if (!(fb.beta < fb.sigma / (2.0 + fb.mu / fb.sigma))) {
    throw std::invalid_argument("wedge invariance: beta is not below sigma/(2 + mu/sigma)");
  }
  if (!wedge_params_valid(wp, fb.mu)) {
    throw std::invalid_argument("wedge invariance: wedge parameters are inconsistent");
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Segment boundary = wedge_boundary_segment(n, wp);
  const double bound = f.bound();
  const double headroom = bound - boundary.sup_norm();

  WedgeInvarianceReport rep;
  rep.samples = n_samples;
  std::vector<Segment> images;
  images.reserve(static_cast<size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    const Segment bump = random_cone_segment(n, unit(rng) * headroom, rng);
    std::vector<double> vals(static_cast<size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
      vals[static_cast<size_t>(j)] = std::min(boundary[j] + bump[j], bound);
    }
    const Segment phi(n, std::move(vals));
    ApplyResult res = apply_P_detail(f, phi, horizon);
    if (res.status != ApplyStatus::Returned || !in_wedge(res.segment, wp, /*closure=*/false)) {
      ++rep.failures;
      rep.failed_indices.push_back(i);
    }
    images.push_back(std::move(res.segment));
  }
  for (size_t i = 0; i < images.size(); ++i) {
    for (size_t j = i + 1; j < images.size(); ++j) {
      rep.max_image_spread = std::max(rep.max_image_spread, images[i].sup_distance(images[j]));
    }
  }
  rep.pass = rep.failures == 0;
  return rep;
}

ContractionReport verify_small_norm_contraction(const FeedbackFn& f, double epsilon, int n,
                                                int n_samples, double horizon,
                                                std::uint64_t seed) {
  if (!(std::abs(f.slope0()) < 1.0)) {
    throw std::invalid_argument("contraction: requires |f'(0)| < 1");
  }
  if (!(epsilon > 0.0) || epsilon > f.breakpoints()[1].x) {
    throw std::invalid_argument("contraction: epsilon must lie within the first linear piece");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ContractionReport rep;
  rep.samples = n_samples;
  for (int i = 0; i < n_samples; ++i) {
    const double norm = epsilon * std::max(unit(rng), 1e-3);
    const Segment phi = random_cone_segment(n, norm, rng);
    ApplyResult res = apply_P_detail(f, phi, horizon);
    if (res.status != ApplyStatus::Returned || res.segment.is_zero()) {
      ++rep.skipped;
      continue;
    }
    if (!(res.segment.sup_norm() < phi.sup_norm())) ++rep.failures;
  }
  rep.pass = rep.failures == 0;
  return rep;
}

namespace {

enum class OrbitClass { Decay, Sop, Ambiguous };

const char* orbit_class_name(OrbitClass c) {
  switch (c) {
    case OrbitClass::Decay: return "decay";
    case OrbitClass::Sop: return "stable-orbit";
    default: return "ambiguous";
  }
}

struct OrbitMeasure {
  OrbitClass cls = OrbitClass::Ambiguous;
  double quasi_period = 0.0;
  double amplitude = 0.0;
};

OrbitMeasure classify_orbit(const FeedbackFn& f, const Segment& phi, const SOPResult& stable,
                            const BoundaryOptions& opts) {
  OrbitMeasure m;
  const SolutionTrace trace = integrate(f, phi, opts.t_classify);
  const double tail = trace.max_abs_over(trace.t_end() - 5.0, trace.t_end());
  if (tail < opts.decay_threshold) {
    m.cls = OrbitClass::Decay;
    return m;
  }
  const auto& zeros = trace.zeros();
  if (zeros.size() < 3) return m;
  const size_t last = zeros.size() - 1;
  m.quasi_period = zeros[last].t - zeros[last - 2].t;
  m.amplitude = trace.max_abs_over(zeros[last - 2].t, zeros[last].t);
  if (std::abs(m.quasi_period - stable.period) < opts.match_rel * stable.period &&
      std::abs(m.amplitude - stable.amplitude) < opts.match_rel * stable.amplitude) {
    m.cls = OrbitClass::Sop;
  }
  return m;
}

Segment blend(const Segment& a, const Segment& b, double s) {
  const int n = a.n();
  std::vector<double> vals(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    vals[static_cast<size_t>(j)] = (1.0 - s) * a[j] + s * b[j];
  }
  return Segment(n, std::move(vals));
}

}  // namespace

BoundaryWitness locate_unstable_sop(const FeedbackFn& f, const Segment& phi_small,
                                    const Segment& phi_big, const BoundaryOptions& opts) {
  if (!(opts.decay_threshold > 0.0)) {
    throw std::invalid_argument("boundary: decay_threshold must be positive");
  }
  if (phi_small.n() != phi_big.n()) {
    throw std::invalid_argument("boundary: endpoint segments live on different grids");
  }

  IterateOutcome big = iterate_to_fixed_point(f, phi_big, opts.iterate);
  if (big.status != IterateOutcome::Status::Converged) {
    throw std::runtime_error("boundary: the big endpoint did not reach a stable orbit");
  }
  const SOPResult stable = *big.sop;

  const OrbitMeasure m0 = classify_orbit(f, phi_small, stable, opts);
  const OrbitMeasure m1 = classify_orbit(f, phi_big, stable, opts);
  if (m0.cls != OrbitClass::Decay || m1.cls != OrbitClass::Sop) {
    throw std::runtime_error(std::string("boundary: endpoints classify as ") +
                             orbit_class_name(m0.cls) + " / " + orbit_class_name(m1.cls) +
                             "; need decay / stable-orbit");
  }

  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < opts.n_bisect; ++i) {
    const double mid = 0.5 * (lo + hi);
    const OrbitMeasure mm = classify_orbit(f, blend(phi_small, phi_big, mid), stable, opts);
    if (mm.cls == OrbitClass::Decay) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  BoundaryWitness w{0.5 * (lo + hi), hi - lo, blend(phi_small, phi_big, 0.5 * (lo + hi)),
                    0.0, 0.0, stable};
  const SolutionTrace trace = integrate(f, w.segment, opts.t_classify);
  const auto& zeros = trace.zeros();
  if (zeros.size() >= 3) {
    const size_t last = zeros.size() - 1;
    w.quasi_period = zeros[last].t - zeros[last - 2].t;
    w.amplitude = trace.max_abs_over(zeros[last - 2].t, zeros[last].t);
  }
  return w;
}

}  // namespace dfosc
