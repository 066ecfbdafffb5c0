#include "dfosc/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "dfosc/io.hpp"
#include "dfosc/phase_plane.hpp"

namespace dfosc {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void check(ScenarioReport& rep, const std::string& desc, const std::string& expected,
           const std::string& observed, bool pass) {
  rep.assertions.push_back({desc, expected, observed, pass});
}

std::string join_path(const std::string& dir, const std::string& name) {
  return dir.empty() ? name : dir + "/" + name;
}

void ensure_dir(const std::string& dir) {
  if (!dir.empty()) std::filesystem::create_directories(dir);
}

io::Series trace_series(const std::string& label, const SolutionTrace& trace, int stride) {
  io::Series s;
  s.label = label;
  for (size_t k = 0; k < trace.samples().size(); k += static_cast<size_t>(stride)) {
    s.points.emplace_back(trace.time_at(static_cast<int>(k)), trace.samples()[k]);
  }
  return s;
}

io::Series curve_series(const std::string& label,
                        const std::vector<std::pair<double, double>>& pts) {
  return {label, pts};
}

}  // namespace

bool ScenarioReport::pass() const {
  for (const auto& a : assertions) {
    if (!a.pass) return false;
  }
  return true;
}

std::string ScenarioReport::to_text() const {
  std::string out = "scenario = " + name + "\n";
  for (const auto& [k, v] : inputs) out += k + " = " + v + "\n";
  for (size_t i = 0; i < assertions.size(); ++i) {
    const auto& a = assertions[i];
    out += a.pass ? "PASS" : "FAIL";
    out += "  [" + std::to_string(i + 1) + "] " + a.description + "  expected " + a.expected +
           "  observed " + a.observed + "\n";
  }
  for (const auto& f : artifacts) out += "artifact = " + f + "\n";
  out += std::string("overall = ") + (pass() ? "PASS" : "FAIL") + "\n";
  return out;
}

FeedbackFn stable_origin_instance() {
  return FeedbackFn({{0.0, 0.0}, {0.05, -0.05}, {0.1, -1.0}}, -1.0);
}

ScenarioReport scenario_timeline(const TimelineConfig& cfg, const std::string& outdir) {
  const PlateauParams& p = cfg.params;
  ScenarioReport rep;
  rep.name = "timeline";
  rep.inputs = {{"a", num(p.a)},         {"c", num(p.c)}, {"delta", num(p.delta)},
                {"gamma", num(p.gamma)}, {"slope0", num(cfg.slope0)},
                {"n", std::to_string(cfg.n)}};

  const FeedbackFn f = build_plateau_feedback(p, cfg.slope0);
  // Crude upper estimate of the third crossing time fixes the run length.
  const double t3_hi =
      2.0 + p.c / p.delta + 4.0 * p.a / p.gamma + (p.gamma - 2.0 * p.a) / p.delta;
  const double T = cfg.t_end > 0.0 ? cfg.t_end : 2.0 * t3_hi + 2.0;
  rep.inputs.emplace_back("t_end", num(T));

  const Segment phi = Segment::constant(cfg.n, -2.0 * p.a);
  const SolutionTrace trace = integrate(f, phi, T);
  const double h = trace.h();

  double start_err = 0.0;
  for (int k = 0; k <= cfg.n; ++k) {
    const double t = static_cast<double>(k) / cfg.n;
    start_err = std::max(start_err, std::abs(trace.samples()[static_cast<size_t>(cfg.n + k)] -
                                             (-2.0 * p.a + p.delta * t)));
  }
  check(rep, "start is the linear ramp -2a + delta*t on [0, 1]", "error < 1e-10",
        num(start_err), start_err < 1e-10);

  const auto tau1 = first_crossing(trace, -p.a, +1, 0.0);
  check(rep, "upward crossing of -a exists", "found", tau1 ? num(*tau1) : "none",
        tau1.has_value());
  const auto tau2 = first_crossing(trace, p.a, +1, 0.0);
  check(rep, "upward crossing of +a exists", "found", tau2 ? num(*tau2) : "none",
        tau2.has_value());
  if (!tau1 || !tau2) return rep;

  const double transit = *tau2 - *tau1;
  check(rep, "transit time between -a and a equals 2a/gamma", num(2.0 * p.a / p.gamma),
        num(transit), std::abs(transit - 2.0 * p.a / p.gamma) < 2.0 * h);

  // One-sided interpolation: the solution runs with constant slope into this
  // time while its curvature jumps exactly there.
  const double peak_entry = trace.value_at_left(*tau1 + 1.0);
  check(rep, "value one delay after the -a crossing equals gamma - a", num(p.gamma - p.a),
        num(peak_entry), std::abs(peak_entry - (p.gamma - p.a)) < 1e-6);

  const auto tau3 = first_crossing(trace, 2.0 * p.a, -1, *tau2 + p.a / p.gamma + 1.0);
  check(rep, "downward crossing of 2a exists", "found", tau3 ? num(*tau3) : "none",
        tau3.has_value());
  if (!tau3) return rep;

  const double bound =
      2.0 + p.c / p.delta + 3.0 * p.a / p.gamma + (p.gamma - 4.0 * p.a) / p.delta;
  check(rep, "third crossing time exceeds its lower bound", "> " + num(bound), num(*tau3),
        *tau3 > bound);

  double antisym = 0.0;
  const int K = static_cast<int>(std::floor(std::min(*tau3, T - *tau3) / h));
  for (int k = 0; k <= K; ++k) {
    const double t = static_cast<double>(k) / cfg.n;
    antisym = std::max(antisym, std::abs(trace.value_at(*tau3 + t) +
                                         trace.samples()[static_cast<size_t>(cfg.n + k)]));
  }
  check(rep, "half-period anti-symmetry x(t3 + t) = -x(t)", "error < 1e-5", num(antisym),
        antisym < 1e-5);

  check(rep, "period 2*t3 exceeds 4", "> 4", num(2.0 * *tau3), 2.0 * *tau3 > 4.0);

  if (!outdir.empty()) {
    ensure_dir(outdir);
    const std::string trace_path = join_path(outdir, "timeline_trace.csv");
    const std::string zeros_path = join_path(outdir, "timeline_zeros.csv");
    const std::string svg_path = join_path(outdir, "timeline.svg");
    io::write_trace_csv(trace_path, trace);
    io::write_zeros_csv(zeros_path, trace);
    io::emit_svg_polyline(svg_path, {trace_series("x", trace, 8)}, "t", "x(t)");
    rep.artifacts = {trace_path, zeros_path, svg_path};
  }
  return rep;
}

ScenarioReport scenario_two_sops(const TwoSopsConfig& cfg, const std::string& outdir) {
  ScenarioReport rep;
  rep.name = "two_sops";
  const FeedbackFn f = cfg.use_plateau ? build_plateau_feedback(cfg.params, cfg.slope0)
                                       : stable_origin_instance();
  rep.inputs = {{"use_plateau", cfg.use_plateau ? "1" : "0"},
                {"slope0", num(f.slope0())},
                {"n", std::to_string(cfg.n)},
                {"seed_small", num(cfg.seed_small)},
                {"seed_big", num(cfg.seed_big)},
                {"decay_threshold", num(cfg.decay_threshold)},
                {"t_classify", num(cfg.t_classify)},
                {"n_bisect", std::to_string(cfg.n_bisect)}};

  if (stability_class(f.slope0()) != StabilityClass::Stable) {
    throw std::invalid_argument("two_sops: the origin must be stable, got slope0 = " +
                                num(f.slope0()));
  }
  check(rep, "origin is stable (slope0 in (-pi/2, 0))", "stable", num(f.slope0()),
        f.slope0() > -kHalfPi && f.slope0() < 0.0);

  const Segment small = Segment::ramp(cfg.n, cfg.seed_small);
  const Segment big = Segment::ramp(cfg.n, cfg.seed_big);

  const IterateOutcome dec = iterate_to_fixed_point(f, small, cfg.iterate);
  check(rep, "small seed decays to the trivial solution", "converged-to-zero",
        dec.status == IterateOutcome::Status::ConvergedToZero ? "converged-to-zero"
                                                              : "did not decay",
        dec.status == IterateOutcome::Status::ConvergedToZero);

  BoundaryOptions bopts;
  bopts.t_classify = cfg.t_classify;
  bopts.n_bisect = cfg.n_bisect;
  bopts.decay_threshold = cfg.decay_threshold;
  bopts.iterate = cfg.iterate;
  const BoundaryWitness w = locate_unstable_sop(f, small, big, bopts);

  check(rep, "large seed reaches a stable periodic orbit", "period > 2", num(w.stable.period),
        w.stable.period > 2.0);
  check(rep, "boundary parameter lies strictly inside (0, 1)", "0 < s* < 1", num(w.s_star),
        w.s_star > 0.0 && w.s_star < 1.0);
  const double width_cap = std::ldexp(1.0, -cfg.n_bisect) * (1.0 + 1e-12);
  check(rep, "bisection bracket is fully resolved", "width <= 2^-" + std::to_string(cfg.n_bisect),
        num(w.bracket_width), w.bracket_width <= width_cap);

  // Amplitudes are grid maxima, so the upper comparison carries the usual
  // resampling budget 10*h*max|f|.
  const SolutionTrace wt = integrate(f, w.segment, cfg.t_classify);
  const double upper = w.stable.amplitude + 10.0 * (1.0 / cfg.n) * f.bound();
  bool between = true;
  double lo_seen = 1e300, hi_seen = 0.0;
  for (double t0 = 0.0; t0 + 5.0 <= cfg.t_classify + 1e-9; t0 += 1.0) {
    const double wamp = wt.max_abs_over(t0, t0 + 5.0);
    lo_seen = std::min(lo_seen, wamp);
    hi_seen = std::max(hi_seen, wamp);
    between = between && wamp > cfg.decay_threshold && wamp < upper;
  }
  check(rep, "witness orbit stays between the attractors",
        "(" + num(cfg.decay_threshold) + ", " + num(upper) + ")",
        "[" + num(lo_seen) + ", " + num(hi_seen) + "]", between);

  if (!outdir.empty()) {
    ensure_dir(outdir);
    const std::string seg_path = join_path(outdir, "witness_segment.txt");
    const std::string trace_path = join_path(outdir, "witness_trace.csv");
    const std::string sop_path = join_path(outdir, "stable_sop.txt");
    io::write_segment_file(seg_path, w.segment);
    io::write_trace_csv(trace_path, wt);
    io::write_text_file(sop_path, io::sop_record_text(w.stable));
    rep.artifacts = {seg_path, trace_path, sop_path};
  }
  return rep;
}

ScenarioReport scenario_ky_coexistence(const KyCoexistenceConfig& cfg,
                                       const std::string& outdir) {
  const PlateauParams& p = cfg.params;
  ScenarioReport rep;
  rep.name = "ky_coexistence";
  rep.inputs = {{"a", num(p.a)},           {"c", num(p.c)},
                {"delta", num(p.delta)},   {"gamma", num(p.gamma)},
                {"slope0", num(cfg.slope0)}, {"n", std::to_string(cfg.n)},
                {"tau_tol", num(cfg.tau_tol)}};

  if (!(cfg.slope0 < -kHalfPi)) {
    throw std::invalid_argument("ky_coexistence: needs an unstable origin (slope0 < -pi/2)");
  }
  const FeedbackFn f = build_plateau_feedback(p, cfg.slope0);

  const TransitCheck transit = check_transit_bound(f, p);
  check(rep, "mean of |f| over [0, a] divided by gamma stays below a - c",
        "< " + num(transit.rhs), num(transit.lhs), transit.pass);

  const double seed_amp = cfg.seed_amp > 0.0 ? cfg.seed_amp : 3.0 * p.a;
  const IterateOutcome it = iterate_to_fixed_point(f, Segment::ramp(cfg.n, seed_amp),
                                                   cfg.iterate);
  check(rep, "return-map iteration converges", "converged",
        it.status == IterateOutcome::Status::Converged ? "converged" : "did not converge",
        it.status == IterateOutcome::Status::Converged);
  if (it.status != IterateOutcome::Status::Converged) return rep;
  const SOPResult& sop = *it.sop;
  check(rep, "long-period orbit has period above 4", "> 4", num(sop.period), sop.period > 4.0);
  check(rep, "long-period orbit peaks above 3a", "> " + num(3.0 * p.a), num(sop.amplitude),
        sop.amplitude > 3.0 * p.a);

  const TauResult tau_3a = tau(f, 3.0 * p.a, cfg.planar);
  check(rep, "quarter-turn time from 3a exceeds one delay", "> 1", num(tau_3a.tau),
        tau_3a.tau > 1.0);

  const KYSolution ky =
      find_ky_amplitude(f, 2.0 * p.a - p.c, 3.0 * p.a, cfg.tau_tol, cfg.planar);
  check(rep, "period-4 amplitude lies in (2a - c, 3a)",
        "(" + num(2.0 * p.a - p.c) + ", " + num(3.0 * p.a) + ")", num(ky.u0),
        ky.u0 > 2.0 * p.a - p.c && ky.u0 < 3.0 * p.a);
  check(rep, "quarter-turn time at the root is one delay", "|tau - 1| < " + num(cfg.tau_tol),
        num(std::abs(ky.tau - 1.0)), std::abs(ky.tau - 1.0) < cfg.tau_tol);
  check(rep, "induced solution satisfies the delay equation", "residual < 1e-4",
        num(ky.dde_residual), ky.dde_residual < 1e-4);
  check(rep, "induced solution has the half-turn symmetry", "residual < 1e-6",
        num(ky.symmetry_residual), ky.symmetry_residual < 1e-6);

  // Closed-form spot check of the planar start from (3a, 0): while the orbit
  // stays in the constant-drive box, v(t) = delta*t and
  // u(t) = 3a - |slope0|*delta*t^2/2.
  const double u_pred = 3.0 * p.a - 0.5 * std::abs(cfg.slope0) * p.delta;
  const double v_pred = p.delta;
  if (v_pred <= p.a - p.c && u_pred >= 2.0 * p.a) {
    PlanarOptions box_opts = cfg.planar;
    box_opts.drift_tol = 1e300;
    const PlanarTrace start = integrate_planar(f, 3.0 * p.a, 1.0, box_opts);
    const auto [u1, v1] = start.state_at(1.0);
    check(rep, "planar start from (3a, 0): u(1) matches the closed form", num(u_pred), num(u1),
          std::abs(u1 - u_pred) < 1e-8);
    check(rep, "planar start from (3a, 0): v(1) matches the closed form", num(v_pred), num(v1),
          std::abs(v1 - v_pred) < 1e-8);
  }

  // Phase-plane traces of both solutions and their intersection.
  const SolutionTrace p_trace = integrate(f, sop.fixed_segment, sop.period);
  const SolutionTrace q_trace = ky_period4_trace(f, ky.u0, cfg.n, 10.0 * cfg.tau_tol,
                                                 cfg.planar);
  const auto p_rows = phase_polyline(p_trace);
  const auto q_rows = phase_polyline(q_trace);
  const bool crossing = polylines_intersect(phase_curve(p_rows, 2), phase_curve(q_rows, 2));
  check(rep, "phase-plane traces of the two solutions intersect", "crossing found",
        crossing ? "crossing found" : "no crossing", crossing);

  const double alpha = ky.u0;
  const double alpha2 = sop.amplitude;
  double alpha1 = 0.0;
  if (!p_trace.zeros().empty()) {
    alpha1 = std::abs(p_trace.value_at(p_trace.zeros()[0].t - 1.0));
  }
  check(rep, "axis crossings are ordered alpha1 < alpha < alpha2",
        num(alpha1) + " < " + num(alpha) + " < " + num(alpha2), "same",
        alpha1 > 0.0 && alpha1 < alpha && alpha < alpha2);

  if (!outdir.empty()) {
    ensure_dir(outdir);
    const std::string pt = join_path(outdir, "p_trace.csv");
    const std::string qt = join_path(outdir, "q_trace.csv");
    const std::string pp = join_path(outdir, "p_phase.csv");
    const std::string qp = join_path(outdir, "q_phase.csv");
    const std::string sg = join_path(outdir, "solutions.svg");
    const std::string sp = join_path(outdir, "phase_plane.svg");
    io::write_trace_csv(pt, p_trace);
    io::write_trace_csv(qt, q_trace);
    io::write_phase_csv(pp, p_trace);
    io::write_phase_csv(qp, q_trace);
    io::emit_svg_polyline(sg, {trace_series("p", p_trace, 4), trace_series("q", q_trace, 4)},
                          "t", "x(t)");
    io::emit_svg_polyline(sp,
                          {curve_series("p", phase_curve(p_rows, 4)),
                           curve_series("q", phase_curve(q_rows, 4))},
                          "x(t)", "x(t-1)");
    rep.artifacts = {pt, qt, pp, qp, sg, sp};
  }
  return rep;
}

ScenarioReport scenario_multiscale(const MultiscaleConfig& cfg, const std::string& outdir) {
  ScenarioReport rep;
  rep.name = "multiscale";
  std::string glist;
  for (size_t i = 0; i < cfg.gammas.size(); ++i) {
    if (i) glist += ",";
    glist += num(cfg.gammas[i]);
  }
  rep.inputs = {{"gammas", glist},
                {"n", std::to_string(cfg.n)},
                {"seed_factor", num(cfg.seed_factor)}};
  if (cfg.slope0) rep.inputs.emplace_back("slope0", num(*cfg.slope0));

  const FeedbackFn f = build_multiscale(cfg.gammas, cfg.slope0);
  std::vector<Segment> seeds;
  seeds.reserve(cfg.gammas.size());
  for (double g : cfg.gammas) {
    seeds.push_back(Segment::ramp(cfg.n, cfg.seed_factor * (g / 4.0)));
  }
  const std::vector<SOPResult> sops = find_multiple_sops(f, seeds, cfg.iterate);

  check(rep, "one orbit per scale after deduplication", std::to_string(cfg.gammas.size()),
        std::to_string(sops.size()), sops.size() == cfg.gammas.size());

  std::vector<SOPResult> sorted = sops;
  std::sort(sorted.begin(), sorted.end(),
            [](const SOPResult& a, const SOPResult& b) { return a.amplitude > b.amplitude; });
  for (size_t k = 0; k < std::min(sorted.size(), cfg.gammas.size()); ++k) {
    const double a_k = cfg.gammas[k] / 4.0;
    const double g_k = cfg.gammas[k];
    check(rep, "scale " + std::to_string(k + 1) + " amplitude lies in (3a, gamma)",
          "(" + num(3.0 * a_k) + ", " + num(g_k) + ")", num(sorted[k].amplitude),
          sorted[k].amplitude > 3.0 * a_k && sorted[k].amplitude < g_k);
    check(rep, "scale " + std::to_string(k + 1) + " period exceeds 4", "> 4",
          num(sorted[k].period), sorted[k].period > 4.0);
  }

  if (!outdir.empty()) {
    ensure_dir(outdir);
    std::vector<io::Series> series;
    for (size_t k = 0; k < sorted.size(); ++k) {
      const SolutionTrace t = integrate(f, sorted[k].fixed_segment, 12.0);
      const std::string path =
          join_path(outdir, "scale" + std::to_string(k + 1) + "_trace.csv");
      io::write_trace_csv(path, t);
      rep.artifacts.push_back(path);
      series.push_back(trace_series("scale " + std::to_string(k + 1), t, 8));
    }
    if (!series.empty()) {
      const std::string svg = join_path(outdir, "multiscale.svg");
      io::emit_svg_polyline(svg, series, "t", "x(t)");
      rep.artifacts.push_back(svg);
    }
  }
  return rep;
}

}  // namespace dfosc
