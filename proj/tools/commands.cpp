#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>

#include "dfosc/io.hpp"
#include "dfosc/kaplan_yorke.hpp"
#include "dfosc/return_map.hpp"
#include "dfosc/scenarios.hpp"
#include "run_config.hpp"

namespace dfosc::cli {

namespace {

FeedbackFn make_feedback(const RunConfig& cfg) {
  if (!cfg.feedback_file.empty()) return io::read_feedback_file(cfg.feedback_file);
  if (!cfg.gammas.empty()) return build_multiscale(cfg.gammas, cfg.slope0);
  const PlateauParams p = cfg.plateau_params();
  if (!cfg.slope0) throw std::invalid_argument("missing --slope0 for the plateau feedback");
  return build_plateau_feedback(p, *cfg.slope0);
}

Segment make_seed(const RunConfig& cfg) {
  if (!cfg.seed_file.empty()) return io::read_segment_file(cfg.seed_file);
  if (cfg.seed_ramp) return Segment::ramp(cfg.n, *cfg.seed_ramp);
  if (cfg.seed_const) return Segment::constant(cfg.n, *cfg.seed_const);
  throw std::invalid_argument("missing seed: use --seed-ramp, --seed-const, or --seed-file");
}

std::string prep_outdir(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  io::write_kv_file(cfg.out_dir + "/config.txt", cfg.echo());
  return cfg.out_dir;
}

IterateOptions iterate_options(const RunConfig& cfg) {
  IterateOptions opts;
  opts.tol = cfg.tol;
  opts.max_iter = cfg.max_iter;
  opts.horizon = cfg.horizon;
  return opts;
}

PlanarOptions planar_options(const RunConfig& cfg) {
  PlanarOptions opts;
  opts.step = cfg.step;
  opts.t_max = cfg.t_max;
  return opts;
}

int cmd_validate(const RunConfig& cfg) {
  const ValidationReport rep = validate_plateau_params(cfg.plateau_params());
  std::fputs(rep.to_text().c_str(), stdout);
  if (!cfg.out_dir.empty() && cfg.out_dir != "dfosc_out") {
    prep_outdir(cfg);
    io::write_text_file(cfg.out_dir + "/validate.txt", rep.to_text());
  }
  return rep.valid ? 0 : 1;
}

int cmd_simulate(const RunConfig& cfg) {
  const FeedbackFn f = make_feedback(cfg);
  const Segment seed = make_seed(cfg);
  const SolutionTrace trace = integrate(f, seed, cfg.duration);
  const std::string dir = prep_outdir(cfg);
  io::write_trace_csv(dir + "/trace.csv", trace);
  io::write_zeros_csv(dir + "/zeros.csv", trace);
  io::write_phase_csv(dir + "/phase.csv", trace);
  io::Series series{"x", {}};
  for (size_t k = 0; k < trace.samples().size(); k += 4) {
    series.points.emplace_back(trace.time_at(static_cast<int>(k)), trace.samples()[k]);
  }
  io::emit_svg_polyline(dir + "/trace.svg", {series}, "t", "x(t)");
  io::write_feedback_file(dir + "/feedback.txt", f);
  std::printf("simulate: wrote %s with %d zeros\n", dir.c_str(), trace.zero_count());
  return 0;
}

int cmd_sop(const RunConfig& cfg) {
  const FeedbackFn f = make_feedback(cfg);
  const Segment seed = make_seed(cfg);
  const IterateOutcome out = iterate_to_fixed_point(f, seed, iterate_options(cfg));
  const std::string dir = prep_outdir(cfg);
  if (out.status == IterateOutcome::Status::NoConvergence) {
    std::string hist = "status: no-convergence\n";
    for (double r : out.residual_history) hist += "residual: " + io::format_double(r) + "\n";
    io::write_text_file(dir + "/sop.txt", hist);
    std::fputs("sop: iteration did not converge\n", stderr);
    return 3;
  }
  if (out.status == IterateOutcome::Status::ConvergedToZero) {
    io::write_text_file(dir + "/sop.txt", "status: converged-to-zero\n");
    std::puts("sop: converged to the trivial solution");
    return 0;
  }
  const SOPResult& sop = *out.sop;
  io::write_text_file(dir + "/sop.txt", io::sop_record_text(sop));
  io::write_segment_file(dir + "/fixed_segment.txt", sop.fixed_segment);
  const SolutionTrace period_trace = integrate(f, sop.fixed_segment, sop.period);
  io::write_trace_csv(dir + "/sop_trace.csv", period_trace);
  io::write_phase_csv(dir + "/sop_phase.csv", period_trace);
  std::printf("sop: period %s amplitude %s after %d iterations\n",
              io::format_double(sop.period).c_str(), io::format_double(sop.amplitude).c_str(),
              sop.iterations);
  return 0;
}

int cmd_ky(const RunConfig& cfg) {
  const FeedbackFn f = make_feedback(cfg);
  double lo = cfg.bracket_lo.value_or(0.0), hi = cfg.bracket_hi.value_or(0.0);
  if (!(lo > 0.0 && hi > lo)) {
    if (cfg.a && cfg.c) {
      lo = 2.0 * *cfg.a - *cfg.c;
      hi = 3.0 * *cfg.a;
    } else {
      throw std::invalid_argument("ky: need --bracket-lo/--bracket-hi (or plateau parameters)");
    }
  }
  const KYSolution ky = find_ky_amplitude(f, lo, hi, cfg.tau_tol, planar_options(cfg));
  const std::string dir = prep_outdir(cfg);
  io::write_kv_file(dir + "/ky.txt",
                    {{"u0", io::format_double(ky.u0)},
                     {"tau", io::format_double(ky.tau)},
                     {"dde_residual", io::format_double(ky.dde_residual)},
                     {"symmetry_residual", io::format_double(ky.symmetry_residual)}});
  const SolutionTrace trace = ky_period4_trace(f, ky.u0, cfg.n, 10.0 * cfg.tau_tol,
                                               planar_options(cfg));
  io::write_trace_csv(dir + "/ky_trace.csv", trace);
  io::write_phase_csv(dir + "/ky_phase.csv", trace);
  PlanarOptions po = planar_options(cfg);
  const PlanarTrace orbit = integrate_planar(f, ky.u0, 4.0 * ky.tau, po);
  io::write_planar_csv(dir + "/ky_planar.csv", orbit, f);
  std::printf("ky: u0 %s with tau %s\n", io::format_double(ky.u0).c_str(),
              io::format_double(ky.tau).c_str());
  return 0;
}

int cmd_tau_curve(const RunConfig& cfg) {
  const FeedbackFn f = make_feedback(cfg);
  const PlanarOptions po = planar_options(cfg);
  const double u_min = 1e-3 * f.breakpoints()[1].x;
  const double u_max = 10.0 * f.x_max();
  const int count = std::max(
      2, static_cast<int>(std::ceil(std::log10(u_max / u_min) * cfg.points_per_decade)) + 1);
  std::vector<std::pair<double, double>> curve;
  curve.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double u = u_min * std::pow(u_max / u_min, static_cast<double>(i) / (count - 1));
    curve.emplace_back(u, tau(f, u, po).tau);
  }
  const std::string dir = prep_outdir(cfg);
  io::write_tau_curve_csv(dir + "/tau_curve.csv", curve);
  std::vector<std::pair<std::string, std::string>> kv;
  const auto brackets = scan_tau_brackets(f, cfg.points_per_decade, po);
  for (size_t i = 0; i < brackets.size(); ++i) {
    kv.emplace_back("bracket" + std::to_string(i + 1),
                    io::format_double(brackets[i].first) + " " +
                        io::format_double(brackets[i].second));
  }
  io::write_kv_file(dir + "/tau_roots.txt", kv);
  io::Series series{"tau", curve};
  io::emit_svg_polyline(dir + "/tau_curve.svg", {series}, "u0", "tau(u0)");
  std::printf("tau-curve: %zu samples, %zu sign-change brackets\n", curve.size(),
              brackets.size());
  return 0;
}

int scenario_exit(const ScenarioReport& rep, const std::string& dir) {
  io::write_text_file(dir + "/report.txt", rep.to_text());
  std::fputs(rep.to_text().c_str(), stdout);
  return rep.pass() ? 0 : 1;
}

int cmd_multiscale(const RunConfig& cfg) {
  MultiscaleConfig mc;
  if (!cfg.gammas.empty()) mc.gammas = cfg.gammas;
  mc.slope0 = cfg.slope0;
  mc.n = cfg.n;
  mc.iterate = iterate_options(cfg);
  const std::string dir = prep_outdir(cfg);
  return scenario_exit(scenario_multiscale(mc, dir), dir);
}

int cmd_scenario(const RunConfig& cfg) {
  const std::string dir = prep_outdir(cfg);
  const std::string& name = cfg.scenario_name;
  if (name == "timeline") {
    TimelineConfig tc;
    if (cfg.a && cfg.c && cfg.delta && cfg.gamma) tc.params = cfg.plateau_params();
    if (cfg.slope0) tc.slope0 = *cfg.slope0;
    return scenario_exit(scenario_timeline(tc, dir), dir);
  }
  if (name == "two_sops") {
    TwoSopsConfig tc;
    if (cfg.a && cfg.c && cfg.delta && cfg.gamma) {
      tc.use_plateau = true;
      tc.params = cfg.plateau_params();
      if (cfg.slope0) tc.slope0 = *cfg.slope0;
    }
    tc.n = cfg.n;
    tc.iterate = iterate_options(cfg);
    return scenario_exit(scenario_two_sops(tc, dir), dir);
  }
  if (name == "ky_coexistence") {
    KyCoexistenceConfig kc;
    if (cfg.a && cfg.c && cfg.delta && cfg.gamma) kc.params = cfg.plateau_params();
    if (cfg.slope0) kc.slope0 = *cfg.slope0;
    kc.n = cfg.n;
    kc.tau_tol = cfg.tau_tol;
    kc.iterate = iterate_options(cfg);
    kc.planar = planar_options(cfg);
    return scenario_exit(scenario_ky_coexistence(kc, dir), dir);
  }
  if (name == "multiscale") return cmd_multiscale(cfg);
  throw std::invalid_argument("unknown scenario name: '" + name +
                              "' (use timeline, two_sops, ky_coexistence, multiscale)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  RunConfig cfg;
  const int parse_code = parse_config(args, cfg);
  if (parse_code >= 0) return parse_code == 0 ? 0 : 2;
  try {
    switch (cfg.command) {
      case Command::Validate: return cmd_validate(cfg);
      case Command::Simulate: return cmd_simulate(cfg);
      case Command::Sop: return cmd_sop(cfg);
      case Command::Ky: return cmd_ky(cfg);
      case Command::TauCurve: return cmd_tau_curve(cfg);
      case Command::Multiscale: return cmd_multiscale(cfg);
      case Command::Scenario: return cmd_scenario(cfg);
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  }
  return 2;
}

}  // namespace dfosc::cli
