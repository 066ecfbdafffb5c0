#include "run_config.hpp"

#include <CLI11.hpp>

#include <cstdio>

#include "dfosc/io.hpp"

namespace dfosc::cli {

const char* command_name(Command c) {
  switch (c) {
    case Command::Simulate: return "simulate";
    case Command::Sop: return "sop";
    case Command::Ky: return "ky";
    case Command::TauCurve: return "tau-curve";
    case Command::Multiscale: return "multiscale";
    case Command::Scenario: return "scenario";
    case Command::Validate: return "validate";
  }
  return "?";
}

PlateauParams RunConfig::plateau_params() const {
  if (!(a && c && delta && gamma)) {
    throw std::invalid_argument("missing plateau parameters: need --a --c --delta --gamma");
  }
  return {*a, *c, *delta, *gamma};
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  using io::format_double;
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("command", command_name(command));
  if (a) kv.emplace_back("a", format_double(*a));
  if (c) kv.emplace_back("c", format_double(*c));
  if (delta) kv.emplace_back("delta", format_double(*delta));
  if (gamma) kv.emplace_back("gamma", format_double(*gamma));
  if (slope0) kv.emplace_back("slope0", format_double(*slope0));
  if (!gammas.empty()) {
    std::string g;
    for (size_t i = 0; i < gammas.size(); ++i) {
      if (i) g += ',';
      g += format_double(gammas[i]);
    }
    kv.emplace_back("gammas", g);
  }
  if (!feedback_file.empty()) kv.emplace_back("feedback-file", feedback_file);
  kv.emplace_back("n", std::to_string(n));
  kv.emplace_back("horizon", format_double(horizon));
  kv.emplace_back("tol", format_double(tol));
  kv.emplace_back("max-iter", std::to_string(max_iter));
  kv.emplace_back("t-max", format_double(t_max));
  kv.emplace_back("step", format_double(step));
  kv.emplace_back("duration", format_double(duration));
  kv.emplace_back("tau-tol", format_double(tau_tol));
  if (bracket_lo) kv.emplace_back("bracket-lo", format_double(*bracket_lo));
  if (bracket_hi) kv.emplace_back("bracket-hi", format_double(*bracket_hi));
  kv.emplace_back("points-per-decade", std::to_string(points_per_decade));
  if (seed_ramp) kv.emplace_back("seed-ramp", format_double(*seed_ramp));
  if (seed_const) kv.emplace_back("seed-const", format_double(*seed_const));
  if (!seed_file.empty()) kv.emplace_back("seed-file", seed_file);
  if (!scenario_name.empty()) kv.emplace_back("name", scenario_name);
  kv.emplace_back("out", out_dir);
  return kv;
}

int parse_config(const std::vector<std::string>& args, RunConfig& out) {
  CLI::App app{"delayed negative-feedback oscillation laboratory"};
  app.set_config("--config", "", "configuration file (key = value lines, # comments)");
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::string command;
  app.add_option("command", command, "one of: simulate, sop, ky, tau-curve, multiscale, scenario, validate")
      ->required()
      ->check(CLI::IsMember(
          {"simulate", "sop", "ky", "tau-curve", "multiscale", "scenario", "validate"}));

  double a = 0, c = 0, delta = 0, gamma = 0, slope0 = 0;
  auto* oa = app.add_option("--a", a, "plateau parameter a");
  auto* oc = app.add_option("--c", c, "plateau parameter c");
  auto* od = app.add_option("--delta", delta, "plateau parameter delta");
  auto* og = app.add_option("--gamma", gamma, "plateau parameter gamma");
  auto* os = app.add_option("--slope0", slope0, "slope of the feedback at 0 (negative)");
  app.add_option("--gammas", out.gammas, "multiscale gamma list (decreasing)")->delimiter(',');
  app.add_option("--feedback-file", out.feedback_file, "breakpoint table file")
      ->check(CLI::ExistingFile);

  app.add_option("--n", out.n, "grid resolution per delay unit")->check(CLI::Range(2, 10000000));
  app.add_option("--horizon", out.horizon, "return-map integration horizon")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", out.tol, "fixed-point tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", out.max_iter, "fixed-point iteration cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--t-max", out.t_max, "planar event search cap")->check(CLI::PositiveNumber);
  app.add_option("--step", out.step, "planar integrator step")->check(CLI::PositiveNumber);
  app.add_option("--duration", out.duration, "simulation length")->check(CLI::PositiveNumber);
  app.add_option("--tau-tol", out.tau_tol, "tolerance on tau - 1")->check(CLI::PositiveNumber);
  double blo = 0, bhi = 0;
  auto* obl = app.add_option("--bracket-lo", blo, "lower bracket for tau = 1");
  auto* obh = app.add_option("--bracket-hi", bhi, "upper bracket for tau = 1");
  app.add_option("--points-per-decade", out.points_per_decade, "tau-curve sampling density")
      ->check(CLI::Range(2, 1000));

  double sramp = 0, sconst = 0;
  auto* osr = app.add_option("--seed-ramp", sramp, "ramp seed amplitude");
  auto* osc = app.add_option("--seed-const", sconst, "constant seed level");
  app.add_option("--seed-file", out.seed_file, "segment file seed")->check(CLI::ExistingFile);

  app.add_option("--name", out.scenario_name,
                 "scenario: timeline, two_sops, ky_coexistence, multiscale");
  app.add_option("--out", out.out_dir, "output directory")->envname("DFOSC_OUT");

  std::vector<std::string> argv_fwd = args;
  std::reverse(argv_fwd.begin(), argv_fwd.end());
  try {
    app.parse(argv_fwd);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);  // prints help or the offending token; 0 for --help
  }

  if (command == "simulate") out.command = Command::Simulate;
  else if (command == "sop") out.command = Command::Sop;
  else if (command == "ky") out.command = Command::Ky;
  else if (command == "tau-curve") out.command = Command::TauCurve;
  else if (command == "multiscale") out.command = Command::Multiscale;
  else if (command == "scenario") out.command = Command::Scenario;
  else out.command = Command::Validate;

  if (*oa) out.a = a;
  if (*oc) out.c = c;
  if (*od) out.delta = delta;
  if (*og) out.gamma = gamma;
  if (*os) out.slope0 = slope0;
  if (*obl) out.bracket_lo = blo;
  if (*obh) out.bracket_hi = bhi;
  if (*osr) out.seed_ramp = sramp;
  if (*osc) out.seed_const = sconst;
  if (out.out_dir.empty()) out.out_dir = "dfosc_out";
  return -1;
}

}  // namespace dfosc::cli
