#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dfosc/feedback.hpp"

namespace dfosc::cli {

enum class Command { Simulate, Sop, Ky, TauCurve, Multiscale, Scenario, Validate };

const char* command_name(Command c);

struct RunConfig {
  Command command = Command::Validate;

  // Feedback: plateau parameters + slope, a multiscale gamma list, or a
  // breakpoint file.  Exactly one source must be usable when a command needs
  // a feedback function.
  std::optional<double> a, c, delta, gamma;
  std::optional<double> slope0;
  std::vector<double> gammas;
  std::string feedback_file;

  // Numeric knobs.
  int n = 1000;
  double horizon = 200.0;
  double tol = 1e-6;
  int max_iter = 50;
  double t_max = 2000.0;
  double step = 1e-4;
  double duration = 20.0;  // simulate length
  double tau_tol = 1e-9;
  std::optional<double> bracket_lo, bracket_hi;
  int points_per_decade = 8;

  // Seed: ramp amplitude, constant level, or a segment file.
  std::optional<double> seed_ramp, seed_const;
  std::string seed_file;

  std::string scenario_name;  // timeline | two_sops | ky_coexistence | multiscale
  std::string out_dir;        // default from DFOSC_OUT, else "dfosc_out"

  PlateauParams plateau_params() const;  // throws when a/c/delta/gamma missing

  /// Full effective configuration as key = value pairs (the config echo).
  std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Parses argv-style arguments (without the program name).  Returns -1 when
/// parsing succeeded and `out` is filled; otherwise the process exit code
/// (0 for --help, 2 for usage/config errors) with diagnostics already
/// printed.  Flags override config-file values; unknown keys are rejected.
int parse_config(const std::vector<std::string>& args, RunConfig& out);

/// Parses and dispatches; returns the process exit code
/// (0 pass, 1 assertion failure, 2 usage/config error, 3 numeric failure).
int run_cli(const std::vector<std::string>& args);

}  // namespace dfosc::cli
