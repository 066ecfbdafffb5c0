#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dfosc/feedback.hpp"
#include "dfosc/kaplan_yorke.hpp"
#include "dfosc/return_map.hpp"

namespace dfosc {

struct Assertion {
  std::string description;
  std::string expected;
  std::string observed;
  bool pass = false;
};

/// Self-contained record of one scenario run: echoed inputs, per-assertion
/// outcome, and the artifact files written.
struct ScenarioReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Assertion> assertions;
  std::vector<std::string> artifacts;

  bool pass() const;
  std::string to_text() const;
};

/// Reference feedback with a stable origin (slope -1) and constant drive -1
/// beyond 0.1; satisfies the bounds hypothesis with mu = sigma = 1,
/// beta = 0.1 < sigma/(2 + mu/sigma).
FeedbackFn stable_origin_instance();

/// Runs the two-plateau construction from the constant history at -2a and
/// checks the timeline: the linear start, the constant-slope transit between
/// the levels -a and a, the value one delay after the first level crossing,
/// the lower bound on the third crossing time, and the half-period
/// anti-symmetry.  Artifacts: trace/zeros CSV and a time-series plot.
struct TimelineConfig {
  PlateauParams params{1.0, 0.05, 2.0 / 3.0, 4.0};
  double slope0 = -2.0;
  int n = 10000;
  double t_end = 0.0;  // 0 = derived from the parameter bounds
};
ScenarioReport scenario_timeline(const TimelineConfig& cfg, const std::string& outdir = "");

/// Stable origin coexisting with a stable periodic orbit: small seeds decay,
/// a large seed reaches the orbit, and basin-boundary bisection produces a
/// witness strictly between the two attractors.
struct TwoSopsConfig {
  bool use_plateau = false;        // default: the stable_origin_instance
  PlateauParams params{1.0, 0.05, 2.0 / 3.0, 4.0};  // used when use_plateau
  double slope0 = -1.0;
  int n = 1000;
  double seed_small = 0.02;  // ramp amplitudes
  double seed_big = 0.9;
  double decay_threshold = 0.01;
  double t_classify = 60.0;
  int n_bisect = 40;
  IterateOptions iterate;
};
ScenarioReport scenario_two_sops(const TwoSopsConfig& cfg, const std::string& outdir = "");

/// Unstable origin: the long-period orbit found through the return map
/// coexists with the period-4 solution of the planar reduction; emits the
/// time-series and phase-plane artifacts and checks that the two phase-plane
/// traces intersect.
struct KyCoexistenceConfig {
  PlateauParams params{1.0, 0.05, 2.0 / 3.0, 4.0};
  double slope0 = -2.0;
  int n = 1000;
  double tau_tol = 1e-9;
  double seed_amp = 0.0;  // 0 = 3a
  IterateOptions iterate;
  PlanarOptions planar;
};
ScenarioReport scenario_ky_coexistence(const KyCoexistenceConfig& cfg,
                                       const std::string& outdir = "");

/// One stable orbit per scale of the multi-scale construction, found from
/// per-scale ramp seeds and deduplicated.
struct MultiscaleConfig {
  std::vector<double> gammas{5.0, 1.0};
  std::optional<double> slope0;
  int n = 1000;
  double seed_factor = 3.5;  // ramp amplitude = factor * a_n
  IterateOptions iterate;
};
ScenarioReport scenario_multiscale(const MultiscaleConfig& cfg, const std::string& outdir = "");

}  // namespace dfosc
