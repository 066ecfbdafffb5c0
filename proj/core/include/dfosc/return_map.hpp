#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dfosc/dde.hpp"
#include "dfosc/feedback.hpp"
#include "dfosc/segment.hpp"

namespace dfosc {

/// Status of one application of the return map.
enum class ApplyStatus {
  Returned,            // two positive zeros found; segment one delay past the second
  ZeroInput,           // P(0) = 0
  ZeroDecayed,         // fewer than two zeros and the tail amplitude is below 1e-9
  ZeroHorizonTooShort  // fewer than two zeros but the solution has not died down
};

struct ApplyResult {
  Segment segment;
  ApplyStatus status = ApplyStatus::ZeroInput;
  int zeros_found = 0;
};

/// Return map on the cone: integrate past the second positive zero z and hand
/// back the segment at z + 1, re-normalized onto the cone; the zero segment
/// when fewer than two zeros occur within the horizon.  The input must lie in
/// the cone of f's bound or the violated condition is named in the error.
ApplyResult apply_P_detail(const FeedbackFn& f, const Segment& phi, double horizon = 200.0);
Segment apply_P(const FeedbackFn& f, const Segment& phi, double horizon = 200.0);

/// Snap the left endpoint to zero, repair monotonicity by running maximum and
/// clamp to `bound`, as long as every adjustment stays within `budget`;
/// larger violations throw.
Segment normalize_to_cone(Segment s, double bound, double budget);

/// A converged fixed point of the return map.
struct SOPResult {
  Segment fixed_segment;
  double period = 0.0;     // z2 + 1 measured at the fixed point
  double amplitude = 0.0;  // max |x| over one period
  int iterations = 0;
  double residual = 0.0;   // sup-distance between the last two iterates
};

struct IterateOptions {
  double tol = 1e-6;
  int max_iter = 50;
  double horizon = 200.0;
  // Iterates below this sup-norm are classified as the trivial solution's
  // basin; 0 means max(10*tol, 1e-9).
  double zero_threshold = 0.0;
};

struct IterateOutcome {
  enum class Status { Converged, ConvergedToZero, NoConvergence };
  Status status = Status::NoConvergence;
  std::optional<SOPResult> sop;
  std::vector<double> residual_history;
};

/// Fixed-point iteration of the return map from a nonzero cone segment.
IterateOutcome iterate_to_fixed_point(const FeedbackFn& f, const Segment& phi0,
                                      const IterateOptions& opts = {});

/// Runs the fixed-point iteration per seed and deduplicates: two results are
/// the same solution iff both period and amplitude agree to a relative 1e-3.
std::vector<SOPResult> find_multiple_sops(const FeedbackFn& f, const std::vector<Segment>& seeds,
                                          const IterateOptions& opts = {});

/// Parameters of the wedge of segments lying above the ramp graph
///   t -> sigma*t + sigma*(1 - gamma)  on  [-1 + gamma, -beta/sigma].
struct WedgeParams {
  double sigma = 0.0;
  double gamma = 0.0;  // small opening parameter
  double beta = 0.0;
};

/// Wedge parameter consistency against the bound mu:
/// gamma + beta/sigma < 1 and beta <= (sigma - (sigma + mu)*gamma)/(2 + mu/sigma).
bool wedge_params_valid(const WedgeParams& wp, double mu);

/// Strict (or closed) wedge membership checked at every grid node of the
/// stated interval.
bool in_wedge(const Segment& phi, const WedgeParams& wp, bool closure = false);

/// The lower boundary graph of the wedge as a cone segment.
Segment wedge_boundary_segment(int n, const WedgeParams& wp);

/// A random nondecreasing cone segment with the given sup-norm.
Segment random_cone_segment(int n, double norm, std::mt19937_64& rng);

struct WedgeInvarianceReport {
  int samples = 0;
  int failures = 0;                 // images that left the open wedge
  double max_image_spread = 0.0;    // max pairwise sup-distance of the images
  std::vector<int> failed_indices;
  bool pass = false;
};

/// Samples segments of the closed wedge (boundary graph plus a random
/// nondecreasing bump, clipped to f's bound) and checks that the return map
/// sends each into the open wedge.  Requires the bounds hypothesis and
/// beta < sigma/(2 + mu/sigma).
WedgeInvarianceReport verify_wedge_invariance(const FeedbackFn& f, const FeedbackBounds& fb,
                                              const WedgeParams& wp, int n, int n_samples,
                                              double horizon = 200.0, std::uint64_t seed = 1234);

struct ContractionReport {
  int samples = 0;
  int skipped = 0;  // inputs mapped to the zero segment
  int failures = 0;
  bool pass = false;
};

/// Checks ||P(phi)|| < ||phi|| for random cone segments with norm below
/// epsilon.  Requires |f'(0)| < 1 and epsilon within the first linear piece.
ContractionReport verify_small_norm_contraction(const FeedbackFn& f, double epsilon, int n,
                                                int n_samples, double horizon = 200.0,
                                                std::uint64_t seed = 99);

struct BoundaryOptions {
  double t_classify = 60.0;
  int n_bisect = 30;
  double decay_threshold = 0.0;  // mandatory, > 0
  double match_rel = 0.01;       // relative match to the known stable orbit
  IterateOptions iterate;        // used to find the stable orbit from phi_big
};

struct BoundaryWitness {
  double s_star = 0.0;
  double bracket_width = 0.0;
  Segment segment;
  double quasi_period = 0.0;  // from the last three zeros of the witness orbit
  double amplitude = 0.0;     // over the last quasi-period
  SOPResult stable;           // the attractor reached from phi_big
};

/// Bisection on the family (1-s)*phi_small + s*phi_big between the basin of
/// the trivial solution and the basin of a stable periodic orbit.  The
/// endpoints must classify as decay and as the stable orbit respectively;
/// otherwise the classification transcript is thrown.
BoundaryWitness locate_unstable_sop(const FeedbackFn& f, const Segment& phi_small,
                                    const Segment& phi_big, const BoundaryOptions& opts);

}  // namespace dfosc
