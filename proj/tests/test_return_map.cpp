#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dfosc/return_map.hpp"
#include "dfosc/scenarios.hpp"
#include "test_util.hpp"

using namespace dfosc;

namespace {

Segment bumped(const Segment& base, const Segment& bump, double cap) {
  std::vector<double> vals(static_cast<size_t>(base.n()) + 1);
  for (int j = 0; j <= base.n(); ++j) vals[static_cast<size_t>(j)] = std::min(base[j] + bump[j], cap);
  return Segment(base.n(), std::move(vals));
}

}  // namespace

TEST_CASE("the return map sends the zero segment to itself") {
  const FeedbackFn f = testutil::worked_feedback();
  const ApplyResult r = apply_P_detail(f, Segment(500), 10.0);
  CHECK(r.status == ApplyStatus::ZeroInput);
  CHECK(r.segment.is_zero());
  CHECK(apply_P(f, Segment(500)).is_zero());
}

TEST_CASE("the return map names the violated cone condition") {
  const FeedbackFn f = testutil::worked_feedback();
  CHECK_THROWS_WITH_AS(apply_P(f, Segment::constant(100, 1.0)),
                       doctest::Contains("left endpoint"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(apply_P(f, Segment::ramp(100, 5.0)), doctest::Contains("bound"),
                       std::invalid_argument);
  std::vector<double> vals(101, 0.0);
  vals[3] = 1.0;
  CHECK_THROWS_WITH_AS(apply_P(f, Segment(100, vals)), doctest::Contains("nondecreasing"),
                       std::invalid_argument);
  CHECK_THROWS_AS(apply_P(f, Segment::ramp(100, 1.0), 1.5), std::invalid_argument);
}

TEST_CASE("cone re-entry normalization repairs within budget and rejects beyond") {
  std::vector<double> vals{1e-5, 0.5, 0.49999, 1.0, 2.0};
  const Segment fixed = normalize_to_cone(Segment(4, vals), 2.0, 1e-3);
  CHECK(fixed[0] == 0.0);
  CHECK(fixed[2] == 0.5);
  CHECK(fixed.in_cone(2.0).ok);
  std::vector<double> bad{0.5, 0.5, 0.5, 1.0, 2.0};
  CHECK_THROWS_AS(normalize_to_cone(Segment(4, bad), 2.0, 1e-3), std::runtime_error);
}

TEST_CASE("fixed-point iteration reaches the long-period orbit from a ramp seed") {
  const FeedbackFn f = testutil::worked_feedback();
  const IterateOutcome out = iterate_to_fixed_point(f, Segment::ramp(1000, 3.0), {});
  REQUIRE(out.status == IterateOutcome::Status::Converged);
  const SOPResult& sop = *out.sop;
  CHECK(sop.period > 4.0);
  CHECK(sop.amplitude > 3.0);
  CHECK(sop.iterations <= 50);
  CHECK(sop.residual < 1e-6);
  CHECK(sop.period > 2.0);

  // Replaying one period returns to the fixed segment.
  const SolutionTrace replay = integrate(f, sop.fixed_segment, sop.period);
  const Segment back = segment_at(replay, sop.period);
  CHECK(back.sup_distance(sop.fixed_segment) < 10.0 * 1e-6);

  // The image stays in the cone.
  CHECK(apply_P(f, sop.fixed_segment).in_cone(f.bound()).ok);
}

TEST_CASE("fixed-point iteration classifies decay to the trivial solution") {
  const FeedbackFn f = stable_origin_instance();
  const IterateOutcome out = iterate_to_fixed_point(f, Segment::ramp(1000, 0.02), {});
  CHECK(out.status == IterateOutcome::Status::ConvergedToZero);
}

TEST_CASE("fixed-point iteration reports non-convergence with its residual history") {
  const FeedbackFn f = testutil::worked_feedback();
  IterateOptions opts;
  opts.max_iter = 1;
  opts.tol = 1e-15;
  const IterateOutcome out = iterate_to_fixed_point(f, Segment::ramp(1000, 3.0), opts);
  CHECK(out.status == IterateOutcome::Status::NoConvergence);
  CHECK(out.residual_history.size() == 1);
  CHECK_FALSE(out.sop.has_value());
}

TEST_CASE("fixed-point iteration rejects seeds outside the cone or zero") {
  const FeedbackFn f = testutil::worked_feedback();
  CHECK_THROWS_AS(iterate_to_fixed_point(f, Segment(100), {}), std::invalid_argument);
  CHECK_THROWS_AS(iterate_to_fixed_point(f, Segment::constant(100, 1.0), {}),
                  std::invalid_argument);
}

TEST_CASE("multiple-orbit search deduplicates by period and amplitude") {
  SUBCASE("two scales give two orbits") {
    const FeedbackFn f = build_multiscale({5.0, 1.0});
    const auto sops = find_multiple_sops(
        f, {Segment::ramp(1000, 4.0), Segment::ramp(1000, 0.8)}, {});
    REQUIRE(sops.size() == 2);
    const double hi = std::max(sops[0].amplitude, sops[1].amplitude);
    const double lo = std::min(sops[0].amplitude, sops[1].amplitude);
    CHECK(hi < 5.0);
    CHECK(hi > 3.75);
    CHECK(lo < 1.0);
    CHECK(lo > 0.75);
  }
  SUBCASE("two seeds in one basin give one orbit") {
    const FeedbackFn f = testutil::worked_feedback();
    const auto sops = find_multiple_sops(
        f, {Segment::ramp(1000, 3.0), Segment::ramp(1000, 3.5)}, {});
    CHECK(sops.size() == 1);
  }
  SUBCASE("decaying seeds give none") {
    const FeedbackFn f = stable_origin_instance();
    const auto sops = find_multiple_sops(
        f, {Segment::ramp(1000, 0.01), Segment::ramp(1000, 0.02)}, {});
    CHECK(sops.empty());
  }
  SUBCASE("the result set is permutation-invariant") {
    const FeedbackFn f = build_multiscale({5.0, 1.0});
    const std::vector<Segment> seeds{Segment::ramp(1000, 4.0), Segment::ramp(1000, 0.8)};
    const std::vector<Segment> flipped{seeds[1], seeds[0]};
    auto a = find_multiple_sops(f, seeds, {});
    auto b = find_multiple_sops(f, flipped, {});
    REQUIRE(a.size() == b.size());
    auto by_amp = [](const SOPResult& l, const SOPResult& r) { return l.amplitude < r.amplitude; };
    std::sort(a.begin(), a.end(), by_amp);
    std::sort(b.begin(), b.end(), by_amp);
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(a[i].period - b[i].period) < 1e-3 * a[i].period);
      CHECK(std::abs(a[i].amplitude - b[i].amplitude) < 1e-3 * a[i].amplitude);
    }
  }
}

TEST_CASE("wedge membership") {
  const WedgeParams wp{1.0, 0.2, 0.1};
  CHECK(wedge_params_valid(wp, 1.0));
  CHECK_FALSE(wedge_params_valid({1.0, 0.5, 0.4}, 1.0));

  const int n = 1000;
  SUBCASE("the full-slope ramp lies strictly inside") {
    CHECK(in_wedge(Segment::ramp(n, 1.0), wp, false));
  }
  SUBCASE("the zero segment lies outside") {
    CHECK_FALSE(in_wedge(Segment(n), wp, false));
    CHECK_FALSE(in_wedge(Segment(n), wp, true));
  }
  SUBCASE("the boundary graph is on the closure but not the interior") {
    const Segment b = wedge_boundary_segment(n, wp);
    CHECK_FALSE(in_wedge(b, wp, false));
    CHECK(in_wedge(b, wp, true));
  }
}

TEST_CASE("wedge invariance holds for the stable-origin instance") {
  const FeedbackFn f = stable_origin_instance();
  const WedgeInvarianceReport rep =
      verify_wedge_invariance(f, {1.0, 0.1, 1.0}, {1.0, 0.2, 0.1}, 1000, 30);
  CHECK(rep.pass);
  CHECK(rep.failures == 0);
  // The drive is constant beyond beta, so the map is constant on the closure.
  CHECK(rep.max_image_spread < 10.0 * 1e-3 * 1.0);
}

TEST_CASE("wedge invariance rejects parameters that break its hypotheses") {
  // The plateau example is bounded by 4 with sigma = 2/3 beyond 1, but
  // beta = 1 is far above sigma/(2 + mu/sigma) = 1/12, so the wedge setup
  // cannot be formed.
  const FeedbackFn f = testutil::worked_feedback();
  CHECK(check_feedback_bounds(f, {4.0, 1.0, 2.0 / 3.0}));
  CHECK_THROWS_AS(
      verify_wedge_invariance(f, {4.0, 1.0, 2.0 / 3.0}, {2.0 / 3.0, 0.01, 1.0}, 500, 5),
      std::invalid_argument);
}

TEST_CASE("small-norm contraction holds when |f'(0)| < 1") {
  const FeedbackFn f({{0.0, 0.0}, {0.1, -0.05}, {0.2, -1.0}}, -1.0);
  const ContractionReport rep = verify_small_norm_contraction(f, 0.05, 1000, 50);
  CHECK(rep.pass);
  CHECK(rep.failures == 0);
}

TEST_CASE("small-norm contraction rejects steep slopes and bad epsilon") {
  const FeedbackFn steep = testutil::worked_feedback();
  CHECK_THROWS_AS(verify_small_norm_contraction(steep, 0.1, 500, 5), std::invalid_argument);
  const FeedbackFn f({{0.0, 0.0}, {0.1, -0.05}, {0.2, -1.0}}, -1.0);
  CHECK_THROWS_AS(verify_small_norm_contraction(f, 0.5, 500, 5), std::invalid_argument);
}

TEST_CASE("property: the return map sends cone segments back into the cone") {
  const FeedbackFn f = testutil::worked_feedback();
  std::mt19937_64 rng(17);
  for (int i = 0; i < 15; ++i) {
    const Segment phi = random_cone_segment(800, 0.2 + 0.25 * i, rng);
    const ApplyResult r = apply_P_detail(f, phi, 60.0);
    CHECK(r.segment.in_cone(f.bound()).ok);
  }
}

TEST_CASE("property: nearby cone segments have nearby images") {
  const FeedbackFn f = testutil::worked_feedback();
  std::mt19937_64 rng(19);
  const Segment phi = Segment::ramp(1000, 3.0);
  const Segment bump = random_cone_segment(1000, 1e-6, rng);
  const Segment psi = bumped(phi, bump, f.bound());
  CHECK(phi.sup_distance(psi) < 1e-6 * (1.0 + 1e-9));
  CHECK(apply_P(f, phi).sup_distance(apply_P(f, psi)) < 1e-3);
}

TEST_CASE("property: the map is constant near the long-period fixed point") {
  const FeedbackFn f = testutil::worked_feedback();
  const IterateOutcome out = iterate_to_fixed_point(f, Segment::ramp(1000, 3.0), {});
  REQUIRE(out.sop.has_value());
  const Segment& fix = out.sop->fixed_segment;
  const Segment img0 = apply_P(f, fix);
  std::mt19937_64 rng(23);
  double spread = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Segment phi = bumped(fix, random_cone_segment(1000, 0.02, rng), f.bound());
    spread = std::max(spread, apply_P(f, phi).sup_distance(img0));
  }
  CHECK(spread < 10.0 * 1e-3 * f.bound());
}

TEST_CASE("basin-boundary bisection rejects endpoints that classify alike") {
  const FeedbackFn f = stable_origin_instance();
  BoundaryOptions opts;
  opts.decay_threshold = 0.01;
  opts.n_bisect = 4;
  // Both endpoints decay: no stable orbit can be found from the big side.
  CHECK_THROWS_AS(
      locate_unstable_sop(f, Segment::ramp(1000, 0.01), Segment::ramp(1000, 0.02), opts),
      std::runtime_error);
  // Missing threshold is rejected up front.
  BoundaryOptions bad;
  CHECK_THROWS_AS(
      locate_unstable_sop(f, Segment::ramp(1000, 0.01), Segment::ramp(1000, 0.9), bad),
      std::invalid_argument);
}
