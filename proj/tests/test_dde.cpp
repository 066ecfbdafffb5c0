#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dfosc/dde.hpp"
#include "dfosc/return_map.hpp"
#include "test_util.hpp"

using namespace dfosc;

TEST_CASE("segment constructors and cone membership") {
  const Segment z(100);
  CHECK(z.is_zero());
  CHECK(z.in_cone(1.0).ok);

  const Segment r = Segment::ramp(100, 2.0);
  CHECK(r[0] == 0.0);
  CHECK(r[100] == 2.0);
  CHECK(r.sup_norm() == 2.0);
  CHECK(r.in_cone(2.0).ok);
  CHECK_FALSE(r.in_cone(1.5).ok);
  CHECK(r.in_cone(1.5).violation == "sup norm exceeds the feedback bound");

  const Segment c = Segment::constant(100, -1.0);
  CHECK_FALSE(c.in_cone(4.0).ok);
  CHECK(c.in_cone(4.0).violation == "left endpoint phi(-1) is not zero");

  std::vector<double> vals(101, 0.0);
  vals[50] = 0.5;
  CHECK(Segment(100, vals).in_cone(1.0).violation == "values are not nondecreasing");

  CHECK_THROWS_AS(Segment(1), std::invalid_argument);
  CHECK_THROWS_AS(Segment(10, std::vector<double>(5, 0.0)), std::invalid_argument);
}

TEST_CASE("segment text file round-trips bit-exactly") {
  std::mt19937_64 rng(1);
  const Segment s = random_cone_segment(64, 3.3333333333333335, rng);
  const Segment back = Segment::from_text(s.to_text());
  CHECK(back == s);
}

TEST_CASE("zero history stays identically zero") {
  const FeedbackFn f = testutil::worked_feedback();
  const SolutionTrace tr = integrate(f, Segment(500), 10.0);
  for (double v : tr.samples()) CHECK(v == 0.0);
  CHECK(tr.zero_count() == 0);
  CHECK(tr.zeros().empty());
}

TEST_CASE("constant history at -2a continues as the exact ramp -2a + delta*t") {
  const PlateauParams p = testutil::worked_params();
  const FeedbackFn f = testutil::worked_feedback();
  const int n = 1000;
  const SolutionTrace tr = integrate(f, Segment::constant(n, -2.0 * p.a), 1.0);
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    CHECK(std::abs(tr.samples()[static_cast<size_t>(n + k)] - (-2.0 * p.a + p.delta * t)) <
          1e-12);
  }
}

TEST_CASE("history inside the drive band continues with constant slope gamma") {
  // Values in [-2a+c, -a] ending at -a keep the delayed drive on the plateau,
  // so the continuation is -a + gamma*t for a whole delay unit.
  const PlateauParams p = testutil::worked_params();
  const FeedbackFn f = testutil::worked_feedback();
  const int n = 1000;
  std::vector<double> vals(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double s = static_cast<double>(k) / n;  // 0..1
    vals[static_cast<size_t>(k)] = (-2.0 * p.a + p.c) * (1.0 - s) + (-p.a) * s;
  }
  const SolutionTrace tr = integrate(f, Segment(n, std::move(vals)), 1.0);
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    CHECK(std::abs(tr.samples()[static_cast<size_t>(n + k)] - (-p.a + p.gamma * t)) < 1e-12);
  }
}

TEST_CASE("integrate rejects nonpositive horizons") {
  const FeedbackFn f = testutil::worked_feedback();
  CHECK_THROWS_AS(integrate(f, Segment(10), 0.0), std::invalid_argument);
}

TEST_CASE("zero scan refines crossings and handles grid-exact zeros") {
  // Synthetic sample arrays on n = 4 (grid step 0.25, history [-1, 0]).
  SUBCASE("interpolated crossing") {
    const std::vector<double> x{-1, -1, -1, -1, -1, -0.25, 0.25, 0.5, 1.0};
    const ZeroScan scan = find_zeros(4, x);
    REQUIRE(scan.zeros.size() == 1);
    CHECK(scan.zeros[0].t == doctest::Approx(0.375));
    CHECK(scan.zeros[0].direction == +1);
  }
  SUBCASE("grid-exact zero with a sign change") {
    const std::vector<double> x{-1, -1, -1, -1, -1, -0.5, 0.0, 0.5, 1.0};
    const ZeroScan scan = find_zeros(4, x);
    REQUIRE(scan.zeros.size() == 1);
    CHECK(scan.zeros[0].t == doctest::Approx(0.5));
    CHECK(scan.zeros[0].direction == +1);
  }
  SUBCASE("grid-exact touch without a sign change is not a crossing") {
    const std::vector<double> x{1, 1, 1, 1, 1, 0.5, 0.0, 0.5, 1.0};
    CHECK(find_zeros(4, x).zeros.empty());
  }
  SUBCASE("close crossings are flagged as a slow-oscillation violation") {
    const std::vector<double> x{1, 1, 1, 1, 1, -1, 1, -1, 1};
    const ZeroScan scan = find_zeros(4, x);
    CHECK(scan.zeros.size() >= 2);
    CHECK_FALSE(scan.violations.empty());
  }
}

TEST_CASE("first zero of the plateau run sits one rise time past the -a crossing") {
  const PlateauParams p = testutil::worked_params();
  const FeedbackFn f = testutil::worked_feedback();
  const SolutionTrace tr = integrate(f, Segment::constant(1000, -2.0 * p.a), 10.0);
  const auto tau1 = first_crossing(tr, -p.a, +1, 0.0);
  REQUIRE(tau1.has_value());
  REQUIRE_FALSE(tr.zeros().empty());
  // The solution climbs through [-a, a] at constant slope gamma.
  CHECK(std::abs(tr.zeros()[0].t - (*tau1 + p.a / p.gamma)) < 2.0 * tr.h());
}

TEST_CASE("property: cone histories produce zero gaps above 1 - 2h") {
  const FeedbackFn f = testutil::worked_feedback();
  std::mt19937_64 rng(13);
  const int n = 1000;
  const double floor = 1.0 - 2.0 / n;
  for (int i = 0; i < 8; ++i) {
    const Segment phi = random_cone_segment(n, 0.3 + 0.45 * i, rng);
    const SolutionTrace tr = integrate(f, phi, 40.0);
    for (size_t j = 0; j + 1 < tr.zeros().size(); ++j) {
      CHECK(tr.zeros()[j + 1].t - tr.zeros()[j].t > floor);
    }
  }
}

TEST_CASE("periodic orbits keep all zero gaps above one delay") {
  const FeedbackFn f = testutil::worked_feedback();
  const SolutionTrace tr = integrate(f, Segment::ramp(1000, 3.0), 60.0);
  REQUIRE(tr.zeros().size() >= 3);
  for (size_t j = 0; j + 1 < tr.zeros().size(); ++j) {
    CHECK(tr.zeros()[j + 1].t - tr.zeros()[j].t > 1.0);
  }
  CHECK(tr.slow_osc_violations().empty());
}

TEST_CASE("segments extracted from the trace") {
  const FeedbackFn f = testutil::worked_feedback();
  const Segment phi = Segment::ramp(800, 3.0);
  const SolutionTrace tr = integrate(f, phi, 30.0);

  SUBCASE("at t = 0 the initial history returns exactly") {
    const Segment s0 = segment_at(tr, 0.0);
    CHECK(s0.sup_distance(phi) == 0.0);
  }
  SUBCASE("one delay past a zero the left endpoint nearly vanishes") {
    REQUIRE(tr.zeros().size() >= 2);
    const double z2 = tr.zeros()[1].t;
    const Segment s = segment_at(tr, z2 + 1.0);
    CHECK(std::abs(s[0]) < 1e-4);
    const Segment snapped = segment_at(tr, z2 + 1.0, SnapMode::SnapLeftEndpoint,
                                       10.0 * tr.h() * f.bound());
    CHECK(snapped[0] == 0.0);
  }
  SUBCASE("one delay past a zero |x| increases along the segment") {
    REQUIRE(tr.zeros().size() >= 2);
    for (size_t j = 0; j < 2; ++j) {
      const Segment s = segment_at(tr, tr.zeros()[j].t + 1.0);
      for (int k = 1; k <= s.n(); ++k) {
        CHECK(std::abs(s[k]) >= std::abs(s[k - 1]) - 1e-9);
      }
    }
  }
  SUBCASE("out-of-range times are rejected") {
    CHECK_THROWS_AS(segment_at(tr, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(segment_at(tr, 31.0), std::invalid_argument);
  }
}

TEST_CASE("property: bounded by the feedback over the delay interval past a zero") {
  const FeedbackFn f = testutil::worked_feedback();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const Segment phi = random_cone_segment(1000, 0.5 + 0.35 * i, rng);
    const SolutionTrace tr = integrate(f, phi, 30.0);
    if (tr.zeros().empty()) continue;
    const double z = tr.zeros()[0].t;
    double drive = 0.0;
    for (double t = z - 1.0; t <= z; t += 1e-3) {
      drive = std::max(drive, std::abs(f(tr.value_at(t))));
    }
    CHECK(tr.max_abs_over(z, z + 1.0) <= 1.05 * drive);
  }
}

TEST_CASE("property: halving the step shrinks trace differences like an order-2 scheme") {
  const FeedbackFn f = testutil::worked_feedback();
  auto run = [&](int n) { return integrate(f, Segment::ramp(n, 3.0), 20.0); };
  const SolutionTrace t1 = run(1000), t2 = run(2000), t4 = run(4000);
  auto maxdiff = [](const SolutionTrace& coarse, const SolutionTrace& fine) {
    double m = 0.0;
    for (size_t k = 0; k < coarse.samples().size(); ++k) {
      m = std::max(m, std::abs(coarse.samples()[k] - fine.samples()[2 * k]));
    }
    return m;
  };
  const double ratio = maxdiff(t1, t2) / maxdiff(t2, t4);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("property: integration is bit-deterministic") {
  const FeedbackFn f = build_multiscale({5.0, 1.0});
  const Segment phi = Segment::ramp(700, 3.3);
  const SolutionTrace a = integrate(f, phi, 25.0);
  const SolutionTrace b = integrate(f, phi, 25.0);
  CHECK(a.samples() == b.samples());
  REQUIRE(a.zeros().size() == b.zeros().size());
  for (size_t j = 0; j < a.zeros().size(); ++j) {
    CHECK(a.zeros()[j].t == b.zeros()[j].t);
  }
}

TEST_CASE("trace interpolation: two-sided and left-sided values") {
  // n = 2: samples at t = -1, -0.5, 0, 0.5, 1.
  const std::vector<double> x{0.0, 0.0, 0.0, 1.0, 1.0};
  const SolutionTrace tr(2, x, {}, {});
  CHECK(tr.value_at(0.25) == doctest::Approx(0.5));
  CHECK(tr.value_at(-1.0) == 0.0);
  CHECK(tr.value_at(1.0) == 1.0);
  // Left-sided at the kink t = 0.5 extends the rising interval.
  CHECK(tr.value_at_left(0.75) == doctest::Approx(1.5));
  CHECK(tr.value_at_left(0.5) == 1.0);
}
