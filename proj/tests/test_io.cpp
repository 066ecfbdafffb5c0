#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <random>

#include "dfosc/io.hpp"
#include "test_util.hpp"

using namespace dfosc;

namespace {

std::string tmp_dir() {
  const auto dir = std::filesystem::path("io_test_tmp");
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("csv text: exact header, %.17g rows, LF endings") {
  const std::string text = io::csv_text("t,x", {{0.0, 1.0}, {0.5, 1.0 / 3.0}});
  CHECK(text ==
        "t,x\n"
        "0,1\n"
        "0.5,0.33333333333333331\n");
  CHECK_THROWS_AS(io::csv_text("t,x", {{1.0, 2.0, 3.0}}), std::invalid_argument);
}

TEST_CASE("csv emission is byte-deterministic") {
  const std::string dir = tmp_dir();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> vals(-10.0, 10.0);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 200; ++i) rows.push_back({vals(rng), vals(rng)});
  io::emit_csv(dir + "/a.csv", "u0,tau", rows);
  io::emit_csv(dir + "/b.csv", "u0,tau", rows);
  CHECK(io::read_text_file(dir + "/a.csv") == io::read_text_file(dir + "/b.csv"));
}

TEST_CASE("vector plot: structure, determinism, rejection of empty input") {
  const io::Series s1{"x", {{0.0, 0.0}, {1.0, 1.0}, {2.0, 0.5}}};
  const io::Series s2{"y", {{0.0, 1.0}, {1.0, -1.0}}};
  const std::string svg = io::svg_polyline_text({s1, s2}, "t", "x(t)");
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  size_t polylines = 0;
  for (size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) {
    ++polylines;
  }
  CHECK(polylines == 2);
  CHECK(svg.find("x(t)") != std::string::npos);
  CHECK(svg == io::svg_polyline_text({s1, s2}, "t", "x(t)"));

  CHECK_THROWS_AS(io::svg_polyline_text({}, "t", "x"), std::invalid_argument);
  CHECK_THROWS_AS(io::svg_polyline_text({io::Series{"e", {}}}, "t", "x"),
                  std::invalid_argument);
}

TEST_CASE("feedback and segment files written by io re-parse to equal values") {
  const std::string dir = tmp_dir();
  const FeedbackFn f = build_multiscale({5.0, 1.0});
  io::write_feedback_file(dir + "/f.txt", f);
  CHECK(io::read_feedback_file(dir + "/f.txt") == f);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> vals(0.0, 1.0);
  std::vector<double> raw(101, 0.0);
  for (size_t i = 1; i < raw.size(); ++i) raw[i] = raw[i - 1] + vals(rng);
  const Segment s(100, raw);
  io::write_segment_file(dir + "/s.txt", s);
  CHECK(io::read_segment_file(dir + "/s.txt") == s);
}

TEST_CASE("kv files hold flat key = value lines") {
  const std::string text = io::kv_text({{"a", "1"}, {"gamma", "4"}});
  CHECK(text == "a = 1\ngamma = 4\n");
}

TEST_CASE("trace writers use the declared schemas") {
  const std::string dir = tmp_dir();
  const FeedbackFn f = testutil::worked_feedback();
  const SolutionTrace tr = integrate(f, Segment::ramp(50, 3.0), 3.0);
  io::write_trace_csv(dir + "/t.csv", tr);
  io::write_zeros_csv(dir + "/z.csv", tr);
  io::write_phase_csv(dir + "/p.csv", tr);
  CHECK(io::read_text_file(dir + "/t.csv").rfind("t,x\n", 0) == 0);
  CHECK(io::read_text_file(dir + "/z.csv").rfind("j,z,direction\n", 0) == 0);
  CHECK(io::read_text_file(dir + "/p.csv").rfind("t,x,x_delayed\n", 0) == 0);

  const PlanarTrace orbit = integrate_planar(f, 1.0, 0.5);
  io::write_planar_csv(dir + "/o.csv", orbit, f);
  CHECK(io::read_text_file(dir + "/o.csv").rfind("t,u,v,H\n", 0) == 0);

  io::write_tau_curve_csv(dir + "/tau.csv", {{0.1, 0.8}});
  CHECK(io::read_text_file(dir + "/tau.csv") ==
        "u0,tau\n0.10000000000000001,0.80000000000000004\n");
}

TEST_CASE("sop record lists period, amplitude, residual, iterations") {
  SOPResult sop{Segment(10), 5.5, 3.25, 4, 1e-7};
  const std::string text = io::sop_record_text(sop);
  CHECK(text ==
        "period: 5.5\namplitude: 3.25\nresidual: 9.9999999999999995e-08\niterations: 4\n");
}

TEST_CASE("unwritable paths are reported") {
  CHECK_THROWS_AS(io::write_text_file("/nonexistent_dir_zz/x.txt", "hi"), std::runtime_error);
  CHECK_THROWS_AS(io::read_text_file("/nonexistent_dir_zz/x.txt"), std::runtime_error);
}
