#include <doctest.h>

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "frontier/io.hpp"
#include "frontier/rng.hpp"

using namespace frontier;

TEST_SUITE("io") {

TEST_CASE("format_double round-trips exactly") {
  Rng rng(55);
  std::vector<double> values = {0.0, 1.0, -1.0, 1e-300, 1e300, 0.1,
                                3.141592653589793};
  for (int i = 0; i < 500; ++i) {
    values.push_back((rng.uniform() - 0.5) * std::pow(10.0, rng.uniform(-12.0, 12.0)));
  }
  for (double v : values) {
    const std::string text = format_double(v);
    double back = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), back);
    REQUIRE(res.ec == std::errc{});
    CHECK(back == v);
  }
}

TEST_CASE("point sample CSV round trip") {
  PointSample s;
  Rng rng(66);
  for (int i = 0; i < 200; ++i) {
    s.points.push_back({rng.uniform(), rng.uniform(0.0, 2.0)});
  }
  std::stringstream buffer;
  write_point_sample_csv(buffer, s, "unit-test");
  const PointSample back = read_point_sample_csv(buffer);
  REQUIRE(back.points.size() == s.points.size());
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    CHECK(back.points[i].x == s.points[i].x);
    CHECK(back.points[i].y == s.points[i].y);
  }
}

TEST_CASE("CSV reader skips comments and headers") {
  std::stringstream in("# a comment\nx,y\n0.25,1.5\n# inline comment\n0.75,2\n");
  const PointSample s = read_point_sample_csv(in);
  REQUIRE(s.points.size() == 2);
  CHECK(s.points[0].x == 0.25);
  CHECK(s.points[1].y == 2.0);
}

TEST_CASE("boundary JSON round trip") {
  const std::vector<BoundaryFunction> catalog = {
      BoundaryFunction::constant(2.5),
      BoundaryFunction::sinusoid(1.0, 0.5, 3, 0.7),
      BoundaryFunction::table({{0.0, 1.0}, {0.3, 1.4}, {0.6, 0.9}, {0.9, 1.2}}),
  };
  for (const BoundaryFunction& f : catalog) {
    const BoundaryFunction back = boundary_from_json(boundary_to_json(f));
    CHECK(back.fingerprint() == f.fingerprint());
    for (double x : {0.0, 0.33, 0.78, 1.0}) {
      CHECK(back.evaluate(x) == doctest::Approx(f.evaluate(x)).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS((void)boundary_from_json("{not json"), std::invalid_argument);
  CHECK_THROWS_AS((void)boundary_from_json(R"({"variant":"blob","params":{}})"),
                  std::invalid_argument);
}

TEST_CASE("boundary presets") {
  const BoundaryFunction c = boundary_from_spec("constant:1.5");
  CHECK(c.evaluate(0.2) == 1.5);
  const BoundaryFunction s = boundary_from_spec("sinusoid:1,0.5,1,0");
  CHECK(s.evaluate(0.25) == doctest::Approx(1.5));
  CHECK_THROWS_AS((void)boundary_from_spec("constant:"), std::invalid_argument);
  CHECK_THROWS_AS((void)boundary_from_spec("sinusoid:1,2"), std::invalid_argument);
  CHECK_THROWS_AS((void)boundary_from_spec("/nonexistent/file.json"), IoError);
}

TEST_CASE("knot CSV loader") {
  std::stringstream in("x,value\n0,1\n0.25,1.5\n0.5,1\n0.75,0.5\n");
  const auto knots = knots_from_csv(in);
  REQUIRE(knots.size() == 4);
  CHECK(knots[1].x == 0.25);
  CHECK(knots[1].value == 1.5);
  CHECK_NOTHROW(BoundaryFunction::table(knots));
}

TEST_CASE("study config JSON round trip") {
  StudyConfig cfg;
  cfg.name = "roundtrip";
  cfg.f = BoundaryFunction::sinusoid(1.0, 0.5, 1, 0.0);
  cfg.c = 2.0;
  cfg.n_values = {256, 1024};
  cfg.preset = SchedulePreset::custom;
  cfg.custom_pairs = {{40, 2}, {80, 4}};
  cfg.epsilon = 0.05;
  cfg.replications = 7;
  cfg.eval_grid = {0.25, 0.5, 0.75};
  cfg.seed = 99;
  cfg.assertions.residual_ks_max = 0.1;
  cfg.assertions.mise_slope_range = {{-1.2, -0.4}};

  const StudyConfig back = study_config_from_json(study_config_to_json(cfg));
  CHECK(back.name == cfg.name);
  CHECK(back.c == cfg.c);
  CHECK(back.n_values == cfg.n_values);
  CHECK(back.preset == cfg.preset);
  CHECK(back.custom_pairs == cfg.custom_pairs);
  CHECK(back.replications == cfg.replications);
  CHECK(back.eval_grid == cfg.eval_grid);
  CHECK(back.seed == cfg.seed);
  CHECK(back.f.fingerprint() == cfg.f.fingerprint());
  REQUIRE(back.assertions.residual_ks_max.has_value());
  CHECK(*back.assertions.residual_ks_max == 0.1);
  REQUIRE(back.assertions.mise_slope_range.has_value());
  CHECK(back.assertions.mise_slope_range->first == -1.2);
}

TEST_CASE("study config accepts an integer grid") {
  const StudyConfig cfg = study_config_from_json(R"({
    "boundary": {"variant": "constant", "params": {"level": 1.0}},
    "n_values": [256],
    "replications": 2,
    "eval_grid": 64,
    "seed": 1
  })");
  CHECK(cfg.eval_grid.size() == 64);
  CHECK(cfg.eval_grid.front() == doctest::Approx(1.0 / 128.0));
}

TEST_CASE("malformed study config raises a validation error") {
  CHECK_THROWS_AS((void)study_config_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS((void)study_config_from_json("{}"), std::invalid_argument);
}

TEST_CASE("cell extremes CSV layout") {
  PointSample s;
  s.points = {{0.1, 0.3}, {0.2, 0.8}, {0.9, 0.4}};
  const CellExtremes ext = cell_extremes(s, Partition(2));
  std::stringstream out;
  write_cell_extremes_csv(out, ext, "echo");
  std::string line;
  std::getline(out, line);
  CHECK(line == "# echo");
  std::getline(out, line);
  CHECK(line == "r,x_r,count,x_max,y_min");
  std::getline(out, line);
  CHECK(line == "1,0.25,2,0.8,0.3");
  std::getline(out, line);
  CHECK(line == "2,0.75,1,0.4,0.4");
}

}  // TEST_SUITE
