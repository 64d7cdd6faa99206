#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "frontier/boundary.hpp"
#include "frontier/rng.hpp"
#include "frontier/sampler.hpp"
#include "test_util.hpp"

using namespace frontier;

namespace {

// KS distance between a sample and an arbitrary CDF.
template <typename Cdf>
double ks_vs_cdf(std::vector<double> sample, Cdf cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double value = cdf(sample[i]);
    dist = std::max({dist, (i + 1) / n - value, value - i / n});
  }
  return dist;
}

}  // namespace

TEST_SUITE("sampler") {

TEST_CASE("identical seeds give bit-identical samples") {
  const auto f = BoundaryFunction::sinusoid(1.0, 0.5, 1, 0.0);
  const ProcessConfig cfg(1000, 1.0, 42);
  const PointSample a = sample_process(f, cfg);
  const PointSample b = sample_process(f, cfg);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].x == b.points[i].x);
    CHECK(a.points[i].y == b.points[i].y);
  }
  const PointSample c = sample_process(f, ProcessConfig(1000, 1.0, 43));
  CHECK(c.points.size() != a.points.size());
}

TEST_CASE("vanishing intensity yields an empty, valid sample") {
  const auto f = BoundaryFunction::constant(1.0);
  const PointSample s = sample_process(f, ProcessConfig(1, 1e-10, 7));
  CHECK(s.points.empty());
  REQUIRE(s.config.has_value());
  CHECK(s.config->total_intensity() == doctest::Approx(1e-10));
}

TEST_CASE("mean sample size matches nc * area over 200 seeds") {
  const auto constant = BoundaryFunction::constant(1.0);
  const auto sinusoid = BoundaryFunction::sinusoid(1.0, 0.5, 1, 0.0);
  for (const auto* f : {&constant, &sinusoid}) {
    double total = 0.0;
    for (int seed = 0; seed < 200; ++seed) {
      total += static_cast<double>(
          sample_process(*f, ProcessConfig(5000, 1.0, 1000 + seed)).points.size());
    }
    const double mean_size = total / 200.0;
    // Poisson(5000) mean over 200 replications: 3 sigma = 3 sqrt(5000/200).
    CHECK(std::abs(mean_size - 5000.0) <= 3.0 * std::sqrt(5000.0 / 200.0));
  }
}

TEST_CASE("all points satisfy 0 <= y <= f(x)") {
  const auto f = BoundaryFunction::sinusoid(1.0, 0.5, 2, 0.7);
  const PointSample s = sample_process(f, ProcessConfig(5000, 1.0, 5));
  for (const Point& p : s.points) {
    CHECK(p.x >= 0.0);
    CHECK(p.x <= 1.0);
    CHECK(p.y >= 0.0);
    CHECK(p.y <= f.evaluate(p.x));
  }
}

TEST_CASE("cell extremes by direct enumeration") {
  PointSample s;
  s.points = {{0.1, 0.3}, {0.2, 0.8}};
  const CellExtremes ext = cell_extremes(s, Partition(2));
  CHECK(ext.x_max[0] == 0.8);
  CHECK(ext.y_min[0] == 0.3);
  CHECK(ext.count[0] == 2);
  CHECK(ext.x_max[1] == 0.0);
  CHECK(ext.y_min[1] == 0.0);
  CHECK(ext.count[1] == 0);
}

TEST_CASE("cell extremes of an empty sample") {
  const CellExtremes ext = cell_extremes(PointSample{}, Partition(5));
  for (int r = 0; r < 5; ++r) {
    CHECK(ext.x_max[r] == 0.0);
    CHECK(ext.y_min[r] == 0.0);
    CHECK(ext.count[r] == 0);
  }
}

TEST_CASE("x = 1 lands in the last cell") {
  PointSample s;
  s.points = {{1.0, 0.5}};
  const CellExtremes ext = cell_extremes(s, Partition(4));
  CHECK(ext.count[3] == 1);
  CHECK(ext.x_max[3] == 0.5);
}

TEST_CASE("dense uniform sample fills every cell with near-boundary maxima") {
  const auto f = BoundaryFunction::constant(1.0);
  const PointSample s = sample_process(f, ProcessConfig(10000, 1.0, 11));
  const CellExtremes ext = cell_extremes(s, Partition(10));
  for (int r = 0; r < 10; ++r) {
    CHECK(ext.count[r] > 0);
    CHECK(ext.x_max[r] > 0.99);
    CHECK(ext.x_max[r] <= 1.0);
  }
}

TEST_CASE("cell extremes invariants on random samples") {
  Rng rng(99);
  const auto f = BoundaryFunction::sinusoid(1.0, 0.4, 1, 0.2);
  for (int trial = 0; trial < 20; ++trial) {
    const int k = 1 + static_cast<int>(rng.uniform(0.0, 40.0));
    const PointSample s =
        sample_process(f, ProcessConfig(50, 1.0, 7000 + trial));
    const CellExtremes ext = cell_extremes(s, Partition(k));
    for (int r = 0; r < k; ++r) {
      if (ext.count[r] == 0) {
        CHECK(ext.x_max[r] == 0.0);
        CHECK(ext.y_min[r] == 0.0);
      } else {
        CHECK(ext.y_min[r] >= 0.0);
        CHECK(ext.y_min[r] <= ext.x_max[r]);
        if (ext.count[r] == 1) CHECK(ext.y_min[r] == ext.x_max[r]);
      }
    }
  }
}

TEST_CASE("extreme_cdf: closed-form values and domain") {
  // P(empty cell) at x = 0.
  CHECK(extreme_cdf(0.0, 1.0, 50.0, 10, 0.1) ==
        doctest::Approx(std::exp(-5.0)).epsilon(1e-12));
  // Constant f = 1 with nc = k: F(x) = exp(x - 1).
  for (double x : {0.0, 0.3, 0.7, 1.0}) {
    CHECK(extreme_cdf(x, 1.0, 5.0, 5, 0.2) ==
          doctest::Approx(std::exp(x - 1.0)).epsilon(1e-12));
  }
  CHECK(extreme_cdf(1.0, 1.0, 5.0, 5, 0.2) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)extreme_cdf(1.1, 1.0, 5.0, 5, 0.2), std::domain_error);
  CHECK_THROWS_AS((void)extreme_cdf(0.5, 1.0, -1.0, 5, 0.2), std::domain_error);
}

TEST_CASE("simulated maxima follow the extreme-value law") {
  const auto f = BoundaryFunction::constant(1.0);
  const int k = 10;
  const int reps = 2000;
  std::vector<std::vector<double>> per_cell(k);
  for (int j = 0; j < reps; ++j) {
    const PointSample s =
        sample_process(f, ProcessConfig(1000, 1.0, 123450 + j));
    const CellExtremes ext = cell_extremes(s, Partition(k));
    for (int r = 0; r < k; ++r) per_cell[r].push_back(ext.x_max[r]);
  }
  for (int r = 0; r < k; ++r) {
    const double dist = ks_vs_cdf(per_cell[r], [&](double x) {
      return extreme_cdf(x, 1.0, 1000.0, k, 1.0 / k);
    });
    CHECK(dist < 0.05);
  }
}

TEST_CASE("extreme_moments: closed forms") {
  // nc = k: mean = 1 - (1 - 1/e).
  const ExtremeMoments m1 = extreme_moments(1.0, 5.0, 5);
  CHECK(m1.mean == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

  // Large nc/k: mean -> kl - k/(nc), variance * (nc/k)^2 -> 1.
  const ExtremeMoments m2 = extreme_moments(1.0, 1e6, 100);
  CHECK(m2.mean == doctest::Approx(1.0 - 100.0 / 1e6).epsilon(1e-10));
  CHECK(m2.variance * std::pow(1e6 / 100.0, 2.0) == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS((void)extreme_moments(0.0, 1.0, 1), std::domain_error);
  CHECK_THROWS_AS((void)extreme_moments(1.0, 0.0, 1), std::domain_error);
}

TEST_CASE("extreme_moments agree with direct integration of the law") {
  struct Case {
    double level, nc;
    int k;
  };
  for (const Case& c : {Case{1.0, 1.0, 1}, Case{1.0, 10.0, 1}, Case{2.0, 50.0, 7}}) {
    const double a = c.nc / c.k;
    auto survival = [&](double x) { return 1.0 - std::exp(a * (x - c.level)); };
    const int panels = 1 << 16;
    const double mean_oracle =
        testutil::simpson_oracle(survival, 0.0, c.level, panels);
    const double second_oracle = 2.0 * testutil::simpson_oracle(
        [&](double x) { return x * survival(x); }, 0.0, c.level, panels);
    const ExtremeMoments m = extreme_moments(c.level, c.nc, c.k);
    CHECK(m.mean == doctest::Approx(mean_oracle).epsilon(1e-10));
    CHECK(m.variance ==
          doctest::Approx(second_oracle - mean_oracle * mean_oracle).epsilon(1e-9));
  }
}

TEST_CASE("empirical moments of simulated maxima match the law") {
  const auto f = BoundaryFunction::constant(1.0);
  const int k = 10;
  const int reps = 2000;
  std::vector<double> maxima;
  for (int j = 0; j < reps; ++j) {
    const PointSample s = sample_process(f, ProcessConfig(500, 1.0, 40000 + j));
    const CellExtremes ext = cell_extremes(s, Partition(k));
    for (int r = 0; r < k; ++r) maxima.push_back(ext.x_max[r]);
  }
  const ExtremeMoments m = extreme_moments(1.0, 500.0, k);
  const double n = static_cast<double>(maxima.size());
  const double emp_mean = mean(maxima);
  const double emp_var = sample_variance(maxima);
  // Exponential-like tail: se(mean) = sd/sqrt(n), se(var) ~ var sqrt(8/n).
  CHECK(std::abs(emp_mean - m.mean) <= 3.0 * std::sqrt(m.variance / n));
  CHECK(std::abs(emp_var - m.variance) <= 3.0 * m.variance * std::sqrt(8.0 / n));
}

TEST_CASE("cell counts are Poisson (chi-square at the 1% level)") {
  const auto f = BoundaryFunction::constant(1.0);
  const int k = 10;
  const double nu = 100.0;  // nc/k
  std::vector<std::int64_t> counts;
  for (int j = 0; j < 200; ++j) {
    const PointSample s = sample_process(f, ProcessConfig(1000, 1.0, 90000 + j));
    const CellExtremes ext = cell_extremes(s, Partition(k));
    for (int r = 0; r < k; ++r) counts.push_back(ext.count[r]);
  }
  // Bin edges around the mean; expected masses from the Poisson pmf.
  const std::vector<std::int64_t> edges = {88, 92, 96, 100, 104, 108, 112};
  std::vector<double> expected(edges.size() + 1, 0.0);
  auto pmf = [&](std::int64_t c) {
    return std::exp(c * std::log(nu) - nu - std::lgamma(c + 1.0));
  };
  for (std::int64_t c = 0; c <= 200; ++c) {
    std::size_t bin = 0;
    while (bin < edges.size() && c > edges[bin]) ++bin;
    expected[bin] += pmf(c);
  }
  std::vector<double> observed(edges.size() + 1, 0.0);
  for (std::int64_t c : counts) {
    std::size_t bin = 0;
    while (bin < edges.size() && c > edges[bin]) ++bin;
    observed[bin] += 1.0;
  }
  double chi2 = 0.0;
  const double n = static_cast<double>(counts.size());
  for (std::size_t b = 0; b < expected.size(); ++b) {
    const double e = expected[b] * n;
    chi2 += (observed[b] - e) * (observed[b] - e) / e;
  }
  CHECK(chi2 < 18.475307);  // chi-square 99th percentile, 7 dof
}

TEST_CASE("y values within a cell are uniform (KS at the 1% level)") {
  const auto f = BoundaryFunction::constant(1.0);
  const PointSample s = sample_process(f, ProcessConfig(20000, 1.0, 31));
  const Partition part(10);
  std::vector<double> ys;
  for (const Point& p : s.points) {
    if (part.cell_of(p.x) == 3) ys.push_back(p.y);
  }
  REQUIRE(ys.size() > 500);
  const double dist = ks_vs_cdf(ys, [](double y) { return y; });
  CHECK(dist < 1.62762 / std::sqrt(static_cast<double>(ys.size())));
}

TEST_CASE("poisson sampler hits its mean for small and large rates") {
  Rng rng(2718);
  for (double lambda : {0.5, 5.0, 50.0, 20000.0}) {
    const int reps = 4000;
    double acc = 0.0;
    for (int i = 0; i < reps; ++i) acc += static_cast<double>(rng.poisson(lambda));
    const double se = std::sqrt(lambda / reps);
    CHECK(std::abs(acc / reps - lambda) <= 4.0 * se);
  }
  CHECK(rng.poisson(0.0) == 0);
  CHECK_THROWS_AS((void)rng.poisson(-1.0), std::invalid_argument);
}

}  // TEST_SUITE
