#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frontier/basis.hpp"
#include "frontier/boundary.hpp"
#include "frontier/estimator.hpp"

namespace frontier {

enum class SchedulePreset { normality45, mise, custom };

struct Schedule {
  int k = 0;
  int h = 0;  // always even, >= 2
  // Human-readable records for side conditions that do not hold at this n.
  std::vector<std::string> warnings;
};

// (k_n, h_n) for a given n. Presets follow the published choices
//   normality45: k = n^{4/5} (ln n)^{3/5} (ln ln n)^eps,
//                h = n^{2/5} (ln n)^{-1/5} (ln ln n)^eps,
//   mise:        k = n^{2/3} (ln n)^eps, h = (ln n)^eps,
// with k additionally guarded by k <= n / ln n, the growth bound the
// normality results assume; the guard only binds at small n, where the raw
// formula would leave cells nearly empty, and a warning records when it does.
// h is rounded to the nearest even integer >= 2. Requires n >= 16.
Schedule schedule(std::int64_t n, SchedulePreset preset, double epsilon,
                  std::optional<std::pair<int, int>> custom = std::nullopt);

// Optional pass/fail checks evaluated by run_study and embedded in the report.
struct StudyAssertions {
  bool mise_strictly_decreasing = false;
  std::optional<std::pair<double, double>> mise_slope_range;
  std::optional<double> residual_ks_max;
  std::optional<double> residual_mean_abs_max;
  std::optional<std::pair<double, double>> residual_var_range;
  // Band for mean Z_n as a multiple of k/(nc).
  std::optional<std::pair<double, double>> zn_mean_band;
};

struct StudyConfig {
  std::string name = "study";
  BoundaryFunction f = BoundaryFunction::constant(1.0);
  double c = 1.0;
  std::vector<std::int64_t> n_values;  // strictly increasing
  SchedulePreset preset = SchedulePreset::normality45;
  std::vector<std::pair<int, int>> custom_pairs;  // parallel to n_values when preset == custom
  double epsilon = 0.01;
  int replications = 2;
  std::vector<double> eval_grid;
  std::uint64_t seed = 0;
  BasisFamily family = BasisFamily::trigonometric;
  StudyAssertions assertions;

  void validate() const;  // throws std::invalid_argument on violations
};

struct PointSummary {
  double x = 0.0;
  double f_true = 0.0;
  double fn_approx = 0.0;      // deterministic target f_n(x)
  double mean_raw = 0.0;
  double mean_corrected = 0.0;
  double var_raw = 0.0;
  double var_corrected = 0.0;
  double bias_statistical = 0.0;  // mean_raw - fn_approx
  double bias_systematic = 0.0;   // fn_approx - f_true
  double bias_raw = 0.0;          // sum of the two parts
  double bias_corrected = 0.0;    // mean_corrected - f_true
  std::vector<double> residuals;  // standardized, length = replications
  double residual_mean = 0.0;
  double residual_variance = 0.0;
  double ks = 0.0;  // KS distance of residuals vs standard normal
};

struct KernelBoundPoint {
  double x = 0.0;
  double b1 = 0.0, b2 = 0.0, b3 = 0.0, binf = 0.0;
};

struct NResult {
  std::int64_t n = 0;
  int k = 0, h = 0;
  double nc = 0.0;
  std::vector<std::string> schedule_warnings;
  double zn_mean = 0.0;
  double zn_variance = 0.0;
  // Present when the evaluation grid has >= 64 points.
  std::optional<double> mise_mean;
  std::vector<double> mise_values;  // per replication, same condition
  std::vector<KernelBoundPoint> kernel_bounds;
  std::vector<PointSummary> points;
};

struct AssertionResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  std::string detail;
};

struct StudyReport {
  StudyConfig config;
  std::vector<NResult> results;
  std::vector<AssertionResult> assertions;
  // Execution metadata; not part of the canonical report payload.
  double wall_time_seconds = 0.0;
  int threads_used = 1;

  bool all_assertions_pass() const;
};

// Runs the full Monte Carlo study: for each n, `replications` independent
// runs of sample -> cell extremes -> estimate, aggregated into the report.
// Replication j uses seed cfg.seed + j, so the result is independent of
// execution order; threads = 0 picks the hardware concurrency.
StudyReport run_study(const StudyConfig& cfg, int threads = 1);

// Squared L2 distance between the corrected curve and f, composite midpoint
// rule on the curve's grid. Requires a grid of >= 64 points.
double mise(const EstimateCurve& curve, const BoundaryFunction& f);

// nc (hk)^{-1/2} (value_i - f_x) for each replication value.
std::vector<double> standardized_errors(std::span<const double> corrected_values,
                                        double f_x, double c, std::int64_t n,
                                        int k, int h);

// Sup distance between the empirical CDF of the samples and the standard
// normal CDF. Requires >= 10 samples.
double ks_distance(std::span<const double> samples);

// Least-squares slope of log y against log n. Inputs positive, >= 3 points.
double rate_regression(std::span<const double> n_values,
                       std::span<const double> y_values);

struct KernelBoundSummary {
  std::int64_t n = 0;
  int k = 0, h = 0;
  double max_b1_ratio = 0.0;  // max over grid of B1 / (k ln h)  (B1/k when h < 3)
  double max_b2_dev = 0.0;    // max over grid of |B2 / sqrt(kh) - 1|
};

// Kernel-bound diagnostics along a schedule; emits the ratios the growth
// lemmas control.
std::vector<KernelBoundSummary> verify_kernel_bounds(
    SchedulePreset preset, double epsilon, std::span<const std::int64_t> n_values,
    std::span<const double> grid, BasisFamily family = BasisFamily::trigonometric);
std::vector<KernelBoundSummary> verify_kernel_bounds(
    std::span<const std::pair<int, int>> pairs, std::span<const double> grid,
    BasisFamily family = BasisFamily::trigonometric);

// Midpoint grid {(2j+1)/(2n), j = 0..n-1}.
std::vector<double> midpoint_grid(int n);

}  // namespace frontier
