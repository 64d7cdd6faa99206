#include "frontier/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "frontier/stats.hpp"

namespace frontier {

namespace {

int nearest_even_at_least_two(double raw) {
  const long long half = std::llround(raw / 2.0);
  return static_cast<int>(std::max(1ll, half) * 2);
}

void append_if(std::vector<std::string>& warnings, bool condition,
               const std::string& message) {
  if (condition) warnings.push_back(message);
}

}  // namespace

Schedule schedule(std::int64_t n, SchedulePreset preset, double epsilon,
                  std::optional<std::pair<int, int>> custom) {
  if (n < 16) throw std::domain_error("schedule: n must be >= 16");

  Schedule out;
  if (preset == SchedulePreset::custom) {
    if (!custom) {
      throw std::invalid_argument("schedule: custom preset requires a (k,h) pair");
    }
    out.k = custom->first;
    out.h = custom->second;
    if (out.k < 1) throw std::invalid_argument("schedule: custom k must be >= 1");
    if (out.h < 0 || out.h % 2 != 0) {
      throw std::invalid_argument("schedule: custom h must be even and >= 0");
    }
    append_if(out.warnings, out.h >= out.k,
              "Lemma 1 hypotheses violated (h >= k)");
    append_if(out.warnings,
              out.h >= 2 && out.h * std::log(out.h) >= out.k,
              "h ln h = o(k) does not hold at this n");
    return out;
  }

  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("schedule: epsilon must be > 0");
  }

  const double nd = static_cast<double>(n);
  const double ln = std::log(nd);
  const double lnln = std::log(ln);
  double k_raw = 0.0;
  double h_raw = 0.0;
  if (preset == SchedulePreset::normality45) {
    k_raw = std::pow(nd, 0.8) * std::pow(ln, 0.6) * std::pow(lnln, epsilon);
    h_raw = std::pow(nd, 0.4) * std::pow(ln, -0.2) * std::pow(lnln, epsilon);
  } else {
    k_raw = std::pow(nd, 2.0 / 3.0) * std::pow(ln, epsilon);
    h_raw = std::pow(ln, epsilon);
  }

  // Finite-n guard: the normality corollaries assume k_n = o(n / ln n); the
  // raw formula crosses that bound for every desk-scale n and would leave the
  // cells nearly empty, so saturate it and record the fact.
  const double cap = nd / ln;
  const bool capped = k_raw > cap;
  if (capped) k_raw = cap;

  out.k = static_cast<int>(std::llround(k_raw));
  out.h = nearest_even_at_least_two(h_raw);
  append_if(out.warnings, capped,
            "k formula exceeds n/ln n at this n; guarded to k = n/ln n");

  const double kd = out.k;
  const double hd = out.h;
  if (preset == SchedulePreset::normality45) {
    append_if(out.warnings, hd * std::log(hd) >= kd,
              "h ln h = o(k) does not hold at this n");
    append_if(out.warnings, kd * ln >= nd,
              "k = o(n / ln n) saturated at this n");
    append_if(out.warnings, nd >= std::pow(hd, 1.5) * std::sqrt(kd),
              "n = o(h^{3/2} k^{1/2}) does not hold at this n");
    append_if(out.warnings, nd * std::sqrt(hd) * std::log(hd) >= std::pow(kd, 1.5),
              "n h^{1/2} ln h = o(k^{3/2}) does not hold at this n");
  } else {
    append_if(out.warnings, hd * std::sqrt(std::log(hd)) >= kd,
              "h (ln h)^{1/2} = o(k) does not hold at this n");
    append_if(out.warnings, kd * std::sqrt(std::log(hd)) >= nd,
              "k (ln h)^{1/2} = o(n) does not hold at this n");
  }
  return out;
}

void StudyConfig::validate() const {
  if (name.empty() ||
      name.find_first_not_of(
          "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_.-") !=
          std::string::npos) {
    throw std::invalid_argument(
        "StudyConfig: name must be non-empty and use [A-Za-z0-9_.-] only");
  }
  if (replications < 2) {
    throw std::invalid_argument("StudyConfig: replications must be >= 2");
  }
  if (n_values.empty()) {
    throw std::invalid_argument("StudyConfig: n_values must be non-empty");
  }
  for (std::size_t i = 1; i < n_values.size(); ++i) {
    if (n_values[i] <= n_values[i - 1]) {
      throw std::invalid_argument("StudyConfig: n_values must be strictly increasing");
    }
  }
  if (!(c > 0.0)) throw std::invalid_argument("StudyConfig: c must be > 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("StudyConfig: epsilon must be > 0");
  if (eval_grid.empty()) {
    throw std::invalid_argument("StudyConfig: eval_grid must be non-empty");
  }
  for (std::size_t i = 0; i < eval_grid.size(); ++i) {
    if (!(eval_grid[i] >= 0.0 && eval_grid[i] <= 1.0)) {
      throw std::invalid_argument("StudyConfig: eval_grid points must lie in [0, 1]");
    }
    if (i > 0 && !(eval_grid[i] > eval_grid[i - 1])) {
      throw std::invalid_argument("StudyConfig: eval_grid must be strictly increasing");
    }
  }
  if (preset == SchedulePreset::custom) {
    if (custom_pairs.size() != n_values.size()) {
      throw std::invalid_argument(
          "StudyConfig: custom preset requires one (k,h) pair per n value");
    }
    for (const auto& [k, h] : custom_pairs) {
      if (k < 1) throw std::invalid_argument("StudyConfig: custom k must be >= 1");
      if (h < 0 || h % 2 != 0) {
        throw std::invalid_argument("StudyConfig: custom h must be even and >= 0");
      }
    }
  }
}

bool StudyReport::all_assertions_pass() const {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const AssertionResult& a) { return a.pass; });
}

namespace {

void evaluate_assertions(StudyReport& report) {
  const StudyAssertions& want = report.config.assertions;
  auto& out = report.assertions;

  if (want.mise_strictly_decreasing || want.mise_slope_range) {
    std::vector<double> ns;
    std::vector<double> mises;
    bool all_present = true;
    for (const NResult& r : report.results) {
      if (!r.mise_mean) {
        all_present = false;
        break;
      }
      ns.push_back(static_cast<double>(r.n));
      mises.push_back(*r.mise_mean);
    }
    if (want.mise_strictly_decreasing) {
      bool decreasing = all_present && mises.size() >= 2;
      for (std::size_t i = 1; decreasing && i < mises.size(); ++i) {
        decreasing = mises[i] < mises[i - 1];
      }
      std::ostringstream detail;
      for (double v : mises) detail << v << " ";
      out.push_back({"mise_strictly_decreasing", decreasing,
                     mises.empty() ? 0.0 : mises.back(), detail.str()});
    }
    if (want.mise_slope_range) {
      double slope = std::numeric_limits<double>::quiet_NaN();
      bool pass = false;
      if (all_present && ns.size() >= 3) {
        slope = rate_regression(ns, mises);
        pass = slope >= want.mise_slope_range->first &&
               slope <= want.mise_slope_range->second;
      }
      std::ostringstream detail;
      detail << "range [" << want.mise_slope_range->first << ", "
             << want.mise_slope_range->second << "]";
      out.push_back({"mise_slope_range", pass, slope, detail.str()});
    }
  }

  if (want.residual_ks_max) {
    double worst = 0.0;
    bool valid = true;
    std::ostringstream detail;
    for (const NResult& r : report.results) {
      for (const PointSummary& p : r.points) {
        if (std::isnan(p.ks)) valid = false;
        worst = std::max(worst, p.ks);
        detail << "n=" << r.n << " x=" << p.x << " ks=" << p.ks << "; ";
      }
    }
    out.push_back({"residual_ks_max", valid && worst <= *want.residual_ks_max,
                   worst, detail.str()});
  }
  if (want.residual_mean_abs_max) {
    double worst = 0.0;
    for (const NResult& r : report.results) {
      for (const PointSummary& p : r.points) {
        worst = std::max(worst, std::abs(p.residual_mean));
      }
    }
    out.push_back({"residual_mean_abs_max", worst <= *want.residual_mean_abs_max,
                   worst, ""});
  }
  if (want.residual_var_range) {
    bool pass = true;
    double worst = 1.0;
    for (const NResult& r : report.results) {
      for (const PointSummary& p : r.points) {
        const double v = p.residual_variance;
        if (v < want.residual_var_range->first ||
            v > want.residual_var_range->second) {
          pass = false;
        }
        if (std::abs(v - 1.0) > std::abs(worst - 1.0)) worst = v;
      }
    }
    out.push_back({"residual_var_range", pass, worst, ""});
  }
  if (want.zn_mean_band) {
    bool pass = true;
    double worst_ratio = 1.0;
    for (const NResult& r : report.results) {
      const double reference = r.k / r.nc;
      const double ratio = r.zn_mean / reference;
      if (ratio < want.zn_mean_band->first || ratio > want.zn_mean_band->second) {
        pass = false;
      }
      if (std::abs(ratio - 1.0) > std::abs(worst_ratio - 1.0)) worst_ratio = ratio;
    }
    out.push_back({"zn_mean_band", pass, worst_ratio, ""});
  }
}

}  // namespace

StudyReport run_study(const StudyConfig& cfg, int threads) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  StudyReport report;
  report.config = cfg;
  int worker_count = threads == 0
                         ? static_cast<int>(std::thread::hardware_concurrency())
                         : threads;
  worker_count = std::max(1, std::min(worker_count, cfg.replications));
  report.threads_used = worker_count;

  for (std::size_t ni = 0; ni < cfg.n_values.size(); ++ni) {
    const std::int64_t n = cfg.n_values[ni];
    const Schedule sch =
        schedule(n, cfg.preset, cfg.epsilon,
                 cfg.preset == SchedulePreset::custom
                     ? std::optional(cfg.custom_pairs[ni])
                     : std::nullopt);
    const BasisSpec spec(cfg.family, sch.h);
    const Partition part(sch.k);
    const double nc = static_cast<double>(n) * cfg.c;

    NResult res;
    res.n = n;
    res.k = sch.k;
    res.h = sch.h;
    res.nc = nc;
    res.schedule_warnings = sch.warnings;

    const int reps = cfg.replications;
    const std::size_t grid_size = cfg.eval_grid.size();
    const bool with_mise = grid_size >= 64;

    std::vector<double> raw_mat(static_cast<std::size_t>(reps) * grid_size);
    std::vector<double> cor_mat(static_cast<std::size_t>(reps) * grid_size);
    std::vector<double> zn(static_cast<std::size_t>(reps));
    std::vector<double> mise_vals(with_mise ? static_cast<std::size_t>(reps) : 0);

    // Replication j is fully determined by seed + j; workers only write their
    // own slots and all aggregation happens afterwards in index order, so the
    // report does not depend on the thread count.
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        const int j = next.fetch_add(1);
        if (j >= reps) break;
        const ProcessConfig pc(n, cfg.c, cfg.seed + static_cast<std::uint64_t>(j));
        const PointSample sample = sample_process(cfg.f, pc);
        const CellExtremes ext = cell_extremes(sample, part);
        const EstimateCurve curve = estimate_curve(ext, spec, cfg.eval_grid);
        for (std::size_t g = 0; g < grid_size; ++g) {
          raw_mat[static_cast<std::size_t>(j) * grid_size + g] = curve.raw[g];
          cor_mat[static_cast<std::size_t>(j) * grid_size + g] = curve.corrected[g];
        }
        zn[static_cast<std::size_t>(j)] = curve.correction;
        if (with_mise) {
          mise_vals[static_cast<std::size_t>(j)] = mise(curve, cfg.f);
        }
      }
    };
    if (worker_count == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(worker_count));
      for (int t = 0; t < worker_count; ++t) pool.emplace_back(worker);
      for (std::thread& t : pool) t.join();
    }

    res.zn_mean = mean(zn);
    res.zn_variance = sample_variance(zn);
    if (with_mise) {
      res.mise_values = mise_vals;
      res.mise_mean = mean(mise_vals);
    }

    for (double x : cfg.eval_grid) {
      res.kernel_bounds.push_back({x, kernel_bound(spec, sch.k, x, KernelNorm::l1),
                                   kernel_bound(spec, sch.k, x, KernelNorm::l2),
                                   kernel_bound(spec, sch.k, x, KernelNorm::l3),
                                   kernel_bound(spec, sch.k, x, KernelNorm::sup)});
    }

    const std::vector<double> measures = cfg.f.cell_measures(part, 1e-10);
    for (std::size_t g = 0; g < grid_size; ++g) {
      PointSummary ps;
      ps.x = cfg.eval_grid[g];
      ps.f_true = cfg.f.evaluate(ps.x);
      ps.fn_approx = approx_fn(spec, measures, ps.x);

      std::vector<double> raw_col(static_cast<std::size_t>(reps));
      std::vector<double> cor_col(static_cast<std::size_t>(reps));
      for (int j = 0; j < reps; ++j) {
        raw_col[j] = raw_mat[static_cast<std::size_t>(j) * grid_size + g];
        cor_col[j] = cor_mat[static_cast<std::size_t>(j) * grid_size + g];
      }
      ps.mean_raw = mean(raw_col);
      ps.mean_corrected = mean(cor_col);
      ps.var_raw = sample_variance(raw_col);
      ps.var_corrected = sample_variance(cor_col);
      ps.bias_statistical = ps.mean_raw - ps.fn_approx;
      ps.bias_systematic = ps.fn_approx - ps.f_true;
      ps.bias_raw = ps.bias_statistical + ps.bias_systematic;
      ps.bias_corrected = ps.mean_corrected - ps.f_true;
      ps.residuals =
          standardized_errors(cor_col, ps.f_true, cfg.c, n, sch.k, sch.h);
      ps.residual_mean = mean(ps.residuals);
      ps.residual_variance = sample_variance(ps.residuals);
      ps.ks = ps.residuals.size() >= 10
                  ? ks_distance(ps.residuals)
                  : std::numeric_limits<double>::quiet_NaN();
      res.points.push_back(std::move(ps));
    }
    report.results.push_back(std::move(res));
  }

  evaluate_assertions(report);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

double mise(const EstimateCurve& curve, const BoundaryFunction& f) {
  const std::vector<double>& grid = curve.grid;
  if (grid.size() < 64) {
    throw std::domain_error("mise: grid must have >= 64 points");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (j > 0 && !(grid[j] > grid[j - 1])) {
      throw std::domain_error("mise: grid must be strictly increasing");
    }
    const double lo = j == 0 ? 0.0 : 0.5 * (grid[j - 1] + grid[j]);
    const double hi = j + 1 == grid.size() ? 1.0 : 0.5 * (grid[j] + grid[j + 1]);
    const double diff = curve.corrected[j] - f.evaluate(grid[j]);
    acc += diff * diff * (hi - lo);
  }
  return acc;
}

std::vector<double> standardized_errors(std::span<const double> corrected_values,
                                        double f_x, double c, std::int64_t n,
                                        int k, int h) {
  const double factor = static_cast<double>(n) * c /
                        std::sqrt(static_cast<double>(h) * static_cast<double>(k));
  std::vector<double> out;
  out.reserve(corrected_values.size());
  for (double v : corrected_values) out.push_back(factor * (v - f_x));
  return out;
}

double ks_distance(std::span<const double> samples) {
  if (samples.size() < 10) {
    throw std::domain_error("ks_distance: need at least 10 samples");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = normal_cdf(sorted[i]);
    dist = std::max({dist, (i + 1) / n - cdf, cdf - i / n});
  }
  return dist;
}

double rate_regression(std::span<const double> n_values,
                       std::span<const double> y_values) {
  if (n_values.size() != y_values.size() || n_values.size() < 3) {
    throw std::invalid_argument("rate_regression: need equal lengths >= 3");
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (!(n_values[i] > 0.0) || !(y_values[i] > 0.0)) {
      throw std::invalid_argument("rate_regression: inputs must be positive");
    }
    lx.push_back(std::log(n_values[i]));
    ly.push_back(std::log(y_values[i]));
  }
  const double mx = mean(lx);
  const double my = mean(ly);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  return sxy / sxx;
}

namespace {

std::vector<KernelBoundSummary> kernel_bound_table(
    std::span<const std::int64_t> n_values, std::span<const std::pair<int, int>> pairs,
    std::span<const double> grid, BasisFamily family) {
  std::vector<KernelBoundSummary> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [k, h] = pairs[i];
    const BasisSpec spec(family, h);
    KernelBoundSummary row;
    row.n = i < n_values.size() ? n_values[i] : 0;
    row.k = k;
    row.h = h;
    const double divisor = h >= 2 ? std::log(static_cast<double>(h)) : 1.0;
    for (double x : grid) {
      const double b1 = kernel_bound(spec, k, x, KernelNorm::l1);
      const double b2 = kernel_bound(spec, k, x, KernelNorm::l2);
      row.max_b1_ratio = std::max(row.max_b1_ratio, b1 / (k * divisor));
      row.max_b2_dev = std::max(
          row.max_b2_dev,
          std::abs(b2 / std::sqrt(static_cast<double>(k) * h) - 1.0));
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace

std::vector<KernelBoundSummary> verify_kernel_bounds(
    SchedulePreset preset, double epsilon, std::span<const std::int64_t> n_values,
    std::span<const double> grid, BasisFamily family) {
  std::vector<std::pair<int, int>> pairs;
  for (std::int64_t n : n_values) {
    const Schedule sch = schedule(n, preset, epsilon);
    pairs.emplace_back(sch.k, sch.h);
  }
  return kernel_bound_table(n_values, pairs, grid, family);
}

std::vector<KernelBoundSummary> verify_kernel_bounds(
    std::span<const std::pair<int, int>> pairs, std::span<const double> grid,
    BasisFamily family) {
  return kernel_bound_table({}, pairs, grid, family);
}

std::vector<double> midpoint_grid(int n) {
  if (n < 1) throw std::invalid_argument("midpoint_grid: n must be >= 1");
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) grid[j] = (2.0 * j + 1.0) / (2.0 * n);
  return grid;
}

}  // namespace frontier
