#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frontier/basis.hpp"
#include "frontier/boundary.hpp"
#include "frontier/estimator.hpp"
#include "frontier/harness.hpp"
#include "frontier/io.hpp"
#include "frontier/polar.hpp"
#include "frontier/sampler.hpp"

namespace fs = std::filesystem;
using namespace frontier;

namespace {

// Relative output paths resolve under FRONTIER_OUT_DIR when it is set.
fs::path resolve_out(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* base = std::getenv("FRONTIER_OUT_DIR")) {
      return fs::path(base) / p;
    }
  }
  return p;
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

BasisFamily parse_family(const std::string& name) {
  if (name == "trig" || name == "trigonometric") return BasisFamily::trigonometric;
  if (name == "haar") return BasisFamily::haar;
  throw CLI::ValidationError("--basis", "must be 'trig' or 'haar'");
}

void check_basis_order(BasisFamily family, int h) {
  if (family == BasisFamily::trigonometric && h % 2 != 0) {
    throw CLI::ValidationError("--h", "must be even with --basis trig");
  }
  if (family == BasisFamily::haar && ((h + 1) & h) != 0) {
    throw CLI::ValidationError("--h", "+1 must be a power of two with --basis haar");
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  return out;
}

struct SampleArgs {
  std::string boundary;
  double nc = 0.0;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_sample(const SampleArgs& a, const std::string& echo) {
  const BoundaryFunction f = boundary_from_spec(a.boundary);
  const std::int64_t n = a.n > 0 ? a.n : std::max<std::int64_t>(1, std::llround(a.nc));
  const ProcessConfig cfg(n, a.nc / static_cast<double>(n), a.seed);
  const PointSample sample = sample_process(f, cfg);
  auto out = open_out(resolve_out(a.out));
  write_point_sample_csv(out, sample, echo);
  std::cout << sample.points.size() << "\n";
  return 0;
}

struct EstimateArgs {
  std::string in;
  int k = 100;
  int h = 2;
  std::string basis = "trig";
  int grid = 101;
  std::string out;
  std::string coeffs_out;
  std::string extremes_out;
  std::string boundary;
  bool no_correction = false;
};

int run_estimate(const EstimateArgs& a, const std::string& echo) {
  const BasisFamily family = parse_family(a.basis);
  check_basis_order(family, a.h);

  auto in = open_in(a.in);
  const PointSample sample = read_point_sample_csv(in);
  const CellExtremes ext = cell_extremes(sample, Partition(a.k));
  const BasisSpec spec(family, a.h);
  const EstimateCurve curve = estimate_curve(ext, spec, midpoint_grid(a.grid));

  std::optional<BoundaryFunction> truth;
  if (!a.boundary.empty()) truth = boundary_from_spec(a.boundary);

  const fs::path out_path = resolve_out(a.out);
  {
    auto out = open_out(out_path);
    write_curve_csv(out, curve, truth ? &*truth : nullptr, echo, !a.no_correction);
  }
  fs::path coeffs_path = a.coeffs_out.empty()
                             ? out_path.parent_path() /
                                   (out_path.stem().string() + "_coeffs.csv")
                             : resolve_out(a.coeffs_out);
  {
    auto out = open_out(coeffs_path);
    write_coeffs_csv(out, curve.coeffs, echo);
  }
  if (!a.extremes_out.empty()) {
    auto out = open_out(resolve_out(a.extremes_out));
    write_cell_extremes_csv(out, ext, echo);
  }
  return 0;
}

struct StudyArgs {
  std::string config;
  std::string out_dir;
  int threads = 1;
  // inline alternative to --config
  std::string boundary;
  double c = 1.0;
  std::string n_values;
  std::string preset = "normality45";
  std::string custom_pairs;
  double epsilon = 0.01;
  int replications = 0;
  int grid = 0;
  std::uint64_t seed = 0;
  std::string name = "study";
};

StudyConfig study_config_from_flags(const StudyArgs& a) {
  StudyConfig cfg;
  cfg.name = a.name;
  cfg.f = boundary_from_spec(a.boundary);
  cfg.c = a.c;
  cfg.n_values = parse_int_list(a.n_values);
  if (a.preset == "normality45") {
    cfg.preset = SchedulePreset::normality45;
  } else if (a.preset == "mise") {
    cfg.preset = SchedulePreset::mise;
  } else if (a.preset == "custom") {
    cfg.preset = SchedulePreset::custom;
    std::stringstream ss(a.custom_pairs);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::size_t colon = item.find(':');
      if (colon == std::string::npos) {
        throw CLI::ValidationError("--custom-pairs", "expected k:h entries");
      }
      cfg.custom_pairs.emplace_back(std::stoi(item.substr(0, colon)),
                                    std::stoi(item.substr(colon + 1)));
    }
  } else {
    throw CLI::ValidationError("--preset", "must be normality45, mise or custom");
  }
  cfg.epsilon = a.epsilon;
  cfg.replications = a.replications;
  cfg.eval_grid = midpoint_grid(a.grid > 0 ? a.grid : 5);
  cfg.seed = a.seed;
  return cfg;
}

int run_study_cmd(const StudyArgs& a, const std::string& echo) {
  const StudyConfig cfg = !a.config.empty()
                              ? study_config_from_file(a.config)
                              : study_config_from_flags(a);
  const StudyReport report = run_study(cfg, a.threads);
  write_study_files(report, resolve_out(a.out_dir), echo);

  for (const NResult& r : report.results) {
    std::cout << "n=" << r.n << " k=" << r.k << " h=" << r.h;
    if (r.mise_mean) std::cout << " mise=" << format_double(*r.mise_mean);
    std::cout << " zn_mean=" << format_double(r.zn_mean) << "\n";
    for (const std::string& w : r.schedule_warnings) {
      std::cerr << "warning: n=" << r.n << ": " << w << "\n";
    }
  }
  bool all_pass = true;
  for (const AssertionResult& as : report.assertions) {
    std::cout << (as.pass ? "[PASS] " : "[FAIL] ") << as.name
              << " value=" << format_double(as.value) << "\n";
    all_pass = all_pass && as.pass;
  }
  return all_pass ? 0 : 2;
}

struct KernelDiagArgs {
  std::string preset;
  std::string n_values;
  double epsilon = 0.01;
  std::string k_list;
  std::string h_list;
  int grid = 101;
  std::string basis = "trig";
  std::string out;
};

int run_kernel_diag(const KernelDiagArgs& a, const std::string& echo) {
  const BasisFamily family = parse_family(a.basis);
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::int64_t> ns;
  if (!a.preset.empty()) {
    if (a.n_values.empty()) {
      throw CLI::ValidationError("--n-values", "required with --preset");
    }
    ns = parse_int_list(a.n_values);
    const SchedulePreset preset = a.preset == "normality45"
                                      ? SchedulePreset::normality45
                                      : SchedulePreset::mise;
    for (std::int64_t n : ns) {
      const Schedule sch = schedule(n, preset, a.epsilon);
      pairs.emplace_back(sch.k, sch.h);
    }
  } else {
    const auto ks = parse_int_list(a.k_list);
    const auto hs = parse_int_list(a.h_list);
    if (ks.empty() || ks.size() != hs.size()) {
      throw CLI::ValidationError("--k", "and --h need equal non-empty lists");
    }
    for (std::size_t i = 0; i < ks.size(); ++i) {
      pairs.emplace_back(static_cast<int>(ks[i]), static_cast<int>(hs[i]));
    }
  }

  std::vector<std::string> warnings;
  for (const auto& [k, h] : pairs) {
    check_basis_order(family, h);
    if (h >= k) {
      warnings.push_back("Lemma 1 hypotheses violated (h >= k) at k=" +
                         std::to_string(k) + " h=" + std::to_string(h));
    }
  }
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";

  const std::vector<double> grid = midpoint_grid(a.grid);
  auto out = open_out(resolve_out(a.out));
  out << "# " << echo << "\n";
  for (const std::string& w : warnings) out << "# warning: " << w << "\n";
  out << "x,j,B_value,k,h,family\n";
  const char* jnames[] = {"1", "2", "3", "inf"};
  const KernelNorm norms[] = {KernelNorm::l1, KernelNorm::l2, KernelNorm::l3,
                              KernelNorm::sup};
  for (const auto& [k, h] : pairs) {
    const BasisSpec spec(family, h);
    for (double x : grid) {
      for (int j = 0; j < 4; ++j) {
        out << format_double(x) << ',' << jnames[j] << ','
            << format_double(kernel_bound(spec, k, x, norms[j])) << ',' << k
            << ',' << h << ',' << (family == BasisFamily::trigonometric ? "trigonometric" : "haar")
            << '\n';
      }
    }
  }
  return 0;
}

struct StarShapeArgs {
  std::string in;
  std::string center;
  int k = 64;
  int h = 4;
  std::string basis = "trig";
  int grid = 181;
  std::string out_prefix;
};

int run_star_shape(const StarShapeArgs& a, const std::string& echo) {
  const BasisFamily family = parse_family(a.basis);
  check_basis_order(family, a.h);

  const std::size_t comma = a.center.find(',');
  if (comma == std::string::npos) {
    throw CLI::ValidationError("--center", "expected u0,v0");
  }
  const PlanarPoint center{std::stod(a.center.substr(0, comma)),
                           std::stod(a.center.substr(comma + 1))};

  auto in = open_in(a.in);
  const PointSample uv = read_point_sample_csv(in);
  std::vector<PlanarPoint> cloud;
  cloud.reserve(uv.points.size());
  for (const Point& p : uv.points) cloud.push_back({p.x, p.y});

  const PointSample polar = polar_transform(cloud, center);
  const CellExtremes ext = cell_extremes(polar, Partition(a.k));

  int empty_cells = 0;
  for (std::int64_t c : ext.count) {
    if (c == 0) ++empty_cells;
  }
  std::string warning;
  if (empty_cells > 0) {
    warning = std::to_string(empty_cells) +
              " empty cells; is the center inside the cloud?";
    std::cerr << "warning: " << warning << "\n";
  }

  const BasisSpec spec(family, a.h);
  const EstimateCurve curve = estimate_curve(ext, spec, midpoint_grid(a.grid));

  const fs::path prefix = resolve_out(a.out_prefix);
  {
    auto out = open_out(fs::path(prefix.string() + "_boundary.csv"));
    out << "# " << echo << "\n";
    if (!warning.empty()) out << "# warning: " << warning << "\n";
    out << "theta,r\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
      out << format_double(2.0 * 3.14159265358979323846 * curve.grid[i]) << ','
          << format_double(curve.corrected[i]) << '\n';
    }
  }
  {
    auto out = open_out(fs::path(prefix.string() + "_polygon.csv"));
    out << "# " << echo << "\n";
    if (!warning.empty()) out << "# warning: " << warning << "\n";
    out << "u,v\n";
    auto emit = [&](std::size_t i) {
      const PlanarPoint p =
          polar_inverse({curve.grid[i], curve.corrected[i]}, center);
      out << format_double(p.u) << ',' << format_double(p.v) << '\n';
    };
    for (std::size_t i = 0; i < curve.grid.size(); ++i) emit(i);
    if (!curve.grid.empty()) emit(0);  // close the polygon
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string echo = join_args(argc, argv);

  CLI::App app{"Support boundary estimation for planar Poisson samples"};
  app.require_subcommand(1);
  // --h is an estimation flag, so help lives on --help only.
  app.set_help_flag("--help", "Print help");

  SampleArgs sample_args;
  auto* cmd_sample = app.add_subcommand("sample", "Draw a point sample from a boundary");
  cmd_sample->set_help_flag("--help", "Print help");
  cmd_sample->add_option("--boundary", sample_args.boundary,
                         "Boundary preset (name:params), JSON path, or table:knots.csv")
      ->required();
  cmd_sample->add_option("--nc", sample_args.nc, "Total intensity nc")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_sample->add_option("--n", sample_args.n, "Number of superposed copies");
  cmd_sample->add_option("--seed", sample_args.seed, "RNG seed");
  cmd_sample->add_option("--out", sample_args.out, "Output CSV path")->required();

  EstimateArgs est_args;
  auto* cmd_estimate = app.add_subcommand("estimate", "Estimate the boundary from a sample CSV");
  cmd_estimate->set_help_flag("--help", "Print help");
  cmd_estimate->add_option("--in", est_args.in, "Input points CSV")->required();
  cmd_estimate->add_option("--k", est_args.k, "Number of cells")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_estimate->add_option("--h", est_args.h, "Basis truncation order")
      ->required()
      ->check(CLI::NonNegativeNumber);
  cmd_estimate->add_option("--basis", est_args.basis, "Basis family: trig or haar");
  cmd_estimate->add_option("--grid", est_args.grid, "Evaluation grid size")
      ->check(CLI::PositiveNumber);
  cmd_estimate->add_option("--out", est_args.out, "Output curve CSV")->required();
  cmd_estimate->add_option("--coeffs-out", est_args.coeffs_out, "Coefficient CSV path");
  cmd_estimate->add_option("--extremes-out", est_args.extremes_out,
                           "Optional per-cell extremes CSV path");
  cmd_estimate->add_option("--boundary", est_args.boundary,
                           "Optional true boundary for an f_true column");
  cmd_estimate->add_flag("--no-correction", est_args.no_correction,
                         "Skip the minima-based correction column");

  StudyArgs study_args;
  auto* cmd_study = app.add_subcommand("study", "Run a Monte Carlo study");
  cmd_study->set_help_flag("--help", "Print help");
  cmd_study->add_option("--config", study_args.config, "Study config JSON path");
  cmd_study->add_option("--out-dir", study_args.out_dir, "Report output directory")
      ->required();
  cmd_study->add_option("--threads", study_args.threads,
                        "Worker thread cap (0 = hardware)");
  cmd_study->add_option("--boundary", study_args.boundary, "Boundary spec (inline mode)");
  cmd_study->add_option("--c", study_args.c, "Per-copy intensity c");
  cmd_study->add_option("--n-values", study_args.n_values, "Comma list of n values");
  cmd_study->add_option("--preset", study_args.preset, "normality45, mise or custom");
  cmd_study->add_option("--custom-pairs", study_args.custom_pairs,
                        "Comma list of k:h for --preset custom");
  cmd_study->add_option("--epsilon", study_args.epsilon, "Schedule epsilon");
  cmd_study->add_option("--replications", study_args.replications, "Replications per n");
  cmd_study->add_option("--grid", study_args.grid, "Midpoint grid size");
  cmd_study->add_option("--seed", study_args.seed, "Base RNG seed");
  cmd_study->add_option("--name", study_args.name, "Study name (output subdirectory)");

  KernelDiagArgs diag_args;
  auto* cmd_diag = app.add_subcommand("kernel-diag", "Kernel bound diagnostics");
  cmd_diag->set_help_flag("--help", "Print help");
  cmd_diag->add_option("--preset", diag_args.preset, "normality45 or mise");
  cmd_diag->add_option("--n-values", diag_args.n_values, "Comma list of n values");
  cmd_diag->add_option("--epsilon", diag_args.epsilon, "Schedule epsilon");
  cmd_diag->add_option("--k", diag_args.k_list, "Comma list of k values");
  cmd_diag->add_option("--h", diag_args.h_list, "Comma list of h values");
  cmd_diag->add_option("--grid", diag_args.grid, "Evaluation grid size");
  cmd_diag->add_option("--basis", diag_args.basis, "Basis family");
  cmd_diag->add_option("--out", diag_args.out, "Output CSV path")->required();

  StarShapeArgs star_args;
  auto* cmd_star = app.add_subcommand("star-shape", "Estimate a star-shaped boundary from a (u,v) cloud");
  cmd_star->set_help_flag("--help", "Print help");
  cmd_star->add_option("--in", star_args.in, "Input (u,v) CSV")->required();
  cmd_star->add_option("--center", star_args.center, "Kernel point u0,v0")->required();
  cmd_star->add_option("--k", star_args.k, "Number of angular cells")
      ->check(CLI::PositiveNumber);
  cmd_star->add_option("--h", star_args.h, "Basis truncation order")
      ->check(CLI::NonNegativeNumber);
  cmd_star->add_option("--basis", star_args.basis, "Basis family");
  cmd_star->add_option("--grid", star_args.grid, "Angular grid size");
  cmd_star->add_option("--out", star_args.out_prefix, "Output path prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*cmd_sample) return run_sample(sample_args, echo);
    if (*cmd_estimate) return run_estimate(est_args, echo);
    if (*cmd_study) return run_study_cmd(study_args, echo);
    if (*cmd_diag) return run_kernel_diag(diag_args, echo);
    if (*cmd_star) return run_star_shape(star_args, echo);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
