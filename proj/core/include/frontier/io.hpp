#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "frontier/boundary.hpp"
#include "frontier/estimator.hpp"
#include "frontier/harness.hpp"
#include "frontier/process.hpp"
#include "frontier/sampler.hpp"

namespace frontier {

// Filesystem-level failure (open/write), distinct from validation errors.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest round-tripping decimal representation.
std::string format_double(double v);

// --- boundary serialization ----------------------------------------------
// JSON object {"variant": ..., "params": ...}.
std::string boundary_to_json(const BoundaryFunction& f);
BoundaryFunction boundary_from_json(std::string_view text);

// "constant:level", "sinusoid:base,amplitude,frequency,phase",
// "table:<csv path>", or a path to a JSON file.
BoundaryFunction boundary_from_spec(const std::string& spec);

// Two-column CSV (x,value); lines starting with '#' and a header row are
// skipped.
std::vector<Knot> knots_from_csv(std::istream& in);

// --- CSV artifacts ---------------------------------------------------------
// Every writer emits a '# <command>' echo line followed by a header row.
void write_point_sample_csv(std::ostream& out, const PointSample& s,
                            std::string_view command_echo);
PointSample read_point_sample_csv(std::istream& in);

void write_cell_extremes_csv(std::ostream& out, const CellExtremes& ext,
                             std::string_view command_echo);

// Columns x, f_true (when truth != nullptr), f_hat, and f_tilde unless
// include_corrected is false.
void write_curve_csv(std::ostream& out, const EstimateCurve& curve,
                     const BoundaryFunction* truth,
                     std::string_view command_echo,
                     bool include_corrected = true);

void write_coeffs_csv(std::ostream& out, std::span<const double> coeffs,
                      std::string_view command_echo);

// --- study serialization ---------------------------------------------------
std::string study_config_to_json(const StudyConfig& cfg);
StudyConfig study_config_from_json(std::string_view text);
StudyConfig study_config_from_file(const std::filesystem::path& path);

// include_meta controls the volatile execution block (wall time, threads);
// the canonical payload used for reproducibility comparisons excludes it.
std::string study_report_to_json(const StudyReport& report,
                                 bool include_meta = true);

// Writes report.json plus flat CSVs under out_dir/{study_name}/:
// summary.csv and per-n residuals.csv / kernel_bounds.csv.
void write_study_files(const StudyReport& report,
                       const std::filesystem::path& out_dir,
                       std::string_view command_echo);

}  // namespace frontier
