#include "frontier/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace frontier {

using nlohmann::json;

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace {

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{}) {
    throw std::invalid_argument("could not parse number: '" + std::string(text) + "'");
  }
  return value;
}

bool looks_numeric(std::string_view field) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  return std::from_chars(first, last, value).ec == std::errc{};
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

// Rows of a two-column CSV; '#' comment lines and a leading header row are
// skipped.
std::vector<std::array<double, 2>> read_two_column_csv(std::istream& in) {
  std::vector<std::array<double, 2>> rows;
  std::string line;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_fields(line);
    if (fields.size() < 2) {
      throw std::invalid_argument("CSV row needs two columns: '" + line + "'");
    }
    if (first_content_line && !looks_numeric(fields[0])) {
      first_content_line = false;
      continue;  // header row
    }
    first_content_line = false;
    rows.push_back({parse_double(fields[0]), parse_double(fields[1])});
  }
  return rows;
}

std::string preset_name(SchedulePreset p) {
  switch (p) {
    case SchedulePreset::normality45: return "normality45";
    case SchedulePreset::mise: return "mise";
    case SchedulePreset::custom: return "custom";
  }
  return "custom";
}

SchedulePreset preset_from_name(const std::string& name) {
  if (name == "normality45") return SchedulePreset::normality45;
  if (name == "mise") return SchedulePreset::mise;
  if (name == "custom") return SchedulePreset::custom;
  throw std::invalid_argument("unknown schedule preset: " + name);
}

std::string family_name(BasisFamily f) {
  return f == BasisFamily::trigonometric ? "trigonometric" : "haar";
}

BasisFamily family_from_name(const std::string& name) {
  if (name == "trigonometric" || name == "trig") return BasisFamily::trigonometric;
  if (name == "haar") return BasisFamily::haar;
  throw std::invalid_argument("unknown basis family: " + name);
}

json boundary_json(const BoundaryFunction& f) {
  json params;
  switch (f.variant()) {
    case BoundaryFunction::Variant::constant:
      params["level"] = f.params()[0];
      break;
    case BoundaryFunction::Variant::sinusoid:
      params["base"] = f.params()[0];
      params["amplitude"] = f.params()[1];
      params["frequency"] = static_cast<int>(f.params()[2]);
      params["phase"] = f.params()[3];
      break;
    case BoundaryFunction::Variant::table: {
      json knots = json::array();
      for (const Knot& kn : f.knots()) {
        knots.push_back(json::array({kn.x, kn.value}));
      }
      params["knots"] = std::move(knots);
      break;
    }
  }
  json out;
  out["variant"] = f.variant() == BoundaryFunction::Variant::constant ? "constant"
                   : f.variant() == BoundaryFunction::Variant::sinusoid
                       ? "sinusoid"
                       : "table";
  out["params"] = std::move(params);
  return out;
}

BoundaryFunction boundary_from(const json& j) {
  const std::string variant = j.at("variant").get<std::string>();
  const json& params = j.at("params");
  if (variant == "constant") {
    return BoundaryFunction::constant(params.at("level").get<double>());
  }
  if (variant == "sinusoid") {
    return BoundaryFunction::sinusoid(
        params.at("base").get<double>(), params.at("amplitude").get<double>(),
        params.at("frequency").get<int>(), params.at("phase").get<double>());
  }
  if (variant == "table") {
    std::vector<Knot> knots;
    for (const json& row : params.at("knots")) {
      knots.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
    }
    return BoundaryFunction::table(std::move(knots));
  }
  throw std::invalid_argument("unknown boundary variant: " + variant);
}

}  // namespace

std::string boundary_to_json(const BoundaryFunction& f) {
  return boundary_json(f).dump();
}

BoundaryFunction boundary_from_json(std::string_view text) {
  try {
    return boundary_from(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("boundary JSON: ") + e.what());
  }
}

BoundaryFunction boundary_from_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  if (head == "constant" || head == "sinusoid" || head == "table") {
    if (colon == std::string::npos || colon + 1 == spec.size()) {
      throw std::invalid_argument("boundary preset needs parameters: " + spec);
    }
    const std::string rest = spec.substr(colon + 1);
    if (head == "table") {
      std::ifstream in(rest);
      if (!in) throw IoError("cannot open knot CSV: " + rest);
      return BoundaryFunction::table(knots_from_csv(in));
    }
    std::vector<double> values;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(parse_double(item));
    if (head == "constant") {
      if (values.size() != 1) {
        throw std::invalid_argument("constant preset takes 1 parameter");
      }
      return BoundaryFunction::constant(values[0]);
    }
    if (values.size() != 4) {
      throw std::invalid_argument(
          "sinusoid preset takes base,amplitude,frequency,phase");
    }
    return BoundaryFunction::sinusoid(values[0], values[1],
                                      static_cast<int>(std::llround(values[2])),
                                      values[3]);
  }
  // Otherwise a path to a JSON file.
  std::ifstream in(spec);
  if (!in) throw IoError("cannot open boundary JSON: " + spec);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return boundary_from_json(buffer.str());
}

std::vector<Knot> knots_from_csv(std::istream& in) {
  std::vector<Knot> knots;
  for (const auto& row : read_two_column_csv(in)) {
    knots.push_back({row[0], row[1]});
  }
  return knots;
}

void write_point_sample_csv(std::ostream& out, const PointSample& s,
                            std::string_view command_echo) {
  out << "# " << command_echo << "\n";
  out << "x,y\n";
  for (const Point& p : s.points) {
    out << format_double(p.x) << ',' << format_double(p.y) << '\n';
  }
}

PointSample read_point_sample_csv(std::istream& in) {
  PointSample s;
  for (const auto& row : read_two_column_csv(in)) {
    s.points.push_back({row[0], row[1]});
  }
  return s;
}

void write_cell_extremes_csv(std::ostream& out, const CellExtremes& ext,
                             std::string_view command_echo) {
  out << "# " << command_echo << "\n";
  out << "r,x_r,count,x_max,y_min\n";
  for (int r = 0; r < ext.k; ++r) {
    out << (r + 1) << ',' << format_double((2.0 * r + 1.0) / (2.0 * ext.k))
        << ',' << ext.count[r] << ',' << format_double(ext.x_max[r]) << ','
        << format_double(ext.y_min[r]) << '\n';
  }
}

void write_curve_csv(std::ostream& out, const EstimateCurve& curve,
                     const BoundaryFunction* truth,
                     std::string_view command_echo, bool include_corrected) {
  out << "# " << command_echo << "\n";
  out << "x";
  if (truth != nullptr) out << ",f_true";
  out << ",f_hat";
  if (include_corrected) out << ",f_tilde";
  out << "\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << format_double(curve.grid[i]);
    if (truth != nullptr) out << ',' << format_double(truth->evaluate(curve.grid[i]));
    out << ',' << format_double(curve.raw[i]);
    if (include_corrected) out << ',' << format_double(curve.corrected[i]);
    out << '\n';
  }
}

void write_coeffs_csv(std::ostream& out, std::span<const double> coeffs,
                      std::string_view command_echo) {
  out << "# " << command_echo << "\n";
  out << "i,a_hat\n";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    out << i << ',' << format_double(coeffs[i]) << '\n';
  }
}

namespace {

json assertions_json(const StudyAssertions& a) {
  json out = json::object();
  if (a.mise_strictly_decreasing) out["mise_strictly_decreasing"] = true;
  if (a.mise_slope_range) {
    out["mise_slope_range"] =
        json::array({a.mise_slope_range->first, a.mise_slope_range->second});
  }
  if (a.residual_ks_max) out["residual_ks_max"] = *a.residual_ks_max;
  if (a.residual_mean_abs_max) {
    out["residual_mean_abs_max"] = *a.residual_mean_abs_max;
  }
  if (a.residual_var_range) {
    out["residual_var_range"] =
        json::array({a.residual_var_range->first, a.residual_var_range->second});
  }
  if (a.zn_mean_band) {
    out["zn_mean_band"] = json::array({a.zn_mean_band->first, a.zn_mean_band->second});
  }
  return out;
}

StudyAssertions assertions_from(const json& j) {
  StudyAssertions a;
  if (j.contains("mise_strictly_decreasing")) {
    a.mise_strictly_decreasing = j["mise_strictly_decreasing"].get<bool>();
  }
  if (j.contains("mise_slope_range")) {
    a.mise_slope_range = {j["mise_slope_range"].at(0).get<double>(),
                          j["mise_slope_range"].at(1).get<double>()};
  }
  if (j.contains("residual_ks_max")) {
    a.residual_ks_max = j["residual_ks_max"].get<double>();
  }
  if (j.contains("residual_mean_abs_max")) {
    a.residual_mean_abs_max = j["residual_mean_abs_max"].get<double>();
  }
  if (j.contains("residual_var_range")) {
    a.residual_var_range = {j["residual_var_range"].at(0).get<double>(),
                            j["residual_var_range"].at(1).get<double>()};
  }
  if (j.contains("zn_mean_band")) {
    a.zn_mean_band = {j["zn_mean_band"].at(0).get<double>(),
                      j["zn_mean_band"].at(1).get<double>()};
  }
  return a;
}

json config_json(const StudyConfig& cfg) {
  json out;
  out["name"] = cfg.name;
  out["boundary"] = boundary_json(cfg.f);
  out["c"] = cfg.c;
  out["n_values"] = cfg.n_values;
  out["schedule"] = preset_name(cfg.preset);
  if (cfg.preset == SchedulePreset::custom) {
    json pairs = json::array();
    for (const auto& [k, h] : cfg.custom_pairs) {
      pairs.push_back(json::array({k, h}));
    }
    out["custom_pairs"] = std::move(pairs);
  }
  out["epsilon"] = cfg.epsilon;
  out["replications"] = cfg.replications;
  out["eval_grid"] = cfg.eval_grid;
  out["seed"] = cfg.seed;
  out["basis"] = family_name(cfg.family);
  const json asserts = assertions_json(cfg.assertions);
  if (!asserts.empty()) out["assert"] = asserts;
  return out;
}

}  // namespace

std::string study_config_to_json(const StudyConfig& cfg) {
  return config_json(cfg).dump(2);
}

StudyConfig study_config_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    StudyConfig cfg;
    if (j.contains("name")) cfg.name = j["name"].get<std::string>();
    cfg.f = boundary_from(j.at("boundary"));
    if (j.contains("c")) cfg.c = j["c"].get<double>();
    cfg.n_values = j.at("n_values").get<std::vector<std::int64_t>>();
    if (j.contains("schedule")) {
      cfg.preset = preset_from_name(j["schedule"].get<std::string>());
    }
    if (j.contains("custom_pairs")) {
      for (const json& row : j["custom_pairs"]) {
        cfg.custom_pairs.emplace_back(row.at(0).get<int>(), row.at(1).get<int>());
      }
    }
    if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
    cfg.replications = j.at("replications").get<int>();
    if (j.contains("eval_grid")) {
      if (j["eval_grid"].is_number_integer()) {
        cfg.eval_grid = midpoint_grid(j["eval_grid"].get<int>());
      } else {
        cfg.eval_grid = j["eval_grid"].get<std::vector<double>>();
      }
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("basis")) {
      cfg.family = family_from_name(j["basis"].get<std::string>());
    }
    if (j.contains("assert")) cfg.assertions = assertions_from(j["assert"]);
    return cfg;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("study config JSON: ") + e.what());
  }
}

StudyConfig study_config_from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open study config: " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return study_config_from_json(buffer.str());
}

namespace {

json report_json(const StudyReport& report, bool include_meta) {
  json out;
  out["config"] = config_json(report.config);
  json results = json::array();
  for (const NResult& r : report.results) {
    json jr;
    jr["n"] = r.n;
    jr["k"] = r.k;
    jr["h"] = r.h;
    jr["nc"] = r.nc;
    jr["schedule_warnings"] = r.schedule_warnings;
    jr["zn_mean"] = r.zn_mean;
    jr["zn_variance"] = r.zn_variance;
    if (r.mise_mean) {
      jr["mise_mean"] = *r.mise_mean;
      jr["mise_values"] = r.mise_values;
    }
    json bounds = json::array();
    for (const KernelBoundPoint& b : r.kernel_bounds) {
      bounds.push_back({{"x", b.x}, {"b1", b.b1}, {"b2", b.b2}, {"b3", b.b3},
                        {"binf", b.binf}});
    }
    jr["kernel_bounds"] = std::move(bounds);
    json points = json::array();
    for (const PointSummary& p : r.points) {
      json jp;
      jp["x"] = p.x;
      jp["f_true"] = p.f_true;
      jp["fn_approx"] = p.fn_approx;
      jp["mean_raw"] = p.mean_raw;
      jp["mean_corrected"] = p.mean_corrected;
      jp["var_raw"] = p.var_raw;
      jp["var_corrected"] = p.var_corrected;
      jp["bias_statistical"] = p.bias_statistical;
      jp["bias_systematic"] = p.bias_systematic;
      jp["bias_raw"] = p.bias_raw;
      jp["bias_corrected"] = p.bias_corrected;
      jp["residual_mean"] = p.residual_mean;
      jp["residual_variance"] = p.residual_variance;
      jp["ks"] = p.ks;  // NaN serializes as null
      jp["residuals"] = p.residuals;
      points.push_back(std::move(jp));
    }
    jr["points"] = std::move(points);
    results.push_back(std::move(jr));
  }
  out["results"] = std::move(results);
  json asserts = json::array();
  for (const AssertionResult& a : report.assertions) {
    asserts.push_back({{"name", a.name}, {"pass", a.pass}, {"value", a.value},
                       {"detail", a.detail}});
  }
  out["assertions"] = std::move(asserts);
  if (include_meta) {
    out["meta"] = {{"wall_time_seconds", report.wall_time_seconds},
                   {"threads", report.threads_used}};
  }
  return out;
}

}  // namespace

std::string study_report_to_json(const StudyReport& report, bool include_meta) {
  return report_json(report, include_meta).dump(2);
}

void write_study_files(const StudyReport& report,
                       const std::filesystem::path& out_dir,
                       std::string_view command_echo) {
  namespace fs = std::filesystem;
  const fs::path root = out_dir / report.config.name;
  fs::create_directories(root);

  {
    // The report itself is canonical (bit-reproducible for a given seed);
    // volatile execution data goes to run_meta.json next to it.
    std::ofstream out(root / "report.json");
    if (!out) throw IoError("cannot write " + (root / "report.json").string());
    out << study_report_to_json(report, false) << '\n';
  }
  {
    std::ofstream out(root / "run_meta.json");
    json meta = {{"wall_time_seconds", report.wall_time_seconds},
                 {"threads", report.threads_used}};
    out << meta.dump(2) << '\n';
  }
  {
    std::ofstream out(root / "summary.csv");
    out << "# " << command_echo << "\n";
    out << "n,k,h,nc,zn_mean,zn_variance,mise_mean,ks_max\n";
    for (const NResult& r : report.results) {
      double ks_max = 0.0;
      for (const PointSummary& p : r.points) {
        if (!std::isnan(p.ks)) ks_max = std::max(ks_max, p.ks);
      }
      out << r.n << ',' << r.k << ',' << r.h << ',' << format_double(r.nc) << ','
          << format_double(r.zn_mean) << ',' << format_double(r.zn_variance)
          << ',' << (r.mise_mean ? format_double(*r.mise_mean) : std::string())
          << ',' << format_double(ks_max) << '\n';
    }
  }
  for (const NResult& r : report.results) {
    const fs::path ndir = root / std::to_string(r.n);
    fs::create_directories(ndir);
    {
      std::ofstream out(ndir / "residuals.csv");
      out << "# " << command_echo << "\n";
      out << "x,replication,residual\n";
      for (const PointSummary& p : r.points) {
        for (std::size_t j = 0; j < p.residuals.size(); ++j) {
          out << format_double(p.x) << ',' << j << ','
              << format_double(p.residuals[j]) << '\n';
        }
      }
    }
    {
      std::ofstream out(ndir / "kernel_bounds.csv");
      out << "# " << command_echo << "\n";
      out << "x,b1,b2,b3,binf,k,h\n";
      for (const KernelBoundPoint& b : r.kernel_bounds) {
        out << format_double(b.x) << ',' << format_double(b.b1) << ','
            << format_double(b.b2) << ',' << format_double(b.b3) << ','
            << format_double(b.binf) << ',' << r.k << ',' << r.h << '\n';
      }
    }
    {
      std::ofstream out(ndir / "points.csv");
      out << "# " << command_echo << "\n";
      out << "x,f_true,fn_approx,mean_raw,mean_corrected,var_raw,var_corrected,"
             "bias_statistical,bias_systematic,bias_raw,bias_corrected,"
             "residual_mean,residual_variance,ks\n";
      for (const PointSummary& p : r.points) {
        out << format_double(p.x) << ',' << format_double(p.f_true) << ','
            << format_double(p.fn_approx) << ',' << format_double(p.mean_raw)
            << ',' << format_double(p.mean_corrected) << ','
            << format_double(p.var_raw) << ',' << format_double(p.var_corrected)
            << ',' << format_double(p.bias_statistical) << ','
            << format_double(p.bias_systematic) << ','
            << format_double(p.bias_raw) << ','
            << format_double(p.bias_corrected) << ','
            << format_double(p.residual_mean) << ','
            << format_double(p.residual_variance) << ','
            << (std::isnan(p.ks) ? std::string() : format_double(p.ks)) << '\n';
      }
    }
  }
}

}  // namespace frontier
