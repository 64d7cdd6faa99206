#include "frontier/estimator.hpp"

#include <stdexcept>

namespace frontier {

std::vector<double> estimate_coeffs(const CellExtremes& ext,
                                    const BasisSpec& spec) {
  if (ext.k < 1) throw std::invalid_argument("estimate_coeffs: k must be >= 1");
  const int k = ext.k;
  std::vector<double> coeffs(static_cast<std::size_t>(spec.order()) + 1, 0.0);
  for (int r = 0; r < k; ++r) {
    const double xr = (2.0 * r + 1.0) / (2.0 * k);
    const double weight = ext.x_max[r] / k;
    for (int i = 0; i <= spec.order(); ++i) {
      coeffs[i] += spec.eval(i, xr) * weight;
    }
  }
  return coeffs;
}

double estimate_raw(const CellExtremes& ext, const BasisSpec& spec, double x) {
  const int k = ext.k;
  double acc = 0.0;
  for (int r = 0; r < k; ++r) {
    acc += spec.kernel((2.0 * r + 1.0) / (2.0 * k), x) * ext.x_max[r];
  }
  return acc / k;
}

double correction_term(const CellExtremes& ext) {
  double acc = 0.0;
  for (double z : ext.y_min) acc += z;
  return ext.k > 0 ? acc / ext.k : 0.0;
}

double estimate_corrected(const CellExtremes& ext, const BasisSpec& spec,
                          double x) {
  const int k = ext.k;
  const double zn = correction_term(ext);
  double raw = 0.0;
  double row_mean = 0.0;
  for (int r = 0; r < k; ++r) {
    const double kv = spec.kernel((2.0 * r + 1.0) / (2.0 * k), x);
    raw += kv * ext.x_max[r];
    row_mean += kv;
  }
  return raw / k + zn * row_mean / k;
}

EstimateCurve estimate_curve(const CellExtremes& ext, const BasisSpec& spec,
                             std::vector<double> grid) {
  const int k = ext.k;
  EstimateCurve curve{spec, k, correction_term(ext), std::move(grid), {}, {}, {}};
  curve.coeffs = estimate_coeffs(ext, spec);
  curve.raw.reserve(curve.grid.size());
  curve.corrected.reserve(curve.grid.size());
  for (double x : curve.grid) {
    double raw = 0.0;
    double row_mean = 0.0;
    for (int r = 0; r < k; ++r) {
      const double kv = spec.kernel((2.0 * r + 1.0) / (2.0 * k), x);
      raw += kv * ext.x_max[r];
      row_mean += kv;
    }
    raw /= k;
    curve.raw.push_back(raw);
    curve.corrected.push_back(raw + curve.correction * row_mean / k);
  }
  return curve;
}

}  // namespace frontier
