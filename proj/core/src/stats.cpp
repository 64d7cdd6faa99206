#include "frontier/stats.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace frontier {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean: empty input");
  double acc = 0.0;
  for (double d : v) acc += d;
  return acc / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
  if (v.size() < 2) throw std::invalid_argument("sample_variance: need >= 2 values");
  const double m = mean(v);
  double acc = 0.0;
  for (double d : v) acc += (d - m) * (d - m);
  return acc / static_cast<double>(v.size() - 1);
}

}  // namespace frontier
