#include "frontier/process.hpp"

#include <cmath>
#include <stdexcept>

namespace frontier {

ProcessConfig::ProcessConfig(std::int64_t n, double c, std::uint64_t seed)
    : n_(n), c_(c), total_intensity_(static_cast<double>(n) * c), seed_(seed) {
  if (n < 1) throw std::invalid_argument("ProcessConfig: n must be >= 1");
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("ProcessConfig: c must be finite and > 0");
  }
}

ProcessConfig::ProcessConfig(std::int64_t n, double c, double total_intensity,
                             std::uint64_t seed)
    : ProcessConfig(n, c, seed) {
  const double expected = static_cast<double>(n) * c;
  if (std::abs(total_intensity - expected) > 1e-12 * std::abs(expected)) {
    throw std::invalid_argument(
        "ProcessConfig: total_intensity must equal n*c (relative tol 1e-12)");
  }
  total_intensity_ = total_intensity;
}

}  // namespace frontier
