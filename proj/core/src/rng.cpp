#include "frontier/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace frontier {

std::int64_t Rng::poisson(double mean) {
  if (mean < 0.0 || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson: mean must be finite and >= 0");
  }
  if (mean == 0.0) return 0;
  if (mean < 10.0) return poisson_inversion(mean);
  return poisson_ptrd(mean);
}

std::int64_t Rng::poisson_inversion(double mean) {
  const double threshold = std::exp(-mean);
  std::int64_t count = 0;
  double product = uniform();
  while (product > threshold) {
    ++count;
    product *= uniform();
  }
  return count;
}

// Transformed rejection with decomposition (PTRD), Hoermann 1993; exact for
// mean >= 10.
std::int64_t Rng::poisson_ptrd(double mean) {
  const double smu = std::sqrt(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mu = std::log(mean);

  for (;;) {
    double u = uniform() - 0.5;
    double v = uniform();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) {
      return static_cast<std::int64_t>(kf);
    }
    if (kf < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    const double k = kf;
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = k * log_mu - mean - std::lgamma(k + 1.0);
    if (lhs <= rhs) {
      return static_cast<std::int64_t>(kf);
    }
  }
}

}  // namespace frontier
