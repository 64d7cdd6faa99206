#pragma once

#include <span>

namespace frontier {

// Standard normal CDF, accurate to well below 1e-12 absolute.
double normal_cdf(double x);

double mean(std::span<const double> v);

// Unbiased sample variance (denominator n-1); requires at least two values.
double sample_variance(std::span<const double> v);

}  // namespace frontier
