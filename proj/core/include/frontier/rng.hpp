#pragma once

#include <cstdint>
#include <random>

namespace frontier {

// Seeded mt19937_64 with explicit uniform and Poisson mappings, so that the
// generated stream depends only on the seed and not on the standard library's
// distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Exact Poisson sample; sequential inversion for small means, transformed
  // rejection (PTRD) otherwise. Throws std::invalid_argument for mean < 0.
  std::int64_t poisson(double mean);

private:
  std::int64_t poisson_inversion(double mean);
  std::int64_t poisson_ptrd(double mean);

  std::mt19937_64 eng_;
};

}  // namespace frontier
