#pragma once

#include <cstdint>
#include <vector>

#include "frontier/partition.hpp"

namespace frontier {

struct Knot {
  double x;
  double value;
};

struct BoundaryBounds {
  double m;  // inf f, strictly positive
  double M;  // sup f
};

// Upper boundary f of the support {(x,y) : 0 <= x <= 1, 0 <= y <= f(x)}.
// All catalog members satisfy 0 < inf f <= sup f < infinity and f(0) = f(1),
// which the constructors enforce. Instances are immutable.
class BoundaryFunction {
public:
  enum class Variant { constant, sinusoid, table };

  static BoundaryFunction constant(double level);

  // base + amplitude * sin(2*pi*frequency*x + phase); requires
  // |amplitude| < base and frequency >= 1 (integer cycles, so f(0) = f(1)).
  static BoundaryFunction sinusoid(double base, double amplitude, int frequency,
                                   double phase);

  // Periodic cubic interpolation through the knots (period 1, C^2).
  // Requires >= 3 knots with strictly increasing x in [0, 1).
  static BoundaryFunction table(std::vector<Knot> knots);

  // f(x) for x in [0, 1]; throws std::domain_error outside.
  double evaluate(double x) const;

  // (inf f, sup f): closed form for constant/sinusoid, dense-grid scan
  // (>= 4096 points) for table boundaries.
  BoundaryBounds bounds() const noexcept { return bounds_; }

  // Integral of f over [0, 1]; closed form for constant/sinusoid, adaptive
  // quadrature at the given tolerance for table boundaries.
  double area(double tol = 1e-10) const;

  // Cell measures lambda_r = integral of f over [r/k, (r+1)/k).
  // Entries lie in [m/k, M/k] and sum to area() within k*tol.
  std::vector<double> cell_measures(const Partition& p, double tol = 1e-10) const;

  Variant variant() const noexcept { return variant_; }
  const std::vector<double>& params() const noexcept { return params_; }
  const std::vector<Knot>& knots() const noexcept { return knots_; }

  // Stable identity hash over the construction parameters (used as a cache key).
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

private:
  BoundaryFunction() = default;
  void finalize();
  double spline_value(double x) const;

  Variant variant_ = Variant::constant;
  std::vector<double> params_;        // constant: {level}; sinusoid: {base, amplitude, frequency, phase}
  std::vector<Knot> knots_;           // table variant only
  std::vector<double> spline_m_;      // second derivatives at knots (periodic spline)
  BoundaryBounds bounds_{0.0, 0.0};
  std::uint64_t fingerprint_ = 0;
};

}  // namespace frontier
