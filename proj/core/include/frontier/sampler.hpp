#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "frontier/boundary.hpp"
#include "frontier/partition.hpp"
#include "frontier/process.hpp"

namespace frontier {

// Per-cell extreme values of a point sample: x_max holds the cell maxima of
// the second coordinate (X*), y_min the cell minima (Z*). Empty cells carry
// x_max = y_min = 0.
struct CellExtremes {
  int k = 0;
  std::vector<double> x_max;
  std::vector<double> y_min;
  std::vector<std::int64_t> count;
  std::optional<ProcessConfig> config;
};

// Exact sample of the superposed process on the support of f: the total count
// is Poisson(nc * sup f) on the bounding box, thinned to y <= f(x).
// Deterministic given cfg.seed.
PointSample sample_process(const BoundaryFunction& f, const ProcessConfig& cfg);

CellExtremes cell_extremes(const PointSample& s, const Partition& p);

// Distribution function of a cell maximum on [0, cell_min]:
//   F(x) = exp[(nc/k) (x - k*lambda_cell)].
// cell_min is the minimum of f over the cell; throws std::domain_error for
// x outside [0, cell_min].
double extreme_cdf(double x, double cell_min, double nc, int k,
                   double lambda_cell);

struct ExtremeMoments {
  double mean;
  double variance;
};

// Exact mean and variance of a cell maximum when f is constant (= f_level)
// on the cell, from the explicit law with its atom at 0.
ExtremeMoments extreme_moments(double f_level, double nc, int k);

}  // namespace frontier
