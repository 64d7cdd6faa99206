#pragma once

#include <vector>

#include "frontier/basis.hpp"
#include "frontier/sampler.hpp"

namespace frontier {

// Estimates evaluated on a grid. corrected[i] - raw[i] equals
// correction * (1/k) sum_r K(x_r, grid[i]) by construction.
struct EstimateCurve {
  BasisSpec spec;
  int k = 0;
  double correction = 0.0;  // Z_n, mean of the per-cell minima
  std::vector<double> grid;
  std::vector<double> raw;        // projection estimate from cell maxima
  std::vector<double> corrected;  // raw + Z_n * kernel row mean
  std::vector<double> coeffs;     // estimated coefficients, length order+1
};

// Coefficient estimates a_hat_i = sum_r e_i(x_r) X*_r / k, i = 0..order.
// The estimation functions below read only the cell extremes and the basis;
// they never touch the process intensity.
std::vector<double> estimate_coeffs(const CellExtremes& ext,
                                    const BasisSpec& spec);

// Raw projection estimate f_hat(x) = sum_r K(x_r,x) X*_r / k.
double estimate_raw(const CellExtremes& ext, const BasisSpec& spec, double x);

// Z_n = (1/k) sum_r Z*_r.
double correction_term(const CellExtremes& ext);

// Corrected estimate f_tilde(x) = sum_r K(x_r,x) (X*_r + Z_n) / k.
double estimate_corrected(const CellExtremes& ext, const BasisSpec& spec,
                          double x);

// Batch evaluation sharing Z_n and the kernel rows across grid points.
EstimateCurve estimate_curve(const CellExtremes& ext, const BasisSpec& spec,
                             std::vector<double> grid);

}  // namespace frontier
