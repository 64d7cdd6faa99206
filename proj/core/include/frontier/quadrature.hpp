#pragma once

#include <functional>

namespace frontier {

struct QuadratureOptions {
  double tol = 1e-10;
  int max_depth = 40;
  // Number of equal panels the interval is split into before adaptive
  // refinement starts; raise for oscillatory integrands.
  int panels = 8;
};

// Adaptive Simpson integration of f over [a, b].
// Throws std::runtime_error when the refinement budget is exhausted
// before the per-panel tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

}  // namespace frontier
