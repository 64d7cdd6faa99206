#pragma once

#include <span>

#include "frontier/process.hpp"

namespace frontier {

struct PlanarPoint {
  double u;
  double v;
};

// Angle/radius reduction of a planar cloud about a known interior point:
// (u, v) maps to x = angle(u-u0, v-v0)/(2*pi) in [0, 1) and y = distance to
// the center. Points coincident with the center are dropped.
PointSample polar_transform(std::span<const PlanarPoint> points,
                            PlanarPoint center);

// Inverse map: (x, y) -> center + y * (cos 2*pi*x, sin 2*pi*x).
PlanarPoint polar_inverse(Point p, PlanarPoint center);

}  // namespace frontier
