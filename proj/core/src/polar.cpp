#include "frontier/polar.hpp"

#include <cmath>
#include <numbers>

namespace frontier {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

PointSample polar_transform(std::span<const PlanarPoint> points,
                            PlanarPoint center) {
  PointSample out;
  out.points.reserve(points.size());
  for (const PlanarPoint& p : points) {
    const double du = p.u - center.u;
    const double dv = p.v - center.v;
    const double radius = std::hypot(du, dv);
    if (radius == 0.0) continue;  // carries no boundary information
    double angle = std::atan2(dv, du);
    if (angle < 0.0) angle += kTwoPi;
    double x = angle / kTwoPi;
    if (x >= 1.0) x = 0.0;  // guard the atan2(~ -0) edge
    out.points.push_back({x, radius});
  }
  return out;
}

PlanarPoint polar_inverse(Point p, PlanarPoint center) {
  const double angle = kTwoPi * p.x;
  return {center.u + p.y * std::cos(angle), center.v + p.y * std::sin(angle)};
}

}  // namespace frontier
