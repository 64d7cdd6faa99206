#include "frontier/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "frontier/rng.hpp"

namespace frontier {

PointSample sample_process(const BoundaryFunction& f, const ProcessConfig& cfg) {
  // One Poisson process of intensity nc, distributionally identical to the
  // superposition of n copies of intensity c. Bounding-box thinning keeps the
  // sample exact for any boundary.
  const double big_m = f.bounds().M;
  const double box_mean = cfg.total_intensity() * big_m;

  Rng rng(cfg.seed());
  const std::int64_t total = rng.poisson(box_mean);

  PointSample out;
  out.config = cfg;
  out.points.reserve(static_cast<std::size_t>(total));
  for (std::int64_t i = 0; i < total; ++i) {
    const double x = rng.uniform();
    const double y = rng.uniform(0.0, big_m);
    if (y <= f.evaluate(x)) {
      out.points.push_back({x, y});
    }
  }
  return out;
}

CellExtremes cell_extremes(const PointSample& s, const Partition& p) {
  const int k = p.size();
  CellExtremes ext;
  ext.k = k;
  ext.x_max.assign(static_cast<std::size_t>(k), 0.0);
  ext.y_min.assign(static_cast<std::size_t>(k), 0.0);
  ext.count.assign(static_cast<std::size_t>(k), 0);
  ext.config = s.config;

  for (const Point& pt : s.points) {
    const int r = p.cell_of(pt.x);
    if (ext.count[r] == 0) {
      ext.x_max[r] = pt.y;
      ext.y_min[r] = pt.y;
    } else {
      if (pt.y > ext.x_max[r]) ext.x_max[r] = pt.y;
      if (pt.y < ext.y_min[r]) ext.y_min[r] = pt.y;
    }
    ++ext.count[r];
  }
  return ext;
}

double extreme_cdf(double x, double cell_min, double nc, int k,
                   double lambda_cell) {
  if (!(nc > 0.0) || k < 1 || !(lambda_cell > 0.0)) {
    throw std::domain_error("extreme_cdf: nc, k, lambda_cell must be positive");
  }
  if (!(x >= 0.0 && x <= cell_min)) {
    throw std::domain_error("extreme_cdf: x must lie in [0, cell_min]");
  }
  return std::exp((nc / k) * (x - k * lambda_cell));
}

ExtremeMoments extreme_moments(double f_level, double nc, int k) {
  if (!(f_level > 0.0) || !(nc > 0.0) || k < 1) {
    throw std::domain_error("extreme_moments: arguments must be positive");
  }
  // F(x) = exp[a(x - L)] on [0, L] with a = nc/k, atom exp(-aL) at zero.
  const double a = nc / k;
  const double big_l = f_level;
  const double tail = std::exp(-a * big_l);
  const double mean = big_l - (1.0 - tail) / a;
  const double second =
      big_l * big_l - 2.0 * big_l / a + 2.0 / (a * a) - 2.0 * tail / (a * a);
  return {mean, second - mean * mean};
}

}  // namespace frontier
