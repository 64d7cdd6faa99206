#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace frontier {

// Configuration of the superposed process: n independent copies of a Poisson
// process with intensity c each, i.e. total intensity nc per unit area.
class ProcessConfig {
public:
  ProcessConfig(std::int64_t n, double c, std::uint64_t seed);

  // Variant with an explicit total intensity; must equal n*c within relative
  // tolerance 1e-12.
  ProcessConfig(std::int64_t n, double c, double total_intensity,
                std::uint64_t seed);

  std::int64_t n() const noexcept { return n_; }
  double c() const noexcept { return c_; }
  double total_intensity() const noexcept { return total_intensity_; }
  std::uint64_t seed() const noexcept { return seed_; }

private:
  std::int64_t n_;
  double c_;
  double total_intensity_;
  std::uint64_t seed_;
};

struct Point {
  double x;
  double y;
};

struct PointSample {
  std::vector<Point> points;
  // Present when the sample was produced by sample_process; absent for
  // ingested or transformed clouds.
  std::optional<ProcessConfig> config;
};

}  // namespace frontier
