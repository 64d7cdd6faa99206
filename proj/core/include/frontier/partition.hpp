#pragma once

#include <stdexcept>

namespace frontier {

// Uniform partition of [0,1) into k half-open cells [r/k, (r+1)/k).
// The boundary point x = 1 is assigned to the last cell.
class Partition {
public:
  explicit Partition(int k) : k_(k) {
    if (k < 1) throw std::invalid_argument("Partition: k must be >= 1");
  }

  int size() const noexcept { return k_; }

  // Cell midpoint x_r = (2r+1)/(2k), r in [0, k).
  double midpoint(int r) const noexcept { return (2.0 * r + 1.0) / (2.0 * k_); }
  double lower(int r) const noexcept { return static_cast<double>(r) / k_; }
  double upper(int r) const noexcept { return static_cast<double>(r + 1) / k_; }

  int cell_of(double x) const noexcept {
    const int r = static_cast<int>(x * k_);
    if (r < 0) return 0;
    return r >= k_ ? k_ - 1 : r;
  }

private:
  int k_;
};

}  // namespace frontier
