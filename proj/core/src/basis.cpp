#include "frontier/basis.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

#include "frontier/quadrature.hpp"

namespace frontier {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
// Below this the sine ratio is numerically unstable; the limit value 1+h is
// exact there because h is even.
constexpr double kDiagonalThreshold = 1e-9;

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

double haar_eval(int i, double x) {
  if (i == 0) return 1.0;
  const int level = std::bit_width(static_cast<unsigned>(i)) - 1;  // floor(log2 i)
  const int offset = i - (1 << level);
  const double scaled = x * (1 << level) - offset;
  if (scaled < 0.0 || scaled > 1.0) return 0.0;
  const double amp = std::exp2(0.5 * level);
  if (scaled == 1.0) {
    // Right endpoint: belongs to the next wavelet, except at the global edge
    // x = 1 where the left limit applies (x = 1 counts into the last cell).
    return x == 1.0 ? -amp : 0.0;
  }
  return scaled < 0.5 ? amp : -amp;
}

}  // namespace

BasisSpec::BasisSpec(BasisFamily family, int order)
    : family_(family), order_(order) {
  if (order < 0) throw std::invalid_argument("BasisSpec: order must be >= 0");
  if (family == BasisFamily::trigonometric && order % 2 != 0) {
    throw std::invalid_argument("BasisSpec: trigonometric order must be even");
  }
  if (family == BasisFamily::haar && !is_power_of_two(order + 1)) {
    throw std::invalid_argument("BasisSpec: haar order + 1 must be a power of two");
  }
}

double BasisSpec::eval(int i, double x) const {
  if (i < 0 || i > order_) {
    throw std::out_of_range("BasisSpec::eval: index out of range");
  }
  if (family_ == BasisFamily::haar) return haar_eval(i, x);
  if (i == 0) return 1.0;
  if (i % 2 == 1) {
    const double q = (i + 1) / 2;
    return kSqrt2 * std::cos(2.0 * q * kPi * x);
  }
  const double q = i / 2;
  return kSqrt2 * std::sin(2.0 * q * kPi * x);
}

double BasisSpec::kernel(double x, double y) const {
  if (family_ == BasisFamily::haar) {
    const int cells = order_ + 1;
    auto cell = [cells](double t) {
      const int c = static_cast<int>(t * cells);
      return c >= cells ? cells - 1 : c;
    };
    return cell(x) == cell(y) ? static_cast<double>(cells) : 0.0;
  }
  double u = x - y;
  u -= std::round(u);
  if (u <= -0.5) u += 1.0;  // reduce into (-1/2, 1/2]
  const double denom = std::sin(kPi * u);
  if (std::abs(denom) < kDiagonalThreshold) {
    return 1.0 + order_;
  }
  return std::sin((1.0 + order_) * kPi * u) / denom;
}

void kernel_row(const BasisSpec& spec, int k, double x, std::span<double> out) {
  for (int r = 0; r < k; ++r) {
    out[r] = spec.kernel((2.0 * r + 1.0) / (2.0 * k), x);
  }
}

double kernel_bound(const BasisSpec& spec, int k, double x, KernelNorm norm) {
  if (k < 1) throw std::invalid_argument("kernel_bound: k must be >= 1");
  double acc = 0.0;
  for (int r = 0; r < k; ++r) {
    const double v = std::abs(spec.kernel((2.0 * r + 1.0) / (2.0 * k), x));
    switch (norm) {
      case KernelNorm::l1: acc += v; break;
      case KernelNorm::l2: acc += v * v; break;
      case KernelNorm::l3: acc += v * v * v; break;
      case KernelNorm::sup: acc = std::max(acc, v); break;
    }
  }
  switch (norm) {
    case KernelNorm::l1: return acc;
    case KernelNorm::l2: return std::sqrt(acc);
    case KernelNorm::l3: return std::cbrt(acc);
    case KernelNorm::sup: return acc;
  }
  return acc;
}

namespace {

struct CoeffKey {
  int family;
  int index;
  std::uint64_t boundary_fp;
  std::uint64_t tol_bits;
  auto operator<=>(const CoeffKey&) const = default;
};

std::map<CoeffKey, double>& coeff_cache() {
  static std::map<CoeffKey, double> cache;
  return cache;
}
std::shared_mutex& coeff_cache_mutex() {
  static std::shared_mutex m;
  return m;
}

double compute_coefficient(const BasisSpec& spec, const BoundaryFunction& f,
                           int i, double tol) {
  if (i == 0) return f.area(tol);
  if (spec.family() == BasisFamily::haar) {
    // Piecewise-constant basis function: integrate f over the two halves of
    // the support instead of pushing a discontinuity through the quadrature.
    const int level = std::bit_width(static_cast<unsigned>(i)) - 1;
    const int offset = i - (1 << level);
    const double width = 1.0 / (1 << level);
    const double lo = offset * width;
    const double mid = lo + 0.5 * width;
    const double hi = lo + width;
    const double amp = std::exp2(0.5 * level);
    QuadratureOptions opt;
    opt.tol = 0.5 * tol / amp;
    auto fv = [&f](double t) { return f.evaluate(t); };
    return amp * (integrate(fv, lo, mid, opt) - integrate(fv, mid, hi, opt));
  }
  const int q = (i + 1) / 2;
  QuadratureOptions opt;
  opt.tol = tol;
  opt.panels = std::max(8, 4 * q);
  return integrate([&](double t) { return spec.eval(i, t) * f.evaluate(t); },
                   0.0, 1.0, opt);
}

}  // namespace

double coefficient(const BasisSpec& spec, const BoundaryFunction& f, int i,
                   double tol) {
  if (i < 0 || i > spec.order()) {
    throw std::out_of_range("coefficient: index out of range");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("coefficient: tol must be > 0");

  const CoeffKey key{static_cast<int>(spec.family()), i, f.fingerprint(),
                     std::bit_cast<std::uint64_t>(tol)};
  {
    std::shared_lock lock(coeff_cache_mutex());
    auto it = coeff_cache().find(key);
    if (it != coeff_cache().end()) return it->second;
  }
  const double value = compute_coefficient(spec, f, i, tol);
  {
    std::unique_lock lock(coeff_cache_mutex());
    coeff_cache().emplace(key, value);
  }
  return value;
}

double partial_sum(const BasisSpec& spec, const BoundaryFunction& f, double x,
                   double tol) {
  double acc = 0.0;
  for (int i = 0; i <= spec.order(); ++i) {
    acc += coefficient(spec, f, i, tol) * spec.eval(i, x);
  }
  return acc;
}

double approx_fn(const BasisSpec& spec, std::span<const double> cell_measures,
                 double x) {
  const int k = static_cast<int>(cell_measures.size());
  if (k < 1) throw std::invalid_argument("approx_fn: cell measures must be non-empty");
  double acc = 0.0;
  for (int r = 0; r < k; ++r) {
    acc += spec.kernel((2.0 * r + 1.0) / (2.0 * k), x) * cell_measures[r];
  }
  return acc;
}

double approx_fn(const BasisSpec& spec, const BoundaryFunction& f, int k,
                 double x, double tol) {
  const std::vector<double> measures = f.cell_measures(Partition(k), tol);
  return approx_fn(spec, measures, x);
}

}  // namespace frontier
