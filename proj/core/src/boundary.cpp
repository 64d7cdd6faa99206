#include "frontier/boundary.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "frontier/quadrature.hpp"

namespace frontier {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t value) {
  for (int byte = 0; byte < 8; ++byte) {
    hash ^= (value >> (8 * byte)) & 0xffu;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::uint64_t hash_double(std::uint64_t hash, double v) {
  return fnv1a(hash, std::bit_cast<std::uint64_t>(v));
}

// Solves the cyclic tridiagonal system for the periodic spline's second
// derivatives (Sherman-Morrison on a Thomas solve).
std::vector<double> solve_cyclic_tridiagonal(const std::vector<double>& sub,
                                             const std::vector<double>& diag,
                                             const std::vector<double>& sup,
                                             std::vector<double> rhs) {
  const std::size_t n = diag.size();
  const double alpha = sup[n - 1];  // corner (n-1, 0)
  const double beta = sub[0];       // corner (0, n-1)
  const double gamma = -diag[0];

  std::vector<double> bb(diag);
  bb[0] -= gamma;
  bb[n - 1] -= alpha * beta / gamma;

  auto thomas = [&](std::vector<double> d) {
    std::vector<double> c_prime(n, 0.0);
    c_prime[0] = sup[0] / bb[0];
    d[0] /= bb[0];
    for (std::size_t i = 1; i < n; ++i) {
      const double m = bb[i] - sub[i] * c_prime[i - 1];
      c_prime[i] = sup[i] / m;
      d[i] = (d[i] - sub[i] * d[i - 1]) / m;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
      d[i] -= c_prime[i] * d[i + 1];
    }
    return d;
  };

  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;

  std::vector<double> x = thomas(std::move(rhs));
  std::vector<double> z = thomas(std::move(u));

  const double fact = (x[0] + beta * x[n - 1] / gamma) /
                      (1.0 + z[0] + beta * z[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) x[i] -= fact * z[i];
  return x;
}

}  // namespace

BoundaryFunction BoundaryFunction::constant(double level) {
  if (!(level > 0.0) || !std::isfinite(level)) {
    throw std::invalid_argument("BoundaryFunction: constant level must be finite and > 0");
  }
  BoundaryFunction f;
  f.variant_ = Variant::constant;
  f.params_ = {level};
  f.finalize();
  return f;
}

BoundaryFunction BoundaryFunction::sinusoid(double base, double amplitude,
                                            int frequency, double phase) {
  if (!(base > 0.0) || !std::isfinite(base) || !std::isfinite(amplitude) ||
      !std::isfinite(phase)) {
    throw std::invalid_argument("BoundaryFunction: sinusoid parameters must be finite, base > 0");
  }
  if (!(std::abs(amplitude) < base)) {
    throw std::invalid_argument("BoundaryFunction: sinusoid requires |amplitude| < base");
  }
  if (frequency < 1) {
    throw std::invalid_argument("BoundaryFunction: sinusoid frequency must be a positive integer");
  }
  BoundaryFunction f;
  f.variant_ = Variant::sinusoid;
  f.params_ = {base, amplitude, static_cast<double>(frequency), phase};
  f.finalize();
  return f;
}

BoundaryFunction BoundaryFunction::table(std::vector<Knot> knots) {
  if (knots.size() < 3) {
    throw std::invalid_argument("BoundaryFunction: table requires at least 3 knots");
  }
  std::sort(knots.begin(), knots.end(),
            [](const Knot& a, const Knot& b) { return a.x < b.x; });
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].x) || !std::isfinite(knots[i].value)) {
      throw std::invalid_argument("BoundaryFunction: table knots must be finite");
    }
    if (knots[i].x < 0.0 || knots[i].x >= 1.0) {
      throw std::invalid_argument("BoundaryFunction: table knot x must lie in [0, 1)");
    }
    if (i > 0 && !(knots[i].x > knots[i - 1].x)) {
      throw std::invalid_argument("BoundaryFunction: table knot x must be strictly increasing");
    }
  }
  BoundaryFunction f;
  f.variant_ = Variant::table;
  f.knots_ = std::move(knots);
  f.finalize();
  return f;
}

void BoundaryFunction::finalize() {
  if (variant_ == Variant::table) {
    // Periodic cubic spline: knots extended by (x_0 + 1, y_0).
    const std::size_t n = knots_.size();
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double next = i + 1 < n ? knots_[i + 1].x : knots_[0].x + 1.0;
      h[i] = next - knots_[i].x;
    }
    std::vector<double> sub(n), diag(n), sup(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t prev = (i + n - 1) % n;
      const std::size_t next = (i + 1) % n;
      sub[i] = h[prev] / 6.0;
      diag[i] = (h[prev] + h[i]) / 3.0;
      sup[i] = h[i] / 6.0;
      const double dy_next = (knots_[next].value - knots_[i].value) / h[i];
      const double dy_prev = (knots_[i].value - knots_[prev].value) / h[prev];
      rhs[i] = dy_next - dy_prev;
    }
    spline_m_ = solve_cyclic_tridiagonal(sub, diag, sup, std::move(rhs));
  }

  switch (variant_) {
    case Variant::constant:
      bounds_ = {params_[0], params_[0]};
      break;
    case Variant::sinusoid: {
      const double amp = std::abs(params_[1]);
      bounds_ = {params_[0] - amp, params_[0] + amp};
      break;
    }
    case Variant::table: {
      // Dense scan; the knot values alone can miss interpolation overshoot.
      constexpr int kGrid = 8192;
      double lo = spline_value(0.0);
      double hi = lo;
      for (int i = 1; i <= kGrid; ++i) {
        const double v = spline_value(static_cast<double>(i) / kGrid);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      bounds_ = {lo, hi};
      break;
    }
  }
  if (!(bounds_.m > 0.0)) {
    throw std::invalid_argument("BoundaryFunction: inf f must be > 0");
  }

  std::uint64_t hash = 14695981039346656037ull;
  hash = fnv1a(hash, static_cast<std::uint64_t>(variant_));
  for (double p : params_) hash = hash_double(hash, p);
  for (const Knot& kn : knots_) {
    hash = hash_double(hash, kn.x);
    hash = hash_double(hash, kn.value);
  }
  fingerprint_ = hash;
}

double BoundaryFunction::spline_value(double x) const {
  const std::size_t n = knots_.size();
  const double x0 = knots_[0].x;
  double t = x;
  if (t < x0) t += 1.0;
  if (t >= x0 + 1.0) t -= 1.0;

  // Locate the segment [x_i, x_{i+1}) containing t.
  std::size_t i = n - 1;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (t < knots_[j + 1].x) {
      i = j;
      break;
    }
  }
  const double xi = knots_[i].x;
  const double xn = i + 1 < n ? knots_[i + 1].x : knots_[0].x + 1.0;
  const double yi = knots_[i].value;
  const double yn = i + 1 < n ? knots_[i + 1].value : knots_[0].value;
  const double mi = spline_m_[i];
  const double mn = spline_m_[(i + 1) % n];
  const double hseg = xn - xi;
  const double a = (xn - t) / hseg;
  const double b = (t - xi) / hseg;
  return a * yi + b * yn +
         ((a * a * a - a) * mi + (b * b * b - b) * mn) * hseg * hseg / 6.0;
}

double BoundaryFunction::evaluate(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("BoundaryFunction: x must lie in [0, 1]");
  }
  switch (variant_) {
    case Variant::constant:
      return params_[0];
    case Variant::sinusoid:
      return params_[0] + params_[1] * std::sin(kTwoPi * params_[2] * x + params_[3]);
    case Variant::table:
      return spline_value(x);
  }
  return 0.0;  // unreachable
}

double BoundaryFunction::area(double tol) const {
  if (!(tol > 0.0)) throw std::invalid_argument("area: tol must be > 0");
  switch (variant_) {
    case Variant::constant:
      return params_[0];
    case Variant::sinusoid:
      // Integer cycles integrate to zero over [0, 1].
      return params_[0];
    case Variant::table: {
      QuadratureOptions opt;
      opt.tol = tol;
      opt.panels = std::max<int>(8, 2 * static_cast<int>(knots_.size()));
      return integrate([this](double x) { return spline_value(x); }, 0.0, 1.0, opt);
    }
  }
  return 0.0;  // unreachable
}

std::vector<double> BoundaryFunction::cell_measures(const Partition& p,
                                                    double tol) const {
  if (!(tol > 0.0)) throw std::invalid_argument("cell_measures: tol must be > 0");
  const int k = p.size();
  std::vector<double> out(static_cast<std::size_t>(k));
  switch (variant_) {
    case Variant::constant:
      for (int r = 0; r < k; ++r) out[r] = params_[0] * (p.upper(r) - p.lower(r));
      break;
    case Variant::sinusoid: {
      const double base = params_[0];
      const double amp = params_[1];
      const double omega = kTwoPi * params_[2];
      auto antiderivative = [&](double x) {
        return base * x - amp * std::cos(omega * x + params_[3]) / omega;
      };
      for (int r = 0; r < k; ++r) {
        out[r] = antiderivative(p.upper(r)) - antiderivative(p.lower(r));
      }
      break;
    }
    case Variant::table: {
      QuadratureOptions opt;
      opt.tol = tol;
      opt.panels = 4;
      for (int r = 0; r < k; ++r) {
        out[r] = integrate([this](double x) { return spline_value(x); },
                           p.lower(r), p.upper(r), opt);
      }
      break;
    }
  }
  return out;
}

}  // namespace frontier
