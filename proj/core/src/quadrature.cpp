#include "frontier/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace frontier {

namespace {

double simpson(double fa, double fm, double fb, double width) {
  return width * (fa + 4.0 * fm + fb) / 6.0;
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol) {
    return left + right + err / 15.0;
  }
  if (depth <= 0) {
    throw std::runtime_error("integrate: refinement budget exhausted");
  }
  return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
  if (!(opt.tol > 0.0)) throw std::invalid_argument("integrate: tol must be > 0");
  if (a == b) return 0.0;
  const int panels = opt.panels < 1 ? 1 : opt.panels;
  const double width = (b - a) / panels;
  const double panel_tol = opt.tol / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double pa = a + p * width;
    const double pb = p + 1 == panels ? b : pa + width;
    const double pm = 0.5 * (pa + pb);
    const double fa = f(pa);
    const double fm = f(pm);
    const double fb = f(pb);
    const double whole = simpson(fa, fm, fb, pb - pa);
    total += adapt(f, pa, pb, fa, fm, fb, whole, panel_tol, opt.max_depth);
  }
  return total;
}

}  // namespace frontier
