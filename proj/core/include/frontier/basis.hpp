#pragma once

#include <span>
#include <vector>

#include "frontier/boundary.hpp"

namespace frontier {

enum class BasisFamily { trigonometric, haar };

// Orthonormal basis of L^2([0,1]) truncated at order h, with closed-form
// evaluation of the associated Dirichlet kernel K(x,y) = sum_{i<=h} e_i(x)e_i(y).
//
// Trigonometric: e_0 = 1, e_{2q-1} = sqrt(2) cos 2q pi x, e_{2q} = sqrt(2) sin 2q pi x,
// h even so the kernel reduces to sin((1+h) pi u)/sin(pi u).
// Haar: standard L^2-normalized Haar functions, h+1 a power of two so the
// truncation closes a resolution level and K(x,y) = (1+h) over shared dyadic cells.
class BasisSpec {
public:
  BasisSpec(BasisFamily family, int order);

  BasisFamily family() const noexcept { return family_; }
  int order() const noexcept { return order_; }

  // e_i(x), 0 <= i <= order; throws std::out_of_range otherwise.
  double eval(int i, double x) const;

  // Dirichlet kernel via the closed form; symmetric, equals 1+h on the
  // diagonal.
  double kernel(double x, double y) const;

private:
  BasisFamily family_;
  int order_;
};

enum class KernelNorm { l1, l2, l3, sup };

// Kernel row over the midpoints of Partition(k): out[r] = K(x_r, x).
void kernel_row(const BasisSpec& spec, int k, double x, std::span<double> out);

// B_{n,j}(x) = (sum_r |K(x_r,x)|^j)^(1/j) for j in {1,2,3}, and
// B_{n,inf}(x) = max_r |K(x_r,x)|, over the midpoints of Partition(k).
double kernel_bound(const BasisSpec& spec, int k, double x, KernelNorm norm);

// a_i = integral of e_i * f over [0,1] by adaptive quadrature; results are
// cached per (family, i, boundary, tol). Safe for concurrent use.
double coefficient(const BasisSpec& spec, const BoundaryFunction& f, int i,
                   double tol = 1e-10);

// sum_{i<=h} a_i e_i(x) with coefficients from coefficient().
double partial_sum(const BasisSpec& spec, const BoundaryFunction& f, double x,
                   double tol = 1e-10);

// Deterministic approximation f_n(x) = sum_r K(x_r,x) * lambda_r, the
// noise-free target of the estimators.
double approx_fn(const BasisSpec& spec, std::span<const double> cell_measures,
                 double x);
double approx_fn(const BasisSpec& spec, const BoundaryFunction& f, int k,
                 double x, double tol = 1e-10);

}  // namespace frontier
