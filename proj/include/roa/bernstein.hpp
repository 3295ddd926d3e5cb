#pragma once

#include "roa/converse.hpp"
#include "roa/types.hpp"

#include <memory>
#include <vector>

namespace roa {

// ---------------------------------------------------------------------------
// Tensor-product Bernstein polynomial on a box.
//
// Coefficients are the sampled values on the uniform node grid (the Bernstein
// operator is optimization-free: B_d V has coefficients V(k/d)). Stored dense
// in row-major multi-index order, last index fastest. Evaluation maps the
// point affinely into [0,1]^n, builds the 1-D basis per dimension with the
// triangular recurrence (no binomial coefficients, which overflow at the
// degrees used here), and contracts the tensor one dimension at a time.
// ---------------------------------------------------------------------------

struct BernsteinPoly {
  int dims = 0;
  int degree = 0;
  Box box;
  std::vector<double> coeffs;  // (d+1)^n

  void validate() const;
  bool in_domain(const Vec& x) const { return box.contains(x); }
  double min_coeff() const;
  double max_coeff() const;
};

// Bernstein operator fit: coefficients are exactly the grid samples.
BernsteinPoly fit(const ValueGrid& grid);

double eval(const BernsteinPoly& poly, const Vec& x);

// Exact gradient: degree-reduction identity (d times the forward differences
// of coefficients along the axis, degree d-1 basis), chain-ruled by the box
// widths.
Vec grad(const BernsteinPoly& poly, const Vec& x);

// Max |eval - reference| over the given sample points.
double uniform_error(const BernsteinPoly& poly, const ScalarField& reference,
                     const std::vector<Vec>& sample_points);

// ---------------------------------------------------------------------------
// 1-D basis rows (exposed for tests and the batched grid paths)
// ---------------------------------------------------------------------------

// All d+1 Bernstein basis values at u via the de Casteljau-style recurrence.
void bernstein_basis_row(int d, double u, double* out);

// Derivatives of the degree-d basis at u: d * (b_{k-1}^{d-1} - b_k^{d-1}).
void bernstein_basis_derivative_row(int d, double u, double* out);

// ---------------------------------------------------------------------------
// Batched evaluation on tensor-product grids (mode-by-mode contraction).
// axes[j] holds the grid coordinates along dimension j; the result is
// row-major over the grid multi-index, last axis fastest. Used by the
// certification scans where per-point evaluation would be wasteful.
// ---------------------------------------------------------------------------

std::vector<double> eval_on_grid(const BernsteinPoly& poly, const std::vector<std::vector<double>>& axes);

// Partial derivative along `axis` on the same tensor grid.
std::vector<double> grad_on_grid(const BernsteinPoly& poly, const std::vector<std::vector<double>>& axes,
                                 int axis);

// Wraps the polynomial as a ScalarField (kind BernsteinSurrogate).
ScalarField as_scalar_field(const BernsteinPoly& poly);

}  // namespace roa
