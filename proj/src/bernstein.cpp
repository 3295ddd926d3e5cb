#include "roa/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace roa {

void BernsteinPoly::validate() const {
  box.validate();
  if (dims != box.dim()) throw DimensionMismatch("BernsteinPoly: box/dims mismatch");
  if (coeffs.size() != tensor_grid_size(dims, degree))
    throw DimensionMismatch("BernsteinPoly: coefficient tensor size does not match (d+1)^n");
}

double BernsteinPoly::min_coeff() const {
  return *std::min_element(coeffs.begin(), coeffs.end());
}
double BernsteinPoly::max_coeff() const {
  return *std::max_element(coeffs.begin(), coeffs.end());
}

BernsteinPoly fit(const ValueGrid& grid) {
  grid.validate();
  BernsteinPoly poly;
  poly.dims = grid.dims;
  poly.degree = grid.degree;
  poly.box = grid.box;
  poly.coeffs = grid.values;
  return poly;
}

void bernstein_basis_row(int d, double u, double* out) {
  // Triangular recurrence; stays well-scaled for any d since every entry is a
  // product of numbers built from u and (1-u) convex combinations.
  const double v = 1.0 - u;
  out[0] = 1.0;
  for (int r = 1; r <= d; ++r) {
    out[r] = u * out[r - 1];
    for (int k = r - 1; k >= 1; --k) out[k] = v * out[k] + u * out[k - 1];
    out[0] *= v;
  }
}

void bernstein_basis_derivative_row(int d, double u, double* out) {
  if (d == 0) {
    out[0] = 0.0;
    return;
  }
  std::vector<double> lower(d);  // degree d-1 row
  bernstein_basis_row(d - 1, u, lower.data());
  out[0] = -static_cast<double>(d) * lower[0];
  for (int k = 1; k < d; ++k) out[k] = static_cast<double>(d) * (lower[k - 1] - lower[k]);
  out[d] = static_cast<double>(d) * lower[d - 1];
}

namespace {

// Contracts the row-major tensor against one weight row per axis, producing
// the scalar value at a single point. O((d+1)^n).
double contract_point(const std::vector<double>& tensor, int n, const std::vector<const double*>& rows,
                      const std::vector<int>& lens) {
  std::vector<double> buf(tensor);
  std::size_t size = tensor.size();
  for (int axis = n - 1; axis >= 0; --axis) {
    const int len = lens[axis];
    const double* w = rows[axis];
    const std::size_t out_size = size / len;
    for (std::size_t r = 0; r < out_size; ++r) {
      const double* src = buf.data() + r * len;
      double acc = 0.0;
      for (int k = 0; k < len; ++k) acc += src[k] * w[k];
      buf[r] = acc;
    }
    size = out_size;
  }
  return buf[0];
}

Vec to_unit_clamped_free(const BernsteinPoly& poly, const Vec& x) {
  if (x.size() != poly.dims) throw DimensionMismatch("BernsteinPoly: point dimension mismatch");
  return poly.box.to_unit(x);  // points outside the box extrapolate
}

}  // namespace

double eval(const BernsteinPoly& poly, const Vec& x) {
  const Vec u = to_unit_clamped_free(poly, x);
  const int n = poly.dims;
  const int d = poly.degree;
  std::vector<double> basis(static_cast<std::size_t>(n) * (d + 1));
  std::vector<const double*> rows(n);
  std::vector<int> lens(n, d + 1);
  for (int j = 0; j < n; ++j) {
    bernstein_basis_row(d, u[j], basis.data() + static_cast<std::size_t>(j) * (d + 1));
    rows[j] = basis.data() + static_cast<std::size_t>(j) * (d + 1);
  }
  return contract_point(poly.coeffs, n, rows, lens);
}

Vec grad(const BernsteinPoly& poly, const Vec& x) {
  const Vec u = to_unit_clamped_free(poly, x);
  const int n = poly.dims;
  const int d = poly.degree;
  const Vec widths = poly.box.widths();

  std::vector<double> basis_d(static_cast<std::size_t>(n) * (d + 1));
  for (int j = 0; j < n; ++j)
    bernstein_basis_row(d, u[j], basis_d.data() + static_cast<std::size_t>(j) * (d + 1));

  Vec g(n);
  if (d == 0) {
    g.setZero();
    return g;
  }

  // strides of the row-major coefficient tensor
  std::vector<std::size_t> stride(n);
  stride[n - 1] = 1;
  for (int j = n - 2; j >= 0; --j) stride[j] = stride[j + 1] * (d + 1);

  std::vector<double> lower(d);  // degree d-1 basis along the differentiated axis
  std::vector<double> diff;      // forward differences of coefficients along that axis
  for (int axis = 0; axis < n; ++axis) {
    bernstein_basis_row(d - 1, u[axis], lower.data());

    // diff tensor has extent d along `axis`, d+1 elsewhere
    std::size_t diff_size = 1;
    for (int j = 0; j < n; ++j) diff_size *= (j == axis) ? d : (d + 1);
    diff.assign(diff_size, 0.0);

    std::vector<int> lens(n, d + 1);
    lens[axis] = d;
    std::vector<std::size_t> dstride(n);
    dstride[n - 1] = 1;
    for (int j = n - 2; j >= 0; --j) dstride[j] = dstride[j + 1] * lens[j + 1];

    std::vector<int> idx(n, 0);
    for (std::size_t i = 0; i < diff_size; ++i) {
      std::size_t src = 0;
      for (int j = 0; j < n; ++j) src += static_cast<std::size_t>(idx[j]) * stride[j];
      diff[i] = poly.coeffs[src + stride[axis]] - poly.coeffs[src];
      for (int j = n - 1; j >= 0; --j) {
        if (++idx[j] < lens[j]) break;
        idx[j] = 0;
      }
    }

    std::vector<const double*> rows(n);
    for (int j = 0; j < n; ++j)
      rows[j] = (j == axis) ? lower.data() : basis_d.data() + static_cast<std::size_t>(j) * (d + 1);
    g[axis] = static_cast<double>(d) * contract_point(diff, n, rows, lens) / widths[axis];
  }
  return g;
}

double uniform_error(const BernsteinPoly& poly, const ScalarField& reference,
                     const std::vector<Vec>& sample_points) {
  double worst = 0.0;
  for (const Vec& x : sample_points)
    worst = std::max(worst, std::abs(eval(poly, x) - reference(x)));
  return worst;
}

namespace {

// One mode contraction: tensor laid out [prefix, k (len), suffix] -> [prefix,
// i (m), suffix] against the m x len matrix B (row-major).
void contract_mode(const std::vector<double>& in, std::vector<double>& out, std::size_t prefix,
                   std::size_t len, std::size_t suffix, const std::vector<double>& B, std::size_t m) {
  out.assign(prefix * m * suffix, 0.0);
  for (std::size_t p = 0; p < prefix; ++p) {
    const double* ip = in.data() + p * len * suffix;
    double* op = out.data() + p * m * suffix;
    for (std::size_t i = 0; i < m; ++i) {
      const double* brow = B.data() + i * len;
      double* orow = op + i * suffix;
      for (std::size_t k = 0; k < len; ++k) {
        const double w = brow[k];
        if (w == 0.0) continue;
        const double* irow = ip + k * suffix;
        for (std::size_t s = 0; s < suffix; ++s) orow[s] += w * irow[s];
      }
    }
  }
}

std::vector<double> grid_contraction(const BernsteinPoly& poly,
                                     const std::vector<std::vector<double>>& axes,
                                     int derivative_axis) {
  poly.validate();
  const int n = poly.dims;
  const int d = poly.degree;
  if (static_cast<int>(axes.size()) != n)
    throw DimensionMismatch("eval_on_grid: axes count must equal dims");

  // Basis matrix per axis: m_j x (d+1), derivative row on the requested axis.
  std::vector<std::vector<double>> B(n);
  std::vector<std::size_t> m(n);
  for (int j = 0; j < n; ++j) {
    m[j] = axes[j].size();
    if (m[j] == 0) throw ConfigError("eval_on_grid: empty axis");
    B[j].resize(m[j] * (d + 1));
    for (std::size_t i = 0; i < m[j]; ++i) {
      const double u = (axes[j][i] - poly.box.lo[j]) / (poly.box.hi[j] - poly.box.lo[j]);
      if (j == derivative_axis)
        bernstein_basis_derivative_row(d, u, B[j].data() + i * (d + 1));
      else
        bernstein_basis_row(d, u, B[j].data() + i * (d + 1));
    }
  }

  // Contract axes from last to first; the tensor stays row-major with
  // already-contracted axes (grid indices) trailing.
  std::vector<double> cur = poly.coeffs;
  std::vector<double> next;
  std::size_t suffix = 1;
  std::size_t prefix = 1;
  for (int j = 0; j < n; ++j) prefix *= (d + 1);
  for (int axis = n - 1; axis >= 0; --axis) {
    prefix /= (d + 1);
    contract_mode(cur, next, prefix, static_cast<std::size_t>(d + 1), suffix, B[axis], m[axis]);
    cur.swap(next);
    suffix *= m[axis];
  }
  if (derivative_axis >= 0) {
    const double w = poly.box.hi[derivative_axis] - poly.box.lo[derivative_axis];
    for (double& v : cur) v /= w;
  }
  return cur;
}

}  // namespace

std::vector<double> eval_on_grid(const BernsteinPoly& poly,
                                 const std::vector<std::vector<double>>& axes) {
  return grid_contraction(poly, axes, -1);
}

std::vector<double> grad_on_grid(const BernsteinPoly& poly,
                                 const std::vector<std::vector<double>>& axes, int axis) {
  if (axis < 0 || axis >= poly.dims) throw DimensionMismatch("grad_on_grid: axis out of range");
  return grid_contraction(poly, axes, axis);
}

ScalarField as_scalar_field(const BernsteinPoly& poly) {
  auto shared = std::make_shared<BernsteinPoly>(poly);
  ScalarField f;
  f.dim = poly.dims;
  f.kind = ScalarKind::BernsteinSurrogate;
  f.describe = "bernstein d=" + std::to_string(poly.degree);
  f.value = [shared](const Vec& x) { return eval(*shared, x); };
  f.gradient = [shared](const Vec& x) { return grad(*shared, x); };
  return f;
}

}  // namespace roa
