#include "roa/systems.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <fstream>
#include <sstream>

namespace roa {

// ---------------------------------------------------------------------------
// SMIB
// ---------------------------------------------------------------------------

SmibParams SmibParams::defaults() {
  SmibParams p;
  p.delta_ep = std::asin(p.p_m * p.x_eq / (p.e_prime * p.e_b));
  return p;
}

void SmibParams::validate() const {
  if (!(h_inertia > 0) || !(x_eq > 0)) throw ConfigError("SmibParams: H and Xeq must be > 0");
  const double s = p_m * x_eq / (e_prime * e_b);
  if (std::abs(std::sin(delta_ep) - s) > 1e-12)
    throw ConfigError("SmibParams: delta_ep does not satisfy sin(delta_ep) = Pm Xeq / (E' Eb)");
}

namespace {

VectorField smib_field(const SmibParams& p) {
  const double b = p.e_prime * p.e_b / p.x_eq;
  return VectorField{
      2,
      [p, b](const Vec& x) {
        Vec f(2);
        f[0] = x[1];
        f[1] = (1.0 / (2.0 * p.h_inertia)) *
               (p.p_m - b * std::sin(x[0] + p.delta_ep) - p.d_damp * x[1]);
        return f;
      },
      "smib"};
}

}  // namespace

ScalarField smib_energy(const SmibParams& params) {
  params.validate();
  const double b = params.e_prime * params.e_b / params.x_eq;
  const double pm = params.p_m;
  const double h = params.h_inertia;
  const double dep = params.delta_ep;
  ScalarField f;
  f.dim = 2;
  f.kind = ScalarKind::SmibEnergy;
  f.describe = "smib energy";
  f.value = [=](const Vec& x) {
    return -pm * x[0] + b * (std::cos(dep) - std::cos(x[0] + dep)) + h * x[1] * x[1];
  };
  f.gradient = [=](const Vec& x) {
    Vec g(2);
    g[0] = -pm + b * std::sin(x[0] + dep);
    g[1] = 2.0 * h * x[1];
    return g;
  };
  return f;
}

// ---------------------------------------------------------------------------
// Linearization and the Lyapunov equation
// ---------------------------------------------------------------------------

Mat jacobian_fd(const VectorField& field, const Vec& x, double h_fd) {
  const int n = field.dim;
  Mat a(n, n);
  for (int j = 0; j < n; ++j) {
    const double h = h_fd * std::max(1.0, std::abs(x[j]));
    Vec xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    a.col(j) = (field(xp) - field(xm)) / (2.0 * h);
  }
  return a;
}

Mat solve_lyapunov(const Mat& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || n < 1) throw DimensionMismatch("solve_lyapunov: A must be square");

  Eigen::EigenSolver<Mat> eig(a);
  for (int i = 0; i < n; ++i)
    if (eig.eigenvalues()[i].real() >= 0.0)
      throw NotHurwitz("solve_lyapunov: eigenvalue with nonnegative real part: " +
                       std::to_string(eig.eigenvalues()[i].real()));

  // vec(A^T P + P A) = (I (x) A^T + A^T (x) I) vec(P), column-major vec
  const Mat at = a.transpose();
  Mat m = Mat::Zero(n * n, n * n);
  for (int blk = 0; blk < n; ++blk) m.block(blk * n, blk * n, n, n) = at;  // I (x) A^T
  for (int bi = 0; bi < n; ++bi)
    for (int bj = 0; bj < n; ++bj)
      for (int i = 0; i < n; ++i) m(bi * n + i, bj * n + i) += at(bi, bj);  // A^T (x) I

  Vec rhs = Vec::Zero(n * n);
  for (int i = 0; i < n; ++i) rhs[i * n + i] = -1.0;  // vec(-I)

  Eigen::FullPivLU<Mat> lu(m);
  if (!lu.isInvertible()) throw SingularSystem("solve_lyapunov: Kronecker system is singular");
  Vec p_vec = lu.solve(rhs);

  Mat p(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) p(i, j) = p_vec[j * n + i];
  p = 0.5 * (p + p.transpose());

  Eigen::LLT<Mat> llt(p);
  if (llt.info() != Eigen::Success)
    throw SingularSystem("solve_lyapunov: P is not positive definite");
  return p;
}

ScalarField quadratic_form(const Mat& p) {
  Mat sym = 0.5 * (p + p.transpose());
  const int n = static_cast<int>(sym.rows());
  ScalarField f;
  f.dim = n;
  f.kind = ScalarKind::Quadratic;
  f.describe = "quadratic x'Px";
  f.value = [sym](const Vec& x) { return x.dot(sym * x); };
  f.gradient = [sym](const Vec& x) { return Vec(2.0 * sym * x); };
  return f;
}

ScalarField quadratic_lf_from_linearization(const VectorField& field, double h_fd) {
  const Vec origin = Vec::Zero(field.dim);
  const Mat a = jacobian_fd(field, origin, h_fd);
  ScalarField f = quadratic_form(solve_lyapunov(a));
  f.describe = "quadratic from linearization";
  return f;
}

// ---------------------------------------------------------------------------
// Equilibria
// ---------------------------------------------------------------------------

VectorField shift_to_origin(const VectorField& field, const Vec& x_sep) {
  if (x_sep.size() != field.dim) throw DimensionMismatch("shift_to_origin: x_sep dimension mismatch");
  const double residual = field(x_sep).norm();
  if (residual > 1e-5)
    throw NotEquilibrium("shift_to_origin: ||f(x_sep)|| = " + std::to_string(residual));
  auto inner = field.eval;
  return VectorField{field.dim,
                     [inner, x_sep](const Vec& x) { return inner(x + x_sep); },
                     field.name + "_shifted"};
}

Vec refine_equilibrium(const VectorField& field, const Vec& seed, int iterations) {
  Vec x = seed;
  for (int it = 0; it < iterations; ++it) {
    const Vec fx = field(x);
    if (fx.norm() < 1e-13) break;
    const Mat j = jacobian_fd(field, x);
    Eigen::FullPivLU<Mat> lu(j);
    if (!lu.isInvertible())
      throw NotEquilibrium("refine_equilibrium: singular Jacobian near seed");
    x -= lu.solve(fx);
  }
  if (field(x).norm() > 1e-9)
    throw NotEquilibrium("refine_equilibrium: Newton did not converge from printed seed");
  return x;
}

// ---------------------------------------------------------------------------
// Builtin systems
// ---------------------------------------------------------------------------

namespace {

Vec make_vec(std::initializer_list<double> v) {
  Vec out(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

SystemBundle make_vdp() {
  // reverse-time Van der Pol oscillator; origin is the attractor
  VectorField f{2,
                [](const Vec& x) {
                  Vec out(2);
                  out[0] = -x[1];
                  out[1] = x[0] - x[1] * (1.0 - x[0] * x[0]);
                  return out;
                },
                "vdp"};
  SystemBundle b;
  b.name = "vdp";
  b.field = f;
  b.x_sep = Vec::Zero(2);
  b.box = Box(make_vec({-2.0, -2.7}), make_vec({2.0, 2.7}));
  Mat p(2, 2);
  p << 1.5, -0.5, -0.5, 1.0;
  ScalarField lit = quadratic_form(p);
  lit.describe = "quadratic x'Px (literature)";
  b.v2_candidates.push_back(lit);
  b.v2_candidates.push_back(quadratic_lf_from_linearization(f));
  b.recommended_fit = {3.0, 1, 75};
  b.recommended_t_max = 30.0;
  return b;
}

SystemBundle make_smib() {
  const SmibParams p = SmibParams::defaults();
  VectorField f = smib_field(p);
  SystemBundle b;
  b.name = "smib";
  b.field = f;
  b.x_sep = Vec::Zero(2);
  b.box = Box(make_vec({-0.75 * M_PI, -30.0}), make_vec({M_PI, 30.0}));
  b.v2_candidates.push_back(smib_energy(p));
  b.v2_candidates.push_back(quadratic_lf_from_linearization(f));
  b.recommended_fit = {10.0, 1, 60};
  b.recommended_t_max = 30.0;
  return b;
}

SystemBundle make_tmib() {
  VectorField f{4,
                [](const Vec& x) {
                  Vec out(4);
                  out[0] = x[1];
                  out[1] = 33.5849 - 1.8868 * std::cos(x[0] - x[2]) - 5.283 * std::cos(x[0]) -
                           16.9811 * std::sin(x[0] - x[2]) - 59.6226 * std::sin(x[0]) -
                           1.8868 * x[1];
                  out[2] = x[3];
                  out[3] = 11.3924 * std::sin(x[0] - x[2]) - 1.2658 * std::cos(x[0] - x[2]) -
                           3.2278 * std::cos(x[2]) - 1.2658 * x[3] - 99.3671 * std::sin(x[2]) +
                           48.481;
                  return out;
                },
                "tmib"};
  SystemBundle b;
  b.name = "tmib";
  b.x_sep = refine_equilibrium(f, make_vec({0.468, 0.0, 0.463, 0.0}));
  b.field = shift_to_origin(f, b.x_sep);
  b.field.name = "tmib";
  b.box = Box(make_vec({-2.0, -3.0, -2.0, -3.0}), make_vec({2.0, 3.0, 2.0, 3.0}));
  b.v2_candidates.push_back(quadratic_lf_from_linearization(b.field));
  b.recommended_fit = {1.0, 1, 20};
  b.recommended_t_max = 50.0;
  return b;
}

SystemBundle make_three_machine() {
  VectorField f{4,
                [](const Vec& x) {
                  Vec out(4);
                  out[0] = x[1];
                  out[1] = -std::sin(x[0]) - 0.5 * std::sin(x[0] - x[2]) - 0.4 * x[1];
                  out[2] = x[3];
                  out[3] = -0.5 * std::sin(x[2]) - 0.5 * std::sin(x[2] - x[0]) - 0.5 * x[3] + 0.05;
                  return out;
                },
                "three_machine"};
  SystemBundle b;
  b.name = "three_machine";
  b.x_sep = refine_equilibrium(f, make_vec({0.02001, 0.0, 0.06003, 0.0}));
  b.field = shift_to_origin(f, b.x_sep);
  b.field.name = "three_machine";
  b.box = Box(make_vec({-4.0, -0.75, -4.0, -0.75}), make_vec({4.0, 0.75, 4.0, 0.75}));
  b.v2_candidates.push_back(quadratic_lf_from_linearization(b.field));
  b.recommended_fit = {1.0, 1, 20};
  b.recommended_t_max = 50.0;
  return b;
}

}  // namespace

SystemBundle builtin(const std::string& name) {
  SystemBundle b;
  if (name == "vdp")
    b = make_vdp();
  else if (name == "smib")
    b = make_smib();
  else if (name == "tmib")
    b = make_tmib();
  else if (name == "three_machine")
    b = make_three_machine();
  else
    throw UnknownSystem("builtin: unknown system '" + name + "'");

  if (b.field(Vec::Zero(b.field.dim)).norm() > 1e-9)
    throw NotEquilibrium("builtin: shifted field is not zero at the origin");
  if (!b.box.contains(Vec::Zero(b.box.dim())))
    throw ConfigError("builtin: box must contain the origin");
  return b;
}

std::vector<std::string> builtin_names() { return {"vdp", "smib", "tmib", "three_machine"}; }

// ---------------------------------------------------------------------------
// User polynomials
// ---------------------------------------------------------------------------

ScalarField user_polynomial(const std::vector<std::vector<int>>& exponents,
                            const std::vector<double>& coefficients, int dim) {
  if (exponents.size() != coefficients.size() || exponents.empty())
    throw ConfigError("user_polynomial: need matching, nonempty exponent/coefficient lists");
  for (const auto& e : exponents) {
    if (static_cast<int>(e.size()) != dim)
      throw DimensionMismatch("user_polynomial: exponent tuple length must equal dimension");
    for (int v : e)
      if (v < 0) throw ConfigError("user_polynomial: exponents must be nonnegative");
  }
  auto exps = std::make_shared<std::vector<std::vector<int>>>(exponents);
  auto coefs = std::make_shared<std::vector<double>>(coefficients);

  ScalarField f;
  f.dim = dim;
  f.kind = ScalarKind::UserPolynomial;
  f.describe = "user polynomial (" + std::to_string(coefficients.size()) + " terms)";
  f.value = [exps, coefs, dim](const Vec& x) {
    double acc = 0.0;
    for (std::size_t t = 0; t < coefs->size(); ++t) {
      double term = (*coefs)[t];
      for (int j = 0; j < dim; ++j)
        for (int e = 0; e < (*exps)[t][j]; ++e) term *= x[j];
      acc += term;
    }
    return acc;
  };
  f.gradient = [exps, coefs, dim](const Vec& x) {
    Vec g = Vec::Zero(dim);
    for (std::size_t t = 0; t < coefs->size(); ++t) {
      for (int j = 0; j < dim; ++j) {
        const int ej = (*exps)[t][j];
        if (ej == 0) continue;
        double term = (*coefs)[t] * ej;
        for (int k = 0; k < dim; ++k) {
          const int e = (*exps)[t][k] - (k == j ? 1 : 0);
          for (int q = 0; q < e; ++q) term *= x[k];
        }
        g[j] += term;
      }
    }
    return g;
  };
  return f;
}

ScalarField load_user_polynomial(const std::string& path, int expected_dim) {
  std::ifstream in(path);
  if (!in) throw IoError("load_user_polynomial: cannot open " + path);
  std::vector<std::vector<int>> exps;
  std::vector<double> coefs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<int> e(expected_dim);
    bool any = false;
    for (int j = 0; j < expected_dim; ++j) {
      if (!(ss >> e[j])) {
        if (j == 0) break;  // blank line
        throw ConfigError("load_user_polynomial: line " + std::to_string(line_no) +
                          ": expected " + std::to_string(expected_dim) + " exponents");
      }
      any = true;
    }
    if (!any) continue;
    double c;
    if (!(ss >> c))
      throw ConfigError("load_user_polynomial: line " + std::to_string(line_no) +
                        ": missing coefficient");
    exps.push_back(std::move(e));
    coefs.push_back(c);
  }
  return user_polynomial(exps, coefs, expected_dim);
}

}  // namespace roa
