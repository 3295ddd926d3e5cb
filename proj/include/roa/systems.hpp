#pragma once

#include "roa/types.hpp"

#include <string>
#include <vector>

namespace roa {

// ---------------------------------------------------------------------------
// SMIB swing-equation parameters. delta_ep is the stable machine angle,
// derived from the equilibrium condition sin(delta_ep) = Pm Xeq / (E' Eb)
// (small-angle root in (0, pi/2)).
// ---------------------------------------------------------------------------

struct SmibParams {
  double h_inertia = 0.0106;  // s^2/rad
  double x_eq = 0.28;         // pu
  double p_m = 1.0;           // pu
  double e_b = 1.0;           // pu
  double e_prime = 1.21;      // pu
  double d_damp = 0.03;
  double delta_ep = 0.0;      // rad; filled by defaults()

  static SmibParams defaults();
  void validate() const;
};

ScalarField smib_energy(const SmibParams& params);

// ---------------------------------------------------------------------------
// Quadratic Lyapunov synthesis from the linearization
// ---------------------------------------------------------------------------

// Central-difference Jacobian of the field at x.
Mat jacobian_fd(const VectorField& field, const Vec& x, double h_fd = 1e-6);

// Solves A^T P + P A = -I through the dense n^2 x n^2 Kronecker system.
// Throws NotHurwitz if A has an eigenvalue with nonnegative real part,
// SingularSystem if the solve degenerates.
Mat solve_lyapunov(const Mat& a);

// V(x) = x^T P x as a ScalarField (P symmetrized).
ScalarField quadratic_form(const Mat& p);

// Linearize at the origin and return V(x) = x^T P x with A^T P + P A = -I.
ScalarField quadratic_lf_from_linearization(const VectorField& field, double h_fd = 1e-6);

// ---------------------------------------------------------------------------
// Equilibrium handling
// ---------------------------------------------------------------------------

// g(x) := field(x + x_sep). Requires ||field(x_sep)|| <= 1e-5.
VectorField shift_to_origin(const VectorField& field, const Vec& x_sep);

// Newton-refines an approximate equilibrium to machine precision.
Vec refine_equilibrium(const VectorField& field, const Vec& seed, int iterations = 25);

// ---------------------------------------------------------------------------
// Builtin benchmark systems
// ---------------------------------------------------------------------------

struct FitParams {
  double lambda = 1.0;
  int beta = 1;
  int degree = 20;
};

struct SystemBundle {
  std::string name;
  VectorField field;  // shifted: equilibrium at the origin
  Vec x_sep;          // equilibrium in original coordinates
  Box box;
  std::vector<ScalarField> v2_candidates;  // preferred candidate first
  FitParams recommended_fit;
  double recommended_t_max = 30.0;
};

// Names: "vdp", "smib", "tmib", "three_machine".
SystemBundle builtin(const std::string& name);

std::vector<std::string> builtin_names();

// ---------------------------------------------------------------------------
// User-supplied polynomial V2 candidates
// ---------------------------------------------------------------------------

// Text format: one term per line, n nonnegative integer exponents followed by
// the coefficient; '#' starts a comment.
ScalarField load_user_polynomial(const std::string& path, int expected_dim);

ScalarField user_polynomial(const std::vector<std::vector<int>>& exponents,
                            const std::vector<double>& coefficients, int dim);

}  // namespace roa
