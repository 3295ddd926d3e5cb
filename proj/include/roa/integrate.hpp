#pragma once

#include "roa/types.hpp"

#include <optional>
#include <vector>

namespace roa {

// ---------------------------------------------------------------------------
// Trajectory classification
// ---------------------------------------------------------------------------

enum class Outcome { Converged, Escaped, Undetermined };

struct ConvergenceStatus {
  Outcome outcome = Outcome::Undetermined;
  double time = 0.0;  // t_conv / t_esc; unused for Undetermined

  static ConvergenceStatus converged(double t) { return {Outcome::Converged, t}; }
  static ConvergenceStatus escaped(double t) { return {Outcome::Escaped, t}; }
  static ConvergenceStatus undetermined() { return {Outcome::Undetermined, 0.0}; }

  bool is_converged() const { return outcome == Outcome::Converged; }
  bool is_escaped() const { return outcome == Outcome::Escaped; }
};

const char* outcome_name(Outcome o);

// ---------------------------------------------------------------------------
// Integrator configuration
// ---------------------------------------------------------------------------

struct IntegratorConfig {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double dt_out = 0.01;   // fixed output grid spacing
  double t_max = 30.0;    // integration horizon
  double eps_conv = 1e-4; // terminal-norm threshold for Converged
  double r_esc = 1e9;     // norm threshold for Escaped

  void validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0)) throw ConfigError("IntegratorConfig: tolerances must be > 0");
    if (!(dt_out > 0)) throw ConfigError("IntegratorConfig: dt_out must be > 0");
    if (!(t_max > 0)) throw ConfigError("IntegratorConfig: t_max must be > 0");
    if (!(eps_conv > 0) || !(eps_conv < r_esc))
      throw ConfigError("IntegratorConfig: require 0 < eps_conv < r_esc");
  }

  // Defaults tied to a domain box: escape radius 10x the box diameter.
  static IntegratorConfig for_box(const Box& box, double t_max_ = 30.0) {
    IntegratorConfig cfg;
    cfg.t_max = t_max_;
    cfg.r_esc = 10.0 * box.diameter();
    return cfg;
  }
};

// ---------------------------------------------------------------------------
// Trajectory: states on the uniform grid 0, dt, 2dt, ...
// ---------------------------------------------------------------------------

struct Trajectory {
  Vec x0;
  double dt = 0.0;
  std::vector<Vec> states;  // states[k] ~ x(k*dt); truncated on early stop
  ConvergenceStatus status;
};

// Solution map samples via adaptive embedded 4(5) Runge-Kutta with cubic
// Hermite dense output on the fixed grid. Stops early once the state norm
// drops below eps_conv (Converged) or exceeds r_esc (Escaped). Non-finite
// states are reported as Escaped at the last finite output time.
// Throws StepUnderflow if the adaptive step collapses below 1e-14 * t_max
// while states remain finite and moderate.
Trajectory integrate(const VectorField& field, const Vec& x0, const IntegratorConfig& cfg);

// phi_f(x0, t). flow(field, x0, 0) == x0 exactly. Ignores eps_conv/r_esc
// cutoffs except for the non-finite guard: the flow is evaluated at t even if
// the norm thresholds are crossed on the way.
Vec flow(const VectorField& field, const Vec& x0, double t, const IntegratorConfig& cfg);

// Pure re-classification from sampled states: Converged if the final norm is
// <= eps_conv, Escaped if any sampled norm is >= r_esc, else Undetermined.
ConvergenceStatus classify(const Trajectory& traj, const IntegratorConfig& cfg);

}  // namespace roa
