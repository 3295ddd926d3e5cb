#include "roa/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace roa {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Converged: return "converged";
    case Outcome::Escaped: return "escaped";
    case Outcome::Undetermined: return "undetermined";
  }
  return "unknown";
}

namespace {

// Dormand-Prince 5(4) tableau (the ode45 pair). FSAL: stage 7 is f at the
// accepted endpoint and doubles as stage 1 of the next step.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
// b - b_hat, error weights (includes the FSAL stage)
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;

bool finite(const Vec& v) { return v.allFinite(); }

// Cubic Hermite interpolant on [t0, t0+h] from endpoint states and slopes.
Vec hermite(const Vec& y0, const Vec& f0, const Vec& y1, const Vec& f1, double h, double theta) {
  const double t2 = theta * theta;
  const double t3 = t2 * theta;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + theta;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * y0 + (h10 * h) * f0 + h01 * y1 + (h11 * h) * f1;
}

double error_norm(const Vec& err, const Vec& y, const Vec& ynew, double rel, double abs) {
  double acc = 0.0;
  for (int i = 0; i < err.size(); ++i) {
    const double sc = abs + rel * std::max(std::abs(y[i]), std::abs(ynew[i]));
    const double q = err[i] / sc;
    acc += q * q;
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

struct StepResult {
  Vec y;     // accepted endpoint state
  Vec f;     // field at endpoint (FSAL)
  double h;  // step actually taken
};

class Dopri5 {
 public:
  Dopri5(const VectorField& field, const IntegratorConfig& cfg, Vec y0, double t_end)
      : field_(field), cfg_(cfg), t_(0.0), y_(std::move(y0)), t_end_(t_end) {
    f_ = field_(y_);
    if (!finite(f_)) throw Error("integrate: vector field non-finite at initial state");
    h_ = initial_step();
    h_min_ = 1e-14 * std::max(t_end_, cfg_.t_max);
  }

  double t() const { return t_; }
  const Vec& y() const { return y_; }
  const Vec& f() const { return f_; }
  bool done() const { return t_ >= t_end_ - h_min_; }

  // Advances one accepted step; returns false if states went non-finite and
  // no further progress is possible (caller treats as escape).
  bool step(StepResult& out) {
    int rejects = 0;
    for (;;) {
      double h = std::min(h_, t_end_ - t_);
      if (h < h_min_) {
        if (nonfinite_seen_) return false;
        throw StepUnderflow("integrate: adaptive step collapsed at t=" + std::to_string(t_));
      }
      Vec k1 = f_;
      Vec k2 = field_(y_ + h * (A21 * k1));
      Vec k3 = field_(y_ + h * (A31 * k1 + A32 * k2));
      Vec k4 = field_(y_ + h * (A41 * k1 + A42 * k2 + A43 * k3));
      Vec k5 = field_(y_ + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4));
      Vec k6 = field_(y_ + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5));
      Vec ynew = y_ + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6);
      if (!finite(ynew)) {
        nonfinite_seen_ = true;
        h_ = h / 2;
        continue;
      }
      Vec k7 = field_(ynew);
      if (!finite(k7)) {
        nonfinite_seen_ = true;
        h_ = h / 2;
        continue;
      }
      Vec err = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
      const double en = error_norm(err, y_, ynew, cfg_.rel_tol, cfg_.abs_tol);
      if (en <= 1.0 || h <= h_min_ * 2) {
        out.y = ynew;
        out.f = k7;
        out.h = h;
        t_ += h;
        y_ = ynew;
        f_ = k7;
        const double grow = (en > 0) ? 0.9 * std::pow(en, -0.2) : 5.0;
        h_ = h * std::clamp(grow, 0.2, 5.0);
        return true;
      }
      h_ = h * std::clamp(0.9 * std::pow(en, -0.2), 0.2, 0.9);
      if (++rejects > 1000) throw StepUnderflow("integrate: step control failed to converge");
    }
  }

 private:
  double initial_step() const {
    const double ynorm = y_.norm();
    const double fnorm = f_.norm();
    double h = (fnorm > 1e-12) ? 0.01 * (ynorm + cfg_.abs_tol * 100 + 1e-6) / fnorm : 0.1;
    return std::clamp(h, 1e-8, std::min(0.1, t_end_));
  }

  const VectorField& field_;
  const IntegratorConfig& cfg_;
  double t_;
  Vec y_;
  Vec f_;  // field at (t_, y_)
  double t_end_;
  double h_ = 0.0;
  double h_min_ = 0.0;
  bool nonfinite_seen_ = false;
};

}  // namespace

Trajectory integrate(const VectorField& field, const Vec& x0, const IntegratorConfig& cfg) {
  cfg.validate();
  if (x0.size() != field.dim) throw DimensionMismatch("integrate: state dimension mismatch");
  if (!finite(x0)) throw Error("integrate: initial state not finite");
  if (cfg.dt_out > cfg.t_max) throw ConfigError("integrate: dt_out must not exceed t_max");

  const long k_max = static_cast<long>(std::floor(cfg.t_max / cfg.dt_out + 1e-9));
  Trajectory traj;
  traj.x0 = x0;
  traj.dt = cfg.dt_out;
  traj.states.reserve(static_cast<std::size_t>(k_max) + 1);
  traj.states.push_back(x0);
  traj.status = ConvergenceStatus::undetermined();

  if (x0.norm() >= cfg.r_esc) {
    traj.status = ConvergenceStatus::escaped(0.0);
    return traj;
  }

  Dopri5 stepper(field, cfg, x0, k_max * cfg.dt_out);
  long k_next = 1;

  auto emit = [&](const Vec& state, long k) -> bool {
    traj.states.push_back(state);
    const double nrm = state.norm();
    const double tk = k * cfg.dt_out;
    if (nrm >= cfg.r_esc) {
      traj.status = ConvergenceStatus::escaped(tk);
      return false;
    }
    if (nrm <= cfg.eps_conv) {
      traj.status = ConvergenceStatus::converged(tk);
      return false;
    }
    return true;
  };

  while (!stepper.done() && k_next <= k_max) {
    const double t0 = stepper.t();
    const Vec y0 = stepper.y();
    const Vec f0 = stepper.f();
    StepResult s;
    if (!stepper.step(s)) {
      // Persistent non-finite states: blow-up past representable range.
      traj.status = ConvergenceStatus::escaped((k_next - 1) * cfg.dt_out);
      return traj;
    }
    const double t1 = t0 + s.h;
    while (k_next <= k_max) {
      const double tk = k_next * cfg.dt_out;
      if (tk > t1 * (1.0 + 1e-14)) break;
      const double theta = std::clamp((tk - t0) / s.h, 0.0, 1.0);
      Vec state = hermite(y0, f0, s.y, s.f, s.h, theta);
      if (!finite(state)) {
        traj.status = ConvergenceStatus::escaped((k_next - 1) * cfg.dt_out);
        return traj;
      }
      ++k_next;
      if (!emit(state, k_next - 1)) return traj;
    }
  }
  return traj;
}

Vec flow(const VectorField& field, const Vec& x0, double t, const IntegratorConfig& cfg) {
  if (t < 0) throw ConfigError("flow: t must be >= 0");
  if (x0.size() != field.dim) throw DimensionMismatch("flow: state dimension mismatch");
  if (t == 0.0) return x0;
  cfg.validate();

  Dopri5 stepper(field, cfg, x0, t);
  while (!stepper.done()) {
    const double t0 = stepper.t();
    const Vec y0 = stepper.y();
    const Vec f0 = stepper.f();
    StepResult s;
    if (!stepper.step(s)) throw Error("flow: state became non-finite before t");
    const double t1 = t0 + s.h;
    if (t <= t1 * (1.0 + 1e-14) && t >= t0) {
      const double theta = std::clamp((t - t0) / s.h, 0.0, 1.0);
      Vec out = hermite(y0, f0, s.y, s.f, s.h, theta);
      if (!finite(out)) throw Error("flow: state became non-finite at t");
      return out;
    }
  }
  return stepper.y();
}

ConvergenceStatus classify(const Trajectory& traj, const IntegratorConfig& cfg) {
  if (traj.states.empty()) throw Error("classify: empty trajectory");
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    if (traj.states[k].norm() >= cfg.r_esc)
      return ConvergenceStatus::escaped(static_cast<double>(k) * traj.dt);
  }
  const double final_norm = traj.states.back().norm();
  if (final_norm <= cfg.eps_conv)
    return ConvergenceStatus::converged(static_cast<double>(traj.states.size() - 1) * traj.dt);
  return ConvergenceStatus::undetermined();
}

}  // namespace roa
