#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace roa {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct UnknownSystem : Error {
  using Error::Error;
};
struct NotEquilibrium : Error {
  using Error::Error;
};
struct NotHurwitz : Error {
  using Error::Error;
};
struct SingularSystem : Error {
  using Error::Error;
};
struct GridTooLarge : Error {
  using Error::Error;
};
struct StepUnderflow : Error {
  using Error::Error;
};
struct NoValidLevel : Error {
  NoValidLevel(const std::string& what, Vec witness, double margin)
      : Error(what), worst_witness(std::move(witness)), worst_margin(margin) {}
  Vec worst_witness;
  double worst_margin = 0.0;
};
struct ConfigError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Axis-aligned domain box [lo, hi]^n
// ---------------------------------------------------------------------------

struct Box {
  Vec lo;
  Vec hi;

  Box() = default;
  Box(Vec lower, Vec upper) : lo(std::move(lower)), hi(std::move(upper)) {
    validate();
  }

  int dim() const { return static_cast<int>(lo.size()); }

  void validate() const {
    if (lo.size() != hi.size() || lo.size() == 0)
      throw DimensionMismatch("Box: lower/upper dimension mismatch");
    for (int j = 0; j < lo.size(); ++j) {
      if (!(lo[j] < hi[j]))
        throw ConfigError("Box: lower must be strictly below upper in every dimension");
      if (!std::isfinite(lo[j]) || !std::isfinite(hi[j]))
        throw ConfigError("Box: bounds must be finite");
    }
  }

  bool contains(const Vec& x, double slack = 0.0) const {
    if (x.size() != lo.size()) return false;
    for (int j = 0; j < x.size(); ++j)
      if (x[j] < lo[j] - slack || x[j] > hi[j] + slack) return false;
    return true;
  }

  Vec widths() const { return hi - lo; }

  double diameter() const { return (hi - lo).norm(); }

  // Affine map to the unit cube and back.
  Vec to_unit(const Vec& x) const {
    return (x - lo).cwiseQuotient(hi - lo);
  }
  Vec from_unit(const Vec& u) const {
    return lo + u.cwiseProduct(hi - lo);
  }
};

// ---------------------------------------------------------------------------
// Vector field  x' = f(x)
// ---------------------------------------------------------------------------

struct VectorField {
  int dim = 0;
  std::function<Vec(const Vec&)> eval;
  std::string name;

  Vec operator()(const Vec& x) const {
    if (x.size() != dim)
      throw DimensionMismatch("VectorField '" + name + "': state has dimension " +
                              std::to_string(x.size()) + ", expected " + std::to_string(dim));
    return eval(x);
  }
};

// ---------------------------------------------------------------------------
// Scalar candidate function with gradient (V1 / V2 candidates)
// ---------------------------------------------------------------------------

enum class ScalarKind { Quadratic, SmibEnergy, BernsteinSurrogate, UserPolynomial };

struct ScalarField {
  int dim = 0;
  ScalarKind kind = ScalarKind::Quadratic;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  std::string describe;  // short human-readable provenance for reports

  double operator()(const Vec& x) const {
    if (x.size() != dim) throw DimensionMismatch("ScalarField: dimension mismatch");
    return value(x);
  }
  Vec grad(const Vec& x) const {
    if (x.size() != dim) throw DimensionMismatch("ScalarField: dimension mismatch");
    return gradient(x);
  }
};

// x' = -x, handy in tests and as a sanity baseline
inline VectorField linear_decay_field(int n) {
  return VectorField{n, [](const Vec& x) { return Vec(-x); }, "linear_decay"};
}

inline VectorField zero_field(int n) {
  return VectorField{n, [n](const Vec&) { return Vec(Vec::Zero(n)); }, "zero"};
}

}  // namespace roa
