#pragma once

#include "roa/integrate.hpp"
#include "roa/types.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace roa {

// ---------------------------------------------------------------------------
// Converse Lyapunov parameters: V*(x) = 1 - exp(-lambda * W(x)),
// W(x) = integral of ||phi(x,t)||^(2*beta) dt, and 1 off the attracted set.
// ---------------------------------------------------------------------------

struct ConverseParams {
  double lambda = 1.0;
  int beta = 1;

  void validate() const {
    if (!(lambda > 0)) throw ConfigError("ConverseParams: lambda must be > 0");
    if (beta < 1) throw ConfigError("ConverseParams: beta must be >= 1");
  }
};

// ---------------------------------------------------------------------------
// Row-major multi-index grid over (d+1)^n nodes
// ---------------------------------------------------------------------------

constexpr std::size_t kDefaultGridCap = 10'000'000;

// (d+1)^n with overflow/cap guard.
std::size_t tensor_grid_size(int n, int d, std::size_t cap = kDefaultGridCap);

// Nodes of the degree-d Bernstein grid mapped into the box: coordinate j of
// node (k_1,...,k_n) is a_j + (k_j/d)(b_j - a_j). Row-major order, last index
// fastest.
std::vector<Vec> bernstein_nodes(const Box& box, int d, std::size_t cap = kDefaultGridCap);

// ---------------------------------------------------------------------------
// Trajectory dataset: D[i][j] = ||S^-1 phi(x_i, (j-1) dt)||_2  (S = diag(state_scale))
// ---------------------------------------------------------------------------

struct TrajectoryDataset {
  std::vector<Vec> points;
  std::vector<std::vector<double>> norms;  // row i: samples; converged rows padded with 0
  std::vector<ConvergenceStatus> statuses;
  double dt = 0.0;
  Vec state_scale;  // per-dimension scaling applied before taking norms (all ones = plain norm)
};

// Integrates every point and records the sampled state norms. Rows that
// converge before t_max are padded with zeros (tail contribution below the
// quadrature tolerance); escaped rows are truncated at the escape sample.
// Per-row integrator failures are recorded as Undetermined without aborting
// the batch. Deterministic and data-parallel over rows.
//
// state_scale: optional per-dimension divisors applied to the state before
// the norm (empty = all ones, the plain Euclidean norm of the paper's data
// matrix). The pipeline passes the box widths here to fit in normalized
// coordinates.
TrajectoryDataset generate_dataset(const VectorField& field, const std::vector<Vec>& points,
                                   const IntegratorConfig& cfg, const Vec& state_scale = Vec());

// Left-endpoint rectangle rule for W: sum of D^(2 beta) * dt over the row.
// Escaped rows map to +infinity.
double w_value(const std::vector<double>& row, int beta, double dt, const ConvergenceStatus& status);

// V* value from W: 1 - exp(-lambda W), with +inf -> 1.
double converse_value(double w, double lambda);

// ---------------------------------------------------------------------------
// Sampled converse-LF values on the Bernstein node grid
// ---------------------------------------------------------------------------

struct ValueGrid {
  int dims = 0;
  int degree = 0;
  std::vector<double> values;  // (d+1)^n, row-major, all in [0,1]
  Box box;
  ConverseParams params;

  // provenance
  Vec state_scale;
  std::size_t undetermined_count = 0;
  std::uint64_t config_hash = 0;

  void validate() const;
};

struct ValueGridOptions {
  Vec state_scale;                  // empty = plain norms
  double max_undetermined_frac = 0.01;
  std::size_t grid_cap = kDefaultGridCap;
};

// Simulates all nodes and evaluates the converse LF per node. Undetermined
// rows are conservatively assigned the off-ROA value 1 and counted; fails if
// their fraction exceeds max_undetermined_frac. Deterministic given inputs.
ValueGrid build_value_grid(const VectorField& field, const Box& box, int d,
                           const ConverseParams& params, const IntegratorConfig& cfg,
                           const ValueGridOptions& opts = {});

}  // namespace roa
