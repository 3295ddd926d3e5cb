#include "roa/converse.hpp"

#include "roa/hash.hpp"
#include "roa/parallel.hpp"

#include <cmath>
#include <string>

namespace roa {

std::size_t tensor_grid_size(int n, int d, std::size_t cap) {
  if (n < 1) throw ConfigError("grid: dimension must be >= 1");
  if (d < 1) throw ConfigError("grid: degree must be >= 1");
  std::size_t total = 1;
  for (int j = 0; j < n; ++j) {
    const std::size_t next = total * static_cast<std::size_t>(d + 1);
    if (next / static_cast<std::size_t>(d + 1) != total || next > cap)
      throw GridTooLarge("grid: (d+1)^n = (" + std::to_string(d + 1) + ")^" + std::to_string(n) +
                         " exceeds cap " + std::to_string(cap));
    total = next;
  }
  return total;
}

std::vector<Vec> bernstein_nodes(const Box& box, int d, std::size_t cap) {
  box.validate();
  const int n = box.dim();
  const std::size_t total = tensor_grid_size(n, d, cap);

  // Per-dimension node coordinates a_j + (k/d)(b_j - a_j).
  std::vector<std::vector<double>> axis(n);
  for (int j = 0; j < n; ++j) {
    axis[j].resize(d + 1);
    for (int k = 0; k <= d; ++k)
      axis[j][k] = box.lo[j] + (static_cast<double>(k) / d) * (box.hi[j] - box.lo[j]);
    axis[j][d] = box.hi[j];  // exact endpoint
  }

  std::vector<Vec> nodes(total, Vec(n));
  std::vector<int> idx(n, 0);
  for (std::size_t i = 0; i < total; ++i) {
    for (int j = 0; j < n; ++j) nodes[i][j] = axis[j][idx[j]];
    // advance row-major multi-index, last dimension fastest
    for (int j = n - 1; j >= 0; --j) {
      if (++idx[j] <= d) break;
      idx[j] = 0;
    }
  }
  return nodes;
}

namespace {

double scaled_norm(const Vec& x, const Vec& scale) {
  if (scale.size() == 0) return x.norm();
  return x.cwiseQuotient(scale).norm();
}

}  // namespace

TrajectoryDataset generate_dataset(const VectorField& field, const std::vector<Vec>& points,
                                   const IntegratorConfig& cfg, const Vec& state_scale) {
  cfg.validate();
  if (state_scale.size() != 0 && state_scale.size() != field.dim)
    throw DimensionMismatch("generate_dataset: state_scale dimension mismatch");
  const std::size_t n_rows = points.size();
  const std::size_t n_cols = static_cast<std::size_t>(std::floor(cfg.t_max / cfg.dt_out + 1e-9)) + 1;

  TrajectoryDataset ds;
  ds.points = points;
  ds.dt = cfg.dt_out;
  ds.state_scale = state_scale;
  ds.norms.assign(n_rows, {});
  ds.statuses.assign(n_rows, ConvergenceStatus::undetermined());

  parallel_for(n_rows, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        Trajectory traj = integrate(field, points[i], cfg);
        std::vector<double> row(traj.states.size());
        for (std::size_t j = 0; j < traj.states.size(); ++j)
          row[j] = scaled_norm(traj.states[j], state_scale);
        if (traj.status.is_escaped()) {
          // truncated at the escape sample; W is +inf regardless of the row
          ds.norms[i] = std::move(row);
        } else {
          row.resize(n_cols, 0.0);  // converged tails contribute below eps^(2 beta) * t_max
          ds.norms[i] = std::move(row);
        }
        ds.statuses[i] = traj.status;
      } catch (const Error&) {
        ds.norms[i].assign(n_cols, 0.0);
        ds.statuses[i] = ConvergenceStatus::undetermined();
      }
    }
  });
  return ds;
}

double w_value(const std::vector<double>& row, int beta, double dt, const ConvergenceStatus& status) {
  if (row.empty()) throw Error("w_value: empty row");
  if (status.is_escaped()) return std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (double d : row) {
    const double d2 = d * d;
    double p = d2;
    for (int b = 1; b < beta; ++b) p *= d2;
    acc += p;
  }
  return acc * dt;
}

double converse_value(double w, double lambda) {
  if (std::isinf(w)) return 1.0;
  if (!(w >= 0)) throw Error("converse_value: W must be >= 0");
  return -std::expm1(-lambda * w);
}

void ValueGrid::validate() const {
  box.validate();
  params.validate();
  if (values.size() != tensor_grid_size(dims, degree))
    throw DimensionMismatch("ValueGrid: value tensor size does not match (d+1)^n");
  for (double v : values)
    if (!(v >= 0.0 && v <= 1.0)) throw Error("ValueGrid: values must lie in [0,1]");
}

ValueGrid build_value_grid(const VectorField& field, const Box& box, int d,
                           const ConverseParams& params, const IntegratorConfig& cfg,
                           const ValueGridOptions& opts) {
  params.validate();
  if (box.dim() != field.dim) throw DimensionMismatch("build_value_grid: box/field dimension mismatch");

  const std::vector<Vec> nodes = bernstein_nodes(box, d, opts.grid_cap);
  TrajectoryDataset ds = generate_dataset(field, nodes, cfg, opts.state_scale);

  ValueGrid grid;
  grid.dims = box.dim();
  grid.degree = d;
  grid.box = box;
  grid.params = params;
  grid.state_scale = opts.state_scale;
  grid.values.resize(nodes.size());

  std::size_t undetermined = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (ds.statuses[i].outcome == Outcome::Undetermined) {
      // conservative: treated as off the attracted set
      grid.values[i] = 1.0;
      ++undetermined;
    } else {
      grid.values[i] = converse_value(w_value(ds.norms[i], params.beta, ds.dt, ds.statuses[i]),
                                      params.lambda);
    }
  }
  grid.undetermined_count = undetermined;
  if (static_cast<double>(undetermined) >
      opts.max_undetermined_frac * static_cast<double>(nodes.size()))
    throw Error("build_value_grid: " + std::to_string(undetermined) + " of " +
                std::to_string(nodes.size()) + " nodes undetermined (limit " +
                std::to_string(opts.max_undetermined_frac * 100) + "%%); raise t_max or r_esc");

  // The node closest to the origin must see a finite W, otherwise the fit
  // carries no basin information at all.
  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double r = nodes[i].norm();
    if (r < best) {
      best = r;
      nearest = i;
    }
  }
  if (!(grid.values[nearest] < 1.0))
    throw Error("build_value_grid: converse value at the node nearest the origin is 1; "
                "the equilibrium is not attracting on this grid or t_max is too small");

  grid.config_hash = hash_value_grid_inputs(field.name, box, d, params, cfg, opts.state_scale);
  return grid;
}

}  // namespace roa
