#include "roa/hash.hpp"

#include "roa/converse.hpp"
#include "roa/integrate.hpp"

#include <cstdio>

namespace roa {

std::uint64_t hash_value_grid_inputs(const std::string& field_name, const Box& box, int d,
                                     const ConverseParams& params, const IntegratorConfig& cfg,
                                     const Vec& state_scale) {
  Fnv1a h;
  h.add(std::string("value_grid_v1"));
  h.add(field_name);
  h.add(box.lo);
  h.add(box.hi);
  h.add(d);
  h.add(params.lambda);
  h.add(params.beta);
  h.add(cfg.rel_tol);
  h.add(cfg.abs_tol);
  h.add(cfg.dt_out);
  h.add(cfg.t_max);
  h.add(cfg.eps_conv);
  h.add(cfg.r_esc);
  h.add(state_scale);
  return h.state;
}

std::string hash_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace roa
