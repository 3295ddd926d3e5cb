#pragma once

#include "roa/types.hpp"

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace roa {

struct ConverseParams;
struct IntegratorConfig;

// FNV-1a, used for cache keys and report provenance. Not cryptographic.
struct Fnv1a {
  std::uint64_t state = 0xcbf29ce484222325ull;

  void bytes(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      state ^= p[i];
      state *= 0x100000001b3ull;
    }
  }
  void add(double v) { bytes(&v, sizeof v); }
  void add(std::uint64_t v) { bytes(&v, sizeof v); }
  void add(std::int64_t v) { bytes(&v, sizeof v); }
  void add(int v) { add(static_cast<std::int64_t>(v)); }
  void add(const std::string& s) {
    add(static_cast<std::uint64_t>(s.size()));
    bytes(s.data(), s.size());
  }
  void add(const Vec& v) {
    add(static_cast<std::uint64_t>(v.size()));
    for (int i = 0; i < v.size(); ++i) add(v[i]);
  }
  void add(const std::vector<double>& v) {
    add(static_cast<std::uint64_t>(v.size()));
    bytes(v.data(), v.size() * sizeof(double));
  }
};

std::uint64_t hash_value_grid_inputs(const std::string& field_name, const Box& box, int d,
                                     const ConverseParams& params, const IntegratorConfig& cfg,
                                     const Vec& state_scale);

std::string hash_hex(std::uint64_t h);

}  // namespace roa
